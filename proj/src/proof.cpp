#include "focml/proof.hpp"

namespace focml {

namespace {

void walk(const Proof& p, LeafFacts& out) {
  switch (p.kind) {
    case Proof::Kind::Admitted:
      out.admitted = true;
      return;
    case Proof::Kind::By:
      out.definitions.insert(out.definitions.end(), p.facts.definitions.begin(),
                             p.facts.definitions.end());
      out.properties.insert(out.properties.end(), p.facts.properties.begin(),
                            p.facts.properties.end());
      out.types.insert(out.types.end(), p.facts.types.begin(), p.facts.types.end());
      return;
    case Proof::Kind::Steps:
      for (const auto& s : p.steps) walk(s.proof, out);
      return;
  }
}

void statements(const Proof& p, std::vector<const Expr*>& out) {
  for (const auto& s : p.steps) {
    for (const auto& h : s.hypotheses) out.push_back(&h.statement);
    if (s.goal) out.push_back(&*s.goal);
    statements(s.proof, out);
  }
}

}  // namespace

LeafFacts collect_leaf_facts(const Proof& proof) {
  LeafFacts f;
  walk(proof, f);
  return f;
}

std::vector<const Expr*> proof_statements(const Proof& proof) {
  std::vector<const Expr*> out;
  statements(proof, out);
  return out;
}

}  // namespace focml
