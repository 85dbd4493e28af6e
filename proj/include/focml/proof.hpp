#pragma once

#include <string>
#include <vector>

#include "focml/ast.hpp"

namespace focml {

// Facts cited by the leaves of a proof tree, in traversal order (duplicates
// kept: this is a multiset).
struct LeafFacts {
  std::vector<FactRef> definitions;
  std::vector<FactRef> properties;
  std::vector<std::string> types;
  bool admitted = false;
};

LeafFacts collect_leaf_facts(const Proof& proof);

// Every statement occurring in step goals and hypotheses, outermost first.
std::vector<const Expr*> proof_statements(const Proof& proof);

}  // namespace focml
