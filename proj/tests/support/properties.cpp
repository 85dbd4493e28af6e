#include "properties.hpp"

#include <algorithm>

#include "focml/program.hpp"
#include "focml/typing.hpp"

namespace focml::testing {

bool SuiteResult::ok() const {
  for (const auto& [law, n] : failures)
    if (n) return false;
  return true;
}

namespace {

std::string join(const std::set<std::string>& s) {
  std::string out = "{";
  for (const auto& x : s) out += (out.size() > 1 ? "," : "") + x;
  return out + "}";
}

std::vector<std::string> lift_names(const std::vector<Lift>& ls, bool keep_bound) {
  std::vector<std::string> out;
  for (const auto& l : ls)
    if (!l.erased() && (keep_bound || !l.bound)) out.push_back(l.name());
  return out;
}

std::size_t kept(const std::vector<Term>& ts) {
  return static_cast<std::size_t>(
      std::count_if(ts.begin(), ts.end(), [](const Term& t) { return !t.carrier && !t.logical; }));
}

}  // namespace

std::vector<std::string> erasure_errors(const SpeciesPlan& plan, const CModule& comp) {
  std::vector<std::string> errs;
  std::vector<std::string> expected_defs;
  for (const auto& mp : plan.methods) {
    if (mp.method.kind != MethodKind::Let) {
      if (comp.find(mp.method.name)) errs.push_back(mp.method.name + ": logical method kept");
      continue;
    }
    expected_defs.push_back(mp.method.name);
    const CDef* d = comp.find(mp.method.name);
    if (!d) {
      errs.push_back(mp.method.name + ": generator dropped");
      continue;
    }
    std::vector<std::string> params = lift_names(mp.lifts, false);
    for (const auto& p : mp.method.params) params.push_back(p.name);
    if (d->params != params) errs.push_back(mp.method.name + ": parameters differ");
    // Bound computational lifts become lets, in order.
    const CExpr* e = &d->body;
    for (const auto& l : mp.lifts) {
      if (l.erased() || !l.bound) continue;
      if (e->kind != CExpr::Kind::Let || e->name != l.name()) {
        errs.push_back(mp.method.name + ": binding " + l.name() + " missing");
        break;
      }
      const CExpr& v = e->kids[0];
      std::size_t n = v.kind == CExpr::Kind::App ? v.kids.size() - 1 : 0;
      const CExpr& head = v.kind == CExpr::Kind::App ? v.kids[0] : v;
      if (head.kind != CExpr::Kind::Global || head.module != l.gen_species || head.name != l.method ||
          n != kept(l.gen_args))
        errs.push_back(mp.method.name + ": binding " + l.name() + " differs");
      e = &e->kids[1];
    }
  }
  if (plan.complete) {
    expected_defs.push_back("collection_create");
    if (const CDef* c = comp.find("collection_create")) {
      if (c->params != lift_names(plan.create_params, true)) errs.push_back("collection_create: parameters differ");
      const CExpr* e = &c->body;
      while (e->kind == CExpr::Kind::Let) e = &e->kids[1];
      std::vector<std::string> fields;
      for (const auto& f : plan.fields)
        if (!f.logical) fields.push_back("rf_" + f.method);
      if (e->kind != CExpr::Kind::Record || e->fields != fields) errs.push_back("collection_create: record differs");
    }
  }
  std::vector<std::string> got;
  for (const auto& d : comp.defs) got.push_back(d.name);
  if (got != expected_defs) errs.push_back("definitions differ");
  return errs;
}

SuiteResult run_property_suite(int cases, std::uint64_t first_seed) {
  SuiteResult r;
  for (const auto& law : kLaws) {
    r.checked[law] = 0;
    r.failures[law] = 0;
  }
  auto fail = [&](const std::string& law, std::uint64_t seed, const std::string& what) {
    ++r.failures[law];
    if (r.messages.size() < 20) r.messages.push_back("seed " + std::to_string(seed) + " [" + law + "] " + what);
  };
  for (int i = 0; i < cases; ++i) {
    const std::uint64_t seed = first_seed + static_cast<std::uint64_t>(i);
    RandomCase rc = random_case(seed);
    ++r.cases;
    Program p = compile_text(rc.source, "random.fcl");
    ++r.checked["compiles"];
    if (!p.ok()) {
      fail("compiles", seed, p.diagnostics.empty() ? "?" : format(p.diagnostics.front()));
      continue;
    }
    const Entry* s = p.find("S");
    const SpeciesDeps& deps = *s->deps;
    const NormalFormSpecies& nf = *s->species;

    std::map<std::string, std::size_t> pos;
    for (std::size_t k = 0; k < deps.order.size(); ++k) pos[deps.order[k]] = k;

    for (const auto& m : deps.methods) {
      if (!rc.truth.count(m.name)) {
        fail("universe_fixpoint", seed, "unexpected method " + m.name);
        continue;
      }
      std::set<std::string> u(m.universe.begin(), m.universe.end());
      std::set<std::string> want = oracle_universe(m.name, rc.truth);
      ++r.checked["universe_fixpoint"];
      if (u != want) fail("universe_fixpoint", seed, m.name + ": " + join(u) + " vs oracle " + join(want));

      ++r.checked["min_env_partition"];
      std::set<std::string> trans = oracle_def_closure(m.name, rc.truth);
      std::set<std::string> names;
      bool ok = true;
      for (const auto& e : m.min_env) {
        ok = ok && names.insert(e.name).second;
        ok = ok && ((e.keep == Keep::TypeAndBody) == (trans.count(e.name) > 0));
      }
      if (!ok || names != u) fail("min_env_partition", seed, m.name);
    }

    // Every decl/def edge of the truth tables goes forward in the order.
    for (const auto& [x, t] : rc.truth) {
      std::set<std::string> before = t.decl;
      before.insert(t.def.begin(), t.def.end());
      for (const auto& y : before) {
        ++r.checked["topological_order"];
        if (!pos.count(x) || !pos.count(y) || pos[y] >= pos[x])
          fail("topological_order", seed, y + " should precede " + x);
      }
    }

    DepGraph g = build_graph(nf);
    for (const auto& m : deps.methods)
      for (const auto& iv : nf.interfaces) {
        RawParamDeps raw = param_deps(m.name, nf, g, iv.param, p.env);
        std::set<std::string> once = close_param_deps(raw.members, iv);
        std::set<std::string> twice = close_param_deps(once, iv);
        ++r.checked["close_idempotent"];
        if (once != twice) fail("close_idempotent", seed, m.name + " on " + iv.param);
      }

    std::vector<CModule> comps = comp_modules(p);
    for (const auto& e : p.entries) {
      if (!e.plan) continue;
      ++r.checked["plan_well_scoped"];
      std::vector<std::string> scope = scope_errors(*e.plan);
      if (!scope.empty()) fail("plan_well_scoped", seed, e.name + ": " + scope.front());
      for (const auto& c : comps)
        if (c.name == e.name && c.kind == CModule::Kind::Species) {
          ++r.checked["erasure"];
          std::vector<std::string> errs = erasure_errors(*e.plan, c);
          if (!errs.empty()) fail("erasure", seed, e.name + ": " + errs.front());
        }
    }

    ++r.checked["normalize_idempotent"];
    try {
      NormalFormSpecies again = normalize(as_declaration(nf), p.env);
      infer_types(again, p.env);
      invalidate_proofs(again);
      if (!same_modulo_origins(nf, again)) fail("normalize_idempotent", seed, "flattened species differ");
    } catch (const CompileError& e) {
      fail("normalize_idempotent", seed, format(e.diagnostic()));
    }
  }
  return r;
}

}  // namespace focml::testing
