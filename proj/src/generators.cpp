#include "focml/generators.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace focml {

std::string Lift::name() const {
  switch (kind) {
    case Kind::ParamCarrier: return "_p_" + param + "_T";
    case Kind::ParamMethod: return "_p_" + param + "_" + method;
    case Kind::Entity: return "_p_" + param + "_" + param;
    case Kind::SelfCarrier: return "abst_T";
    case Kind::SelfMethod: return "abst_" + method;
  }
  return {};
}

const MethodPlan* SpeciesPlan::find(const std::string& method) const {
  for (const auto& m : methods)
    if (m.method.name == method) return &m;
  return nullptr;
}

namespace {

// Parameter material a plan needs, in terms of the host species.
struct Needs {
  std::set<std::string> carriers;
  std::map<std::string, std::set<std::string>> methods;
  std::set<std::string> entities;
};

void scan_needs(const Expr& e, const NormalFormSpecies& nf, Needs& n) {
  if (e.kind == ExprKind::Ident && e.ref == IdentRef::Entity) {
    n.entities.insert(e.name);
    if (const SpeciesParam* p = nf.param(e.name)) n.carriers.insert(p->carrier);
  }
  if (e.kind == ExprKind::Qualified && e.coll_ref == CollRef::Param) {
    n.methods[e.qualifier].insert(e.name);
    n.carriers.insert(e.qualifier);
  }
  for (const auto& k : e.kids) scan_needs(k, nf, n);
}

struct MapCtx {
  const Instantiation* inst = nullptr;
  const NormalFormSpecies* host = nullptr;  // null when mapping to collections
  Needs* needs = nullptr;
  std::string self_carrier;
  std::function<std::string(const std::string&)> self_method;
};

// An unbound lift of some generator, seen as an argument in the caller.
Term map_lift(const Lift& l, const MapCtx& c) {
  Term t;
  t.logical = l.logical;
  auto target = [&](const std::string& p) {
    if (auto it = c.inst->collections.find(p); it != c.inst->collections.end()) return it->second;
    return CollTarget{p, true};
  };
  switch (l.kind) {
    case Lift::Kind::ParamCarrier: {
      CollTarget to = target(l.param);
      t.carrier = true;
      if (to.is_param) {
        t.name = "_p_" + to.name + "_T";
        if (c.needs) c.needs->carriers.insert(to.name);
      } else {
        t.module = to.name;
        t.name = "me_as_carrier";
      }
      return t;
    }
    case Lift::Kind::ParamMethod: {
      CollTarget to = target(l.param);
      if (to.is_param) {
        t.name = "_p_" + to.name + "_" + l.method;
        if (c.needs) {
          c.needs->methods[to.name].insert(l.method);
          c.needs->carriers.insert(to.name);
        }
      } else {
        t.module = to.name;
        t.name = l.method;
      }
      return t;
    }
    case Lift::Kind::Entity: {
      auto it = c.inst->entities.find(l.param);
      if (it == c.inst->entities.end()) {
        t.name = "_p_" + l.param + "_" + l.param;
        if (c.needs) c.needs->entities.insert(l.param);
        return t;
      }
      const Expr& e = it->second;
      if (e.kind == ExprKind::Ident && e.ref == IdentRef::Entity) {
        t.name = "_p_" + e.name + "_" + e.name;
      } else {
        t.expr = e;
      }
      if (c.needs && c.host) scan_needs(e, *c.host, *c.needs);
      return t;
    }
    case Lift::Kind::SelfCarrier:
      t.carrier = true;
      t.name = c.self_carrier;
      return t;
    case Lift::Kind::SelfMethod:
      t.name = c.self_method(l.method);
      return t;
  }
  return t;
}

const MethodPlan* generator_of(const NfMethod& m, const std::string& host, const SpeciesPlan& current,
                               const PlanRegistry& earlier) {
  if (m.origin == host) return current.find(m.name);
  auto it = earlier.find(m.origin);
  return it == earlier.end() ? nullptr : it->second.find(m.name);
}

std::vector<std::string> view_order(const InterfaceView& v) {
  std::vector<std::string> order = v.order;
  if (order.empty())
    for (const auto& m : v.methods) order.push_back(m.name);
  return order;
}

// Parameter lifts in canonical order. `entities_before_methods` selects the
// collection-generator layout; `all_carriers`/`all_entities` the
// record/collection-generator rule.
std::vector<Lift> param_lifts(const NormalFormSpecies& nf, const Needs& n, bool entities_before_methods,
                              bool all_params) {
  std::vector<Lift> carriers, methods, entities;
  for (const auto& p : nf.params) {
    if (p.kind == SpeciesParam::Kind::Entity) {
      if (!all_params && !n.entities.count(p.name)) continue;
      Lift l;
      l.kind = Lift::Kind::Entity;
      l.param = p.name;
      l.type = t_carrier(p.carrier);
      entities.push_back(std::move(l));
      continue;
    }
    const InterfaceView& v = *nf.interface_of(p.name);
    auto mit = n.methods.find(p.name);
    if (all_params || n.carriers.count(p.name) || (mit != n.methods.end() && !mit->second.empty())) {
      Lift l;
      l.kind = Lift::Kind::ParamCarrier;
      l.param = p.name;
      carriers.push_back(std::move(l));
    }
    if (mit == n.methods.end()) continue;
    for (const auto& name : view_order(v)) {
      if (!mit->second.count(name)) continue;
      const NfMethod* vm = v.find(name);
      if (!vm) continue;
      Lift l;
      l.kind = Lift::Kind::ParamMethod;
      l.param = p.name;
      l.method = name;
      l.logical = vm->is_logical();
      if (l.logical) l.statement = vm->statement;
      else l.type = vm->type;
      methods.push_back(std::move(l));
    }
  }
  std::vector<Lift> out = std::move(carriers);
  auto& first = entities_before_methods ? entities : methods;
  auto& second = entities_before_methods ? methods : entities;
  out.insert(out.end(), first.begin(), first.end());
  out.insert(out.end(), second.begin(), second.end());
  return out;
}

Needs needs_of(const MethodDeps& d, const NormalFormSpecies& nf) {
  Needs n;
  for (const auto& pd : d.params) {
    if (pd.entity) {
      if (!pd.members.empty()) {
        n.entities.insert(pd.param);
        n.carriers.insert(nf.param(pd.param)->carrier);
      }
      continue;
    }
    if (pd.carrier) n.carriers.insert(pd.param);
    for (const auto& m : pd.members) n.methods[pd.param].insert(m.name);
  }
  return n;
}

MethodPlan plan_method(const NfMethod& m, const NormalFormSpecies& nf, const MethodDeps& d,
                       const SpeciesPlan& current, const PlanRegistry& earlier) {
  MethodPlan plan;
  plan.species = nf.name;
  plan.method = m;
  Needs needs = needs_of(d, nf);
  std::vector<Lift> self;
  for (const auto& e : d.min_env) {
    Lift l;
    if (e.name == kRep) {
      l.kind = Lift::Kind::SelfCarrier;
      l.bound = e.keep == Keep::TypeAndBody;
      if (l.bound) {
        l.type = nf.rep()->type;
        std::set<std::string> cs;
        collect_carriers(l.type, cs);
        for (const auto& c : cs)
          if (nf.param(c)) needs.carriers.insert(c);
      }
      self.push_back(std::move(l));
      continue;
    }
    const NfMethod* y = nf.find(e.name);
    l.kind = Lift::Kind::SelfMethod;
    l.method = e.name;
    l.logical = y->is_logical();
    if (l.logical) l.statement = y->statement;
    else l.type = y->type;
    if (e.keep == Keep::TypeAndBody) {
      l.bound = true;
      l.gen_species = y->origin;
      if (const MethodPlan* g = generator_of(*y, nf.name, current, earlier)) {
        MapCtx c{&y->inst, &nf, &needs, "abst_T",
                 [](const std::string& n) { return "abst_" + n; }};
        for (const auto& gl : g->lifts)
          if (!gl.bound) l.gen_args.push_back(map_lift(gl, c));
      }
    }
    self.push_back(std::move(l));
  }
  plan.lifts = param_lifts(nf, needs, false, false);
  plan.lifts.insert(plan.lifts.end(), self.begin(), self.end());
  return plan;
}

bool hosts_generator(const NfMethod& m, const std::string& species) {
  if (m.origin != species) return false;
  return m.kind == MethodKind::Let || (m.kind == MethodKind::Theorem && m.valid_proof);
}

}  // namespace

SpeciesPlan plan_species(const NormalFormSpecies& nf, const SpeciesDeps& deps,
                         const Environment& env, const PlanRegistry& earlier) {
  (void)env;
  SpeciesPlan sp;
  sp.species = nf.name;
  sp.order = deps.order;
  for (const auto& name : deps.order) {
    if (name == kRep) continue;
    const NfMethod& m = *nf.find(name);
    if (!hosts_generator(m, nf.name)) continue;
    sp.methods.push_back(plan_method(m, nf, *deps.find(name), sp, earlier));
  }
  sp.complete = missing_definitions(nf).empty();
  if (!sp.complete) return sp;

  // Record type: [Close]([Type]) over all methods.
  DepGraph g = build_graph(nf);
  Needs rec;
  for (const auto& name : deps.order) {
    if (name == kRep) continue;
    for (const auto& p : nf.params) {
      if (p.kind != SpeciesParam::Kind::Collection) continue;
      RawParamDeps raw = param_deps(name, nf, g, p.name, env, kType);
      for (const auto& n : close_param_deps(raw.members, *nf.interface_of(p.name)))
        rec.methods[p.name].insert(n);
    }
    const NfMethod& m = *nf.find(name);
    RecordField f;
    f.method = name;
    f.logical = m.is_logical();
    if (f.logical) f.statement = m.statement;
    else f.type = m.type;
    sp.fields.push_back(std::move(f));
  }
  sp.record_params = param_lifts(nf, rec, true, true);

  // Collection generator.
  Needs create = rec;
  LocalDef rep;
  rep.method = kRep;
  rep.rep = nf.rep()->type;
  sp.locals.push_back(rep);
  for (const auto& name : deps.order) {
    if (name == kRep) continue;
    const NfMethod& m = *nf.find(name);
    LocalDef l;
    l.method = name;
    l.gen_species = m.origin;
    l.logical = m.is_logical();
    if (const MethodPlan* gp = generator_of(m, nf.name, sp, earlier)) {
      MapCtx c{&m.inst, &nf, &create, "local_rep",
               [](const std::string& n) { return "local_" + n; }};
      for (const auto& gl : gp->lifts)
        if (!gl.bound) l.args.push_back(map_lift(gl, c));
    }
    sp.locals.push_back(std::move(l));
  }
  sp.create_params = param_lifts(nf, create, true, true);
  return sp;
}

CollectionPlan plan_collection(const CollectionModel& c, const Environment& env,
                               const PlanRegistry& plans) {
  CollectionPlan cp;
  cp.name = c.name;
  cp.species = c.species;
  const SpeciesPlan& sp = plans.at(c.species);
  const NormalFormSpecies& nf = *env.species.at(c.species);
  MapCtx ctx{&c.inst, nullptr, nullptr, "", [](const std::string& n) { return n; }};
  for (const auto& l : sp.create_params) cp.args.push_back(map_lift(l, ctx));
  Instantiation carriers;
  carriers.collections = c.inst.collections;
  cp.carrier = subst_type(nf.rep()->type, carriers);
  for (const auto& f : sp.fields) {
    cp.methods.push_back(f.method);
    cp.logical.push_back(f.logical);
  }
  cp.record_arity = sp.record_params.size();
  return cp;
}

namespace {

void pattern_names(const Pattern& p, std::set<std::string>& out) {
  if (p.kind == Pattern::Kind::Var) out.insert(p.name);
  for (const auto& a : p.args) pattern_names(a, out);
}

// Free names of the rendered expression, as lift names.
void free_names(const Expr& e, std::set<std::string> bound, const std::string& self_prefix,
                std::vector<std::string>& out) {
  switch (e.kind) {
    case ExprKind::Ident:
      if (bound.count(e.name)) return;
      if (e.ref == IdentRef::Method) out.push_back(self_prefix + e.name);
      if (e.ref == IdentRef::Entity) out.push_back("_p_" + e.name + "_" + e.name);
      return;
    case ExprKind::Qualified:
      if (e.coll_ref == CollRef::Param) out.push_back("_p_" + e.qualifier + "_" + e.name);
      return;
    case ExprKind::Quant:
      bound.insert(e.binders.begin(), e.binders.end());
      free_names(e.kids[0], bound, self_prefix, out);
      return;
    case ExprKind::Match:
      free_names(e.kids[0], bound, self_prefix, out);
      for (std::size_t i = 1; i < e.kids.size(); ++i) {
        std::set<std::string> inner = bound;
        pattern_names(e.patterns[i - 1], inner);
        free_names(e.kids[i], inner, self_prefix, out);
      }
      return;
    default:
      for (const auto& k : e.kids) free_names(k, bound, self_prefix, out);
  }
}

void type_names(const TypePtr& t, const std::string& self_name, const std::string& carrier_prefix,
                std::vector<std::string>& out) {
  if (!t) return;
  if (mentions_self(t)) out.push_back(self_name);
  std::set<std::string> cs;
  collect_carriers(t, cs);
  for (const auto& c : cs) out.push_back(carrier_prefix.empty() ? c + "_T" : "_p_" + c + "_T");
}

void term_names(const Term& t, std::vector<std::string>& out) {
  if (!t.module.empty()) return;
  if (t.expr) {
    free_names(*t.expr, {}, "", out);
    return;
  }
  out.push_back(t.name);
}

}  // namespace

std::vector<std::string> scope_errors(const SpeciesPlan& p) {
  std::vector<std::string> errs;
  auto need = [&](const std::set<std::string>& bound, const std::vector<std::string>& names,
                  const std::string& where) {
    for (const auto& n : names)
      if (!bound.count(n)) errs.push_back(where + ": " + n);
  };
  for (const auto& mp : p.methods) {
    std::set<std::string> bound;
    const std::string where = p.species + "." + mp.method.name;
    for (const auto& l : mp.lifts) {
      std::vector<std::string> used;
      for (const auto& a : l.gen_args) term_names(a, used);
      if (l.kind == Lift::Kind::SelfCarrier && l.bound) type_names(l.type, "abst_T", "_p_", used);
      if (l.kind == Lift::Kind::ParamMethod && l.type) type_names(l.type, "", "_p_", used);
      if (l.kind == Lift::Kind::SelfMethod && !l.logical) type_names(l.type, "abst_T", "_p_", used);
      if (l.kind == Lift::Kind::Entity) type_names(l.type, "", "_p_", used);
      if (l.statement) {
        std::vector<std::string> raw;
        const std::string prefix = l.kind == Lift::Kind::ParamMethod ? "_p_" + l.param + "_" : "abst_";
        free_names(*l.statement, {}, prefix, raw);
        used.insert(used.end(), raw.begin(), raw.end());
      }
      need(bound, used, where + " (" + l.name() + ")");
      bound.insert(l.name());
    }
    std::vector<std::string> used;
    const NfMethod& m = mp.method;
    if (m.kind == MethodKind::Let) {
      std::set<std::string> locals;
      for (const auto& prm : m.params) locals.insert(prm.name);
      if (m.rec) locals.insert(m.name);
      free_names(*m.body, locals, "abst_", used);
      type_names(m.type, "abst_T", "_p_", used);
    } else if (m.statement) {
      free_names(*m.statement, {}, "abst_", used);
    }
    need(bound, used, where);
  }
  if (!p.complete) return errs;

  std::set<std::string> rec;
  for (const auto& l : p.record_params) {
    std::vector<std::string> used;
    if (l.type) type_names(l.type, "", "", used);
    need(rec, used, p.species + ".me_as_species (" + l.name() + ")");
    rec.insert(l.kind == Lift::Kind::ParamCarrier ? l.param + "_T" : l.name());
  }
  rec.insert("rf_T");
  for (const auto& f : p.fields) {
    std::vector<std::string> used;
    if (f.logical) {
      std::vector<std::string> raw;
      free_names(*f.statement, {}, "rf_", raw);
      for (auto& r : raw)
        if (r.rfind("_p_", 0) == 0 || r.rfind("rf_", 0) == 0) used.push_back(r);
    } else {
      type_names(f.type, "rf_T", "", used);
    }
    need(rec, used, p.species + ".rf_" + f.method);
    rec.insert("rf_" + f.method);
  }

  std::set<std::string> cc;
  for (const auto& l : p.create_params) cc.insert(l.name());
  for (const auto& l : p.record_params)
    if (!cc.count(l.name())) errs.push_back(p.species + ".collection_create: record needs " + l.name());
  for (const auto& l : p.locals) {
    std::vector<std::string> used;
    for (const auto& a : l.args) term_names(a, used);
    if (l.rep) type_names(l.rep, "", "_p_", used);
    need(cc, used, p.species + ".local_" + l.method);
    cc.insert("local_" + l.method);
  }
  return errs;
}

}  // namespace focml
