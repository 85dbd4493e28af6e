#include "focml/dependency.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <queue>

#include "focml/typing.hpp"

namespace focml {

const char* to_string(Keep k) { return k == Keep::TypeOnly ? "TypeOnly" : "TypeAndBody"; }

const ParamDeps* MethodDeps::param(const std::string& p) const {
  for (const auto& d : params)
    if (d.param == p) return &d;
  return nullptr;
}

const MethodDeps* SpeciesDeps::find(const std::string& name) const {
  for (const auto& m : methods)
    if (m.name == name) return &m;
  return nullptr;
}

namespace {

// Names occurring in a piece of syntax, by category.
struct Refs {
  std::set<std::string> self;                         // Self methods
  std::map<std::string, std::set<std::string>> qual;  // parameter -> methods
  std::set<std::string> entities;
  std::set<std::string> carriers;  // parameter carriers used as types
  bool self_type = false;          // Self written as a type

  void merge(const Refs& o) {
    self.insert(o.self.begin(), o.self.end());
    for (const auto& [p, ms] : o.qual) qual[p].insert(ms.begin(), ms.end());
    entities.insert(o.entities.begin(), o.entities.end());
    carriers.insert(o.carriers.begin(), o.carriers.end());
    self_type = self_type || o.self_type;
  }
};

void scan(const TypeExpr& t, Refs& r) {
  if (t.kind == TypeExpr::Kind::Self) r.self_type = true;
  if (t.kind == TypeExpr::Kind::Named && t.ref == TypeExpr::Ref::Param) r.carriers.insert(t.name);
  for (const auto& a : t.args) scan(a, r);
}

void scan(const Expr& e, Refs& r) {
  if (e.kind == ExprKind::Ident) {
    if (e.ref == IdentRef::Method) r.self.insert(e.name);
    if (e.ref == IdentRef::Entity) r.entities.insert(e.name);
  }
  if (e.kind == ExprKind::Qualified && e.coll_ref == CollRef::Param) r.qual[e.qualifier].insert(e.name);
  if (e.binder_type) scan(*e.binder_type, r);
  for (const auto& k : e.kids) scan(k, r);
}

void scan(const TypePtr& t, Refs& r) {
  if (!t) return;
  if (mentions_self(t)) r.self_type = true;
  collect_carriers(t, r.carriers);
}

void scan(const Proof& p, const NormalFormSpecies& nf, Refs& r) {
  for (const auto& d : p.facts.definitions)
    if (d.qualifier.empty()) r.self.insert(d.name);
  for (const auto& f : p.facts.properties) {
    if (f.qualifier.empty()) {
      if (nf.find(f.name)) r.self.insert(f.name);
    } else if (nf.interface_of(f.qualifier)) {
      r.qual[f.qualifier].insert(f.name);
    }
  }
  for (const auto& s : p.steps) {
    for (const auto& a : s.assumes) scan(a.type, r);
    for (const auto& h : s.hypotheses) scan(h.statement, r);
    if (s.goal) scan(*s.goal, r);
    scan(s.proof, nf, r);
  }
}

// What the type (statement) of a method refers to.
Refs type_refs(const NfMethod& m) {
  Refs r;
  if (m.is_logical()) {
    if (m.statement) scan(*m.statement, r);
  } else if (m.kind == MethodKind::Representation) {
    scan(m.type, r);
    r.self_type = false;
  } else {
    scan(m.type, r);
  }
  return r;
}

// What the body (definition or proof) of a method refers to.
Refs body_refs(const NfMethod& m, const NormalFormSpecies& nf) {
  Refs r;
  if (m.kind == MethodKind::Let && m.body) scan(*m.body, r);
  if (m.kind == MethodKind::Theorem && m.valid_proof && m.proof) scan(*m.proof, nf, r);
  if (m.kind == MethodKind::Representation) scan(m.type, r);
  return r;
}

}  // namespace

std::set<std::string> decl_deps(const NfMethod& m, const NormalFormSpecies& nf) {
  std::set<std::string> out;
  if (m.kind == MethodKind::Let && m.body) {
    Refs r;
    scan(*m.body, r);
    out = r.self;
    if (m.rec) out.erase(m.name);
  } else if (m.is_logical()) {
    Refs r = type_refs(m);
    if (m.kind == MethodKind::Theorem && m.valid_proof && m.proof) scan(*m.proof, nf, r);
    out = r.self;
  }
  out.erase(kRep);
  if (m.carrier_decl) out.insert(kRep);
  return out;
}

std::set<std::string> def_deps(const NfMethod& m, const NormalFormSpecies& nf) {
  std::set<std::string> out;
  // A reverted proof no longer counts: the theorem is a bare statement again.
  if (m.kind == MethodKind::Theorem && !m.valid_proof) return out;
  if (m.kind == MethodKind::Theorem)
    for (const auto& u : m.unfolds)
      if (nf.find(u)) out.insert(u);
  if (m.carrier_def) out.insert(kRep);
  return out;
}

DepGraph build_graph(const NormalFormSpecies& nf) {
  DepGraph g;
  g.decl[kRep];
  g.def[kRep];
  g.types[kRep];
  g.origin[kRep] = nf.rep() ? nf.rep()->origin : nf.name;
  for (const auto& m : nf.methods) {
    if (m.name == kRep) continue;
    g.decl[m.name] = decl_deps(m, nf);
    g.def[m.name] = def_deps(m, nf);
    Refs t = type_refs(m);
    std::set<std::string> td = m.is_logical() ? t.self : std::set<std::string>{};
    if (t.self_type) td.insert(kRep);
    g.types[m.name] = td;
    g.origin[m.name] = m.origin;
    if (m.kind == MethodKind::Let && m.rec) g.rec_group.insert(m.name);
  }
  return g;
}

std::set<std::string> def_closure(const std::string& x, const DepGraph& g) {
  std::set<std::string> seen;
  std::deque<std::string> work;
  if (auto it = g.def.find(x); it != g.def.end())
    for (const auto& d : it->second) work.push_back(d);
  while (!work.empty()) {
    std::string z = work.front();
    work.pop_front();
    if (!seen.insert(z).second) continue;
    if (auto it = g.def.find(z); it != g.def.end())
      for (const auto& d : it->second) work.push_back(d);
  }
  seen.erase(x);
  return seen;
}

std::set<std::string> visible_universe(const std::string& x, const DepGraph& g) {
  std::set<std::string> u;
  auto add_decl = [&](const std::string& z) {
    if (auto it = g.decl.find(z); it != g.decl.end()) u.insert(it->second.begin(), it->second.end());
  };
  add_decl(x);
  for (const auto& z : def_closure(x, g)) {
    u.insert(z);
    add_decl(z);
  }
  std::deque<std::string> work(u.begin(), u.end());
  while (!work.empty()) {
    std::string y = work.front();
    work.pop_front();
    auto it = g.types.find(y);
    if (it == g.types.end()) continue;
    for (const auto& t : it->second)
      if (u.insert(t).second) work.push_back(t);
  }
  u.erase(x);
  return u;
}

std::vector<EnvEntry> minimal_typing_env(const std::string& x, const DepGraph& g,
                                         const std::vector<std::string>& order) {
  std::set<std::string> u = visible_universe(x, g);
  std::set<std::string> bodies = def_closure(x, g);
  std::vector<EnvEntry> out;
  for (const auto& n : order)
    if (u.count(n)) out.push_back({n, bodies.count(n) ? Keep::TypeAndBody : Keep::TypeOnly});
  return out;
}

std::vector<std::string> order_methods(const DepGraph& g) {
  // Tarjan's strongly connected components over "x decl-depends on y".
  std::map<std::string, int> index, low;
  std::map<std::string, bool> on_stack;
  std::vector<std::string> stack;
  std::vector<std::vector<std::string>> sccs;
  int counter = 0;
  std::function<void(const std::string&)> connect = [&](const std::string& v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (const auto& w : g.decl.at(v)) {
      if (!g.decl.count(w)) continue;
      if (!index.count(w)) {
        connect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::string> c;
      std::string w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        c.push_back(w);
      } while (w != v);
      sccs.push_back(std::move(c));
    }
  };
  for (const auto& [v, _] : g.decl)
    if (!index.count(v)) connect(v);

  std::map<std::string, int> component;
  for (std::size_t i = 0; i < sccs.size(); ++i) {
    auto& c = sccs[i];
    std::sort(c.begin(), c.end());
    for (const auto& n : c) component[n] = static_cast<int>(i);
    bool cyclic = c.size() > 1 || g.decl.at(c[0]).count(c[0]);
    if (!cyclic) continue;
    bool collapsible = std::all_of(c.begin(), c.end(), [&](const std::string& n) {
      return g.rec_group.count(n) && g.origin.at(n) == g.origin.at(c[0]);
    });
    if (collapsible) continue;
    // Shortest cycle through the smallest member.
    const std::string& s = c[0];
    std::set<std::string> members(c.begin(), c.end());
    std::map<std::string, std::string> parent;
    std::deque<std::string> work{s};
    std::vector<std::string> witness;
    std::set<std::string> seen{};
    while (!work.empty() && witness.empty()) {
      std::string v = work.front();
      work.pop_front();
      for (const auto& w : g.decl.at(v)) {
        if (!members.count(w)) continue;
        if (w == s) {
          witness.push_back(s);
          for (std::string p = v; p != s; p = parent[p]) witness.push_back(p);
          witness.push_back(s);
          std::reverse(witness.begin(), witness.end());
          break;
        }
        if (seen.insert(w).second) {
          parent[w] = v;
          work.push_back(w);
        }
      }
    }
    std::string path;
    for (const auto& n : witness) path += (path.empty() ? "" : " -> ") + n;
    fail(ErrorKind::CycleInDependencies, {},
         "methods " + path + " depend on each other (implicit recursion)", witness);
  }

  // Kahn, smallest available name first; edges inside collapsed groups ignored.
  std::map<std::string, int> pending;
  std::map<std::string, std::vector<std::string>> users;
  for (const auto& [x, ds] : g.decl) {
    pending[x];
    for (const auto& y : ds) {
      if (!g.decl.count(y) || component[x] == component[y]) continue;
      ++pending[x];
      users[y].push_back(x);
    }
  }
  std::priority_queue<std::string, std::vector<std::string>, std::greater<>> ready;
  for (const auto& [x, n] : pending)
    if (n == 0) ready.push(x);
  std::vector<std::string> order;
  while (!ready.empty()) {
    std::string x = ready.top();
    ready.pop();
    order.push_back(x);
    for (const auto& u : users[x])
      if (--pending[u] == 0) ready.push(u);
  }
  return order;
}

RawParamDeps param_deps(const std::string& x, const NormalFormSpecies& nf, const DepGraph& g,
                        const std::string& param, const Environment& env, unsigned rules) {
  RawParamDeps out;
  const NfMethod* xm = nf.find(x);
  if (!xm) return out;
  const SpeciesParam* p = nf.param(param);
  if (!p) return out;

  Refs all;
  if (rules & kBody) all.merge(body_refs(*xm, nf));
  if (rules & kType) all.merge(type_refs(*xm));
  if (rules & kDef)
    for (const auto& z : def_closure(x, g))
      if (const NfMethod* zm = nf.find(z)) all.merge(body_refs(*zm, nf));
  if (rules & kUniv)
    for (const auto& z : visible_universe(x, g))
      if (const NfMethod* zm = nf.find(z)) all.merge(type_refs(*zm));

  if (p->kind == SpeciesParam::Kind::Entity) {
    if (all.entities.count(param)) {
      out.carrier = true;
      out.members.insert(param);
    }
    return out;
  }

  if (auto it = all.qual.find(param); it != all.qual.end()) out.members = it->second;
  if (all.carriers.count(param)) out.carrier = true;
  for (const auto& e : all.entities)
    if (const SpeciesParam* ep = nf.param(e); ep && ep->carrier == param) out.carrier = true;

  if (rules & kPrm) {
    // A later parameter whose interface is applied to this one.
    bool later = false;
    for (const auto& q : nf.params) {
      if (q.name == param) {
        later = true;
        continue;
      }
      if (!later || q.kind != SpeciesParam::Kind::Collection) continue;
      auto sit = env.species.find(q.iface.name);
      if (sit == env.species.end()) continue;
      const NormalFormSpecies& iface = *sit->second;
      for (std::size_t i = 0; i < q.iface.args.size() && i < iface.params.size(); ++i) {
        const Expr& a = q.iface.args[i];
        if (a.kind != ExprKind::Ident || a.name != param) continue;
        const std::string& formal = iface.params[i].name;
        RawParamDeps via = param_deps(x, nf, g, q.name, env, rules);
        for (const auto& m : via.members) {
          const NfMethod* im = iface.find(m);
          if (!im) continue;
          Refs t = type_refs(*im);
          if (auto qi = t.qual.find(formal); qi != t.qual.end())
            out.members.insert(qi->second.begin(), qi->second.end());
          if (t.carriers.count(formal)) out.carrier = true;
        }
      }
    }
  }
  if (!out.members.empty()) out.carrier = true;
  return out;
}

std::set<std::string> close_param_deps(const std::set<std::string>& d, const InterfaceView& view) {
  std::set<std::string> out = d;
  for (const auto& z : d) {
    const NfMethod* m = view.find(z);
    if (!m || !m->is_logical() || !m->statement) continue;
    Refs r;
    scan(*m->statement, r);
    for (const auto& y : r.self)
      if (view.find(y)) out.insert(y);
  }
  return out;
}

std::optional<Diagnostic> check_carrier_leak(const NormalFormSpecies& nf, const Environment& env) {
  for (const auto& m : nf.methods) {
    if (!m.is_logical()) continue;
    if (auto v = check_statement_carrier_abstraction(m, nf, env))
      return Diagnostic{Severity::Error, ErrorKind::WrongCarrierLeak, v->loc,
                        "statement of '" + m.name + "' in species '" + nf.name +
                            "' identifies Self with its representation",
                        {v->atom}};
  }
  return std::nullopt;
}

namespace {

std::vector<std::string> in_order(const std::set<std::string>& s, const std::vector<std::string>& order) {
  std::vector<std::string> out;
  for (const auto& n : order)
    if (s.count(n)) out.push_back(n);
  for (const auto& n : s)
    if (std::find(order.begin(), order.end(), n) == order.end()) out.push_back(n);
  return out;
}

}  // namespace

SpeciesDeps analyze(const NormalFormSpecies& nf, const Environment& env) {
  SpeciesDeps sd;
  sd.species = nf.name;
  DepGraph g = build_graph(nf);
  try {
    sd.order = order_methods(g);
  } catch (const CompileError& e) {
    Diagnostic d = e.diagnostic();
    const NfMethod* m = d.witness.empty() ? nullptr : nf.find(d.witness[0]);
    fail(d.kind, m ? m->loc : nf.loc, "in species '" + nf.name + "': " + d.message, d.witness);
  }
  int index = 0;
  for (const auto& name : sd.order) {
    if (name == kRep) continue;
    const NfMethod& m = *nf.find(name);
    MethodDeps d;
    d.name = name;
    d.order_index = index++;
    d.decl = in_order(g.decl.at(name), sd.order);
    d.def = in_order(g.def.at(name), sd.order);
    d.carrier_decl = m.carrier_decl;
    d.carrier_def = m.carrier_def;
    d.universe = in_order(visible_universe(name, g), sd.order);
    d.min_env = minimal_typing_env(name, g, sd.order);
    for (const auto& p : nf.params) {
      ParamDeps pd;
      pd.param = p.name;
      pd.entity = p.kind == SpeciesParam::Kind::Entity;
      RawParamDeps raw = param_deps(name, nf, g, p.name, env);
      if (pd.entity) {
        if (raw.carrier) pd.members.push_back({p.name, p.carrier});
      } else {
        const InterfaceView& view = *nf.interface_of(p.name);
        std::set<std::string> closed = close_param_deps(raw.members, view);
        std::vector<std::string> order = view.order;
        if (order.empty())
          for (const auto& vm : view.methods) order.push_back(vm.name);
        for (const auto& n : in_order(closed, order)) {
          const NfMethod* vm = view.find(n);
          pd.members.push_back({n, vm->is_logical() ? "Prop" : show(vm->type)});
        }
        pd.carrier = raw.carrier || !closed.empty();
      }
      d.params.push_back(std::move(pd));
    }
    sd.methods.push_back(std::move(d));
  }
  return sd;
}

}  // namespace focml
