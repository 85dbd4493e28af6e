#include "focml/hierarchy.hpp"

#include <algorithm>
#include <set>

#include "focml/proof.hpp"
#include "focml/typing.hpp"

namespace focml {

const NfMethod* InterfaceView::find(const std::string& name) const {
  for (const auto& m : methods)
    if (m.name == name) return &m;
  return nullptr;
}

const NfMethod* NormalFormSpecies::find(const std::string& name) const {
  for (const auto& m : methods)
    if (m.name == name) return &m;
  return nullptr;
}

NfMethod* NormalFormSpecies::find(const std::string& name) {
  for (auto& m : methods)
    if (m.name == name) return &m;
  return nullptr;
}

const InterfaceView* NormalFormSpecies::interface_of(const std::string& param) const {
  for (const auto& v : interfaces)
    if (v.param == param) return &v;
  return nullptr;
}

const SpeciesParam* NormalFormSpecies::param(const std::string& name) const {
  for (const auto& p : params)
    if (p.name == name) return &p;
  return nullptr;
}

const NfMethod* CollectionModel::find(const std::string& name) const {
  for (const auto& m : interface)
    if (m.name == name) return &m;
  return nullptr;
}

std::vector<NfMethod> instantiate_methods(const NormalFormSpecies& nf, const Instantiation& inst) {
  std::vector<NfMethod> out;
  for (const auto& m : nf.methods) {
    if (m.name == "rep" && inst.self) continue;
    NfMethod c = m;
    if (c.type) c.type = subst_type(c.type, inst);
    if (c.inherited_type) c.inherited_type = subst_type(c.inherited_type, inst);
    if (c.declared) c.declared = subst_type_expr(*c.declared, inst);
    if (c.result) c.result = subst_type_expr(*c.result, inst);
    for (auto& p : c.params)
      if (p.type) p.type = subst_type_expr(*p.type, inst);
    if (c.body) c.body = subst_expr(*c.body, inst);
    if (c.statement) c.statement = subst_expr(*c.statement, inst);
    if (c.proof) c.proof = subst_proof(*c.proof, inst);
    Instantiation outer = inst;
    outer.self.reset();
    c.inst = compose(m.inst, outer);
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

const NormalFormSpecies& lookup_species(const SpeciesExpr& se, const Environment& env) {
  auto it = env.species.find(se.name);
  if (it == env.species.end())
    fail(ErrorKind::UnknownSpecies, se.loc, "unknown species '" + se.name + "'");
  return *it->second;
}

// Methods the target of a collection argument actually offers.
const std::vector<NfMethod>* offered(const CollTarget& t, const Environment& env,
                                     const NormalFormSpecies* ctx) {
  if (t.is_param) {
    const InterfaceView* v = ctx ? ctx->interface_of(t.name) : nullptr;
    return v ? &v->methods : nullptr;
  }
  auto it = env.collections.find(t.name);
  return it == env.collections.end() ? nullptr : &it->second->interface;
}

// Formal parameters of `target` bound to the arguments of `se`, read in the
// context of species `ctx` (null at top level).
Instantiation bind_args(const SpeciesExpr& se, const NormalFormSpecies& target,
                        const Environment& env, const NormalFormSpecies* ctx) {
  if (se.args.size() != target.params.size())
    fail(ErrorKind::ArityMismatch, se.loc,
         "species '" + target.name + "' expects " + std::to_string(target.params.size()) +
             " argument(s), got " + std::to_string(se.args.size()));
  Instantiation inst;
  for (std::size_t i = 0; i < se.args.size(); ++i) {
    const SpeciesParam& formal = target.params[i];
    const Expr& arg = se.args[i];
    if (formal.kind == SpeciesParam::Kind::Collection) {
      if (arg.kind != ExprKind::Ident)
        fail(ErrorKind::InterfaceMismatch, arg.loc,
             "parameter '" + formal.name + "' of '" + target.name + "' expects a collection");
      CollTarget t;
      if (ctx && ctx->param(arg.name) &&
          ctx->param(arg.name)->kind == SpeciesParam::Kind::Collection) {
        t = {arg.name, true};
      } else if (env.collections.count(arg.name)) {
        t = {arg.name, false};
      } else {
        fail(ErrorKind::UnknownName, arg.loc, "unknown collection '" + arg.name + "'");
      }
      inst.collections[formal.name] = t;
      const InterfaceView* req = target.interface_of(formal.name);
      const std::vector<NfMethod>* have = offered(t, env, ctx);
      if (req && have) {
        for (const auto& r : req->methods) {
          const NfMethod* h = nullptr;
          for (const auto& m : *have)
            if (m.name == r.name) h = &m;
          TypePtr want = subst_type(r.type, inst);
          if (!h || h->is_logical() != r.is_logical() ||
              (!r.is_logical() && !alpha_equal(want, h->type)))
            fail(ErrorKind::InterfaceMismatch, arg.loc,
                 "'" + arg.name + "' does not provide " + r.name +
                     (r.is_logical() ? std::string() : " : " + show(want)) +
                     " required by parameter '" + formal.name + "' of '" + target.name + "'",
                 {r.name});
        }
      }
    } else {
      Expr a = arg;
      TypePtr got = type_argument(a, env, ctx);
      TypePtr want = subst_type(t_carrier(formal.carrier), inst);
      if (!type_equal(got, want))
        fail(ErrorKind::TypeMismatch, arg.loc,
             "argument for '" + formal.name + "' has type " + show(got) + ", expected " +
                 show(want));
      inst.entities[formal.name] = std::move(a);
    }
  }
  return inst;
}

InterfaceView make_view(const SpeciesParam& p, const Environment& env,
                        const NormalFormSpecies& ctx) {
  const NormalFormSpecies& iface = lookup_species(p.iface, env);
  InterfaceView v;
  v.param = p.name;
  v.species = iface.name;
  v.inst = bind_args(p.iface, iface, env, &ctx);
  Instantiation self = v.inst;
  self.self = CollTarget{p.name, true};
  v.methods = instantiate_methods(iface, self);
  if (auto it = env.orders.find(iface.name); it != env.orders.end()) v.order = it->second;
  return v;
}

bool declared_only(const NfMethod& m) {
  return m.kind == MethodKind::Signature || m.kind == MethodKind::Property ||
         (m.kind == MethodKind::Theorem && !m.valid_proof);
}

void check_clash(const NfMethod& old, const NfMethod& inc, const std::string& species) {
  if (old.is_logical() != inc.is_logical() ||
      (old.kind == MethodKind::Representation) != (inc.kind == MethodKind::Representation))
    fail(ErrorKind::MethodTypeClash, inc.loc,
         "'" + inc.name + "' is a " + to_string(inc.kind) + " in '" + inc.origin + "' but a " +
             to_string(old.kind) + " in '" + old.origin + "' (species '" + species + "')");
  if (old.is_logical()) {
    if (old.statement && inc.statement && !structurally_equal(*old.statement, *inc.statement))
      fail(ErrorKind::MethodTypeClash, inc.loc,
           "'" + inc.name + "' has different statements in '" + old.origin + "' and '" +
               inc.origin + "'");
    return;
  }
  if (inc.kind == MethodKind::Representation) return;
  if (old.type && inc.type && !alpha_equal(old.type, inc.type))
    fail(ErrorKind::MethodTypeClash, inc.loc,
         "'" + inc.name + "' has type " + show(inc.type) + " in '" + inc.origin + "' but " +
             show(old.type) + " in '" + old.origin + "'");
}

void merge(NormalFormSpecies& nf, NfMethod inc) {
  NfMethod* old = nf.find(inc.name);
  if (!old) {
    nf.methods.push_back(std::move(inc));
    return;
  }
  if (inc.kind == MethodKind::Representation) {
    if (old->origin != inc.origin)
      fail(ErrorKind::RepresentationRedefined, inc.loc,
           "representation of '" + nf.name + "' inherited from both '" + old->origin + "' and '" +
               inc.origin + "'");
    return;  // same representation reached twice
  }
  check_clash(*old, inc, nf.name);
  // A declaration never hides a definition; between two declarations the
  // first one stays, except that a (reverted) theorem refines a property.
  if (declared_only(inc) && !declared_only(*old)) return;
  if (declared_only(inc) && !(inc.kind == MethodKind::Theorem && old->kind == MethodKind::Property))
    return;
  *old = std::move(inc);
}

NfMethod from_decl(const MethodDecl& d, const std::string& species, int stamp) {
  NfMethod m;
  m.name = d.kind == MethodKind::Representation ? "rep" : d.name;
  m.kind = d.kind;
  m.origin = species;
  m.stamp = stamp;
  m.rec = d.rec;
  m.loc = d.loc;
  switch (d.kind) {
    case MethodKind::Signature:
    case MethodKind::Representation:
      m.declared = d.type;
      break;
    case MethodKind::Let:
      m.params = d.params;
      m.result = d.type;
      m.body = d.body;
      break;
    case MethodKind::Property:
      m.statement = d.statement;
      break;
    case MethodKind::Theorem:
    case MethodKind::ProofOf:
      m.statement = d.statement;
      m.proof = d.proof;
      break;
  }
  if (m.proof) {
    LeafFacts f = collect_leaf_facts(*m.proof);
    m.admitted = f.admitted;
    for (const auto& r : f.definitions)
      if (std::find(m.unfolds.begin(), m.unfolds.end(), r.name) == m.unfolds.end())
        m.unfolds.push_back(r.name);
  }
  return m;
}

}  // namespace

NormalFormSpecies normalize(const SpeciesDecl& decl, const Environment& env) {
  NormalFormSpecies nf;
  nf.name = decl.name;
  nf.loc = decl.loc;
  for (const auto& p : decl.params) {
    nf.params.push_back(p);
    if (p.kind == SpeciesParam::Kind::Collection) nf.interfaces.push_back(make_view(p, env, nf));
  }

  int stamp = 0;
  for (const auto& se : decl.inherits) {
    ++stamp;
    const NormalFormSpecies& parent = lookup_species(se, env);
    Instantiation inst = bind_args(se, parent, env, &nf);
    for (auto& m : instantiate_methods(parent, inst)) {
      m.stamp = stamp;
      merge(nf, std::move(m));
    }
  }

  ++stamp;
  for (const auto& d : decl.methods) {
    NfMethod m = from_decl(d, decl.name, stamp);
    if (d.kind == MethodKind::ProofOf) {
      NfMethod* old = nf.find(d.name);
      if (!old || !old->is_logical())
        fail(ErrorKind::UnknownProperty, d.loc,
             "'proof of " + d.name + "' names no property of species '" + decl.name + "'");
      m.kind = MethodKind::Theorem;
      m.statement = old->statement;
      m.inherited_type = old->type;
      m.loc = d.loc;
      *old = std::move(m);
      continue;
    }
    if (NfMethod* old = nf.find(m.name)) {
      if (d.kind == MethodKind::Representation) {
        if (old->kind == MethodKind::Representation)
          fail(ErrorKind::RepresentationRedefined, d.loc,
               "representation of '" + decl.name + "' is already defined in '" + old->origin + "'");
      }
      if (declared_only(m)) {
        // A local declaration of an inherited name must agree with it.
        if (m.kind == MethodKind::Signature) {
          TypeExpr te = *m.declared;
          Unifier g;
          TypePtr t = g.generalize(resolve_type(te, env, &nf));
          NfMethod probe = m;
          probe.type = t;
          check_clash(*old, probe, nf.name);
        } else {
          check_clash(*old, m, nf.name);
        }
        if (!declared_only(*old)) continue;
      } else if (old->is_logical() != m.is_logical()) {
        check_clash(*old, m, nf.name);
      }
      m.inherited_type = old->type ? old->type : old->inherited_type;
      *old = std::move(m);
    } else {
      nf.methods.push_back(std::move(m));
    }
  }
  return nf;
}

void invalidate_proofs(NormalFormSpecies& nf) {
  for (auto& m : nf.methods) {
    if (m.kind != MethodKind::Theorem || !m.valid_proof) continue;
    std::vector<std::string> deps = m.unfolds;
    if (m.carrier_def) deps.push_back("rep");
    for (const auto& d : deps) {
      const NfMethod* t = nf.find(d);
      if (!t || t->stamp <= m.stamp) continue;
      m.valid_proof = false;
      nf.warnings.push_back(Diagnostic{
          Severity::Warning, ErrorKind::RevertedProof, m.loc,
          "proof of '" + m.name + "' (from '" + m.origin + "') is reverted: it unfolds '" + d +
              "', redefined in '" + t->origin + "'",
          {m.name, d}});
      break;
    }
  }
}

std::vector<std::string> missing_definitions(const NormalFormSpecies& nf) {
  std::vector<std::string> out;
  if (!nf.rep()) out.push_back("rep");
  for (const auto& m : nf.methods) {
    if (m.kind == MethodKind::Signature || m.kind == MethodKind::Property) out.push_back(m.name);
    if (m.kind == MethodKind::Theorem && !m.valid_proof) out.push_back(m.name);
  }
  return out;
}

CollectionModel make_collection(const CollectionDecl& decl, const Environment& env) {
  const NormalFormSpecies& nf = lookup_species(decl.implements, env);
  CollectionModel c;
  c.name = decl.name;
  c.species = nf.name;
  c.loc = decl.loc;
  c.inst = bind_args(decl.implements, nf, env, nullptr);
  for (const auto& p : nf.params)
    c.args.push_back(p.kind == SpeciesParam::Kind::Collection
                         ? Expr::ident(c.inst.collections.at(p.name).name, decl.loc)
                         : c.inst.entities.at(p.name));
  std::vector<std::string> missing = missing_definitions(nf);
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    fail(ErrorKind::IncompleteSpecies, decl.loc,
         "collection '" + decl.name + "' implements incomplete species '" + nf.name +
             "'; missing: " + list,
         missing);
  }
  Instantiation self = c.inst;
  self.self = CollTarget{decl.name, false};
  c.interface = instantiate_methods(nf, self);
  for (const auto& m : nf.methods)
    if (m.admitted) c.admitted.push_back(m.name);
  return c;
}

SpeciesDecl as_declaration(const NormalFormSpecies& nf) {
  SpeciesDecl d;
  d.name = nf.name;
  d.params = nf.params;
  d.loc = nf.loc;
  for (const auto& m : nf.methods) {
    MethodDecl md;
    md.name = m.name;
    md.kind = m.kind;
    md.rec = m.rec;
    md.loc = m.loc;
    switch (m.kind) {
      case MethodKind::Representation:
      case MethodKind::Signature:
        md.type = m.declared;
        break;
      case MethodKind::Let:
        md.params = m.params;
        md.type = m.result;
        md.body = m.body;
        break;
      case MethodKind::Property:
        md.statement = m.statement;
        break;
      case MethodKind::Theorem:
      case MethodKind::ProofOf:
        md.kind = m.valid_proof ? MethodKind::Theorem : MethodKind::Property;
        md.statement = m.statement;
        if (m.valid_proof) md.proof = m.proof;
        break;
    }
    d.methods.push_back(std::move(md));
  }
  return d;
}

bool same_modulo_origins(const NormalFormSpecies& a, const NormalFormSpecies& b) {
  if (a.methods.size() != b.methods.size()) return false;
  for (std::size_t i = 0; i < a.methods.size(); ++i) {
    const NfMethod& x = a.methods[i];
    const NfMethod& y = b.methods[i];
    if (x.name != y.name || x.defined() != y.defined() || x.is_logical() != y.is_logical())
      return false;
    if (x.kind == MethodKind::Representation) {
      if (!structurally_equal(*x.declared, *y.declared)) return false;
      continue;
    }
    if (x.is_logical()) {
      if (!structurally_equal(*x.statement, *y.statement)) return false;
    } else if (!x.type || !y.type || !alpha_equal(x.type, y.type)) {
      return false;
    }
  }
  return true;
}

}  // namespace focml
