#include "focml/subst.hpp"

#include <set>

namespace focml {

TypePtr subst_type(const TypePtr& t, const Instantiation& inst) {
  std::map<std::string, TypePtr> m;
  for (const auto& [from, to] : inst.collections) m[from] = t_carrier(to.name);
  if (inst.self) m["Self"] = t_carrier(inst.self->name);
  return m.empty() ? t : replace_carriers(t, m);
}

TypeExpr subst_type_expr(const TypeExpr& t, const Instantiation& inst) {
  TypeExpr out = t;
  if (t.kind == TypeExpr::Kind::Self && inst.self) {
    out.kind = TypeExpr::Kind::Named;
    out.name = inst.self->name;
    out.ref = inst.self->is_param ? TypeExpr::Ref::Param : TypeExpr::Ref::Collection;
    return out;
  }
  if (t.kind == TypeExpr::Kind::Named &&
      (t.ref == TypeExpr::Ref::Param || t.ref == TypeExpr::Ref::Unresolved)) {
    auto it = inst.collections.find(t.name);
    if (it != inst.collections.end()) {
      out.name = it->second.name;
      out.ref = it->second.is_param ? TypeExpr::Ref::Param : TypeExpr::Ref::Collection;
    }
    return out;
  }
  for (auto& a : out.args) a = subst_type_expr(a, inst);
  return out;
}

namespace {

void pattern_vars(const Pattern& p, std::set<std::string>& out) {
  if (p.kind == Pattern::Kind::Var) out.insert(p.name);
  for (const auto& a : p.args) pattern_vars(a, out);
}

Expr subst_in(const Expr& e, const Instantiation& inst, const std::set<std::string>& bound) {
  switch (e.kind) {
    case ExprKind::Ident: {
      if (e.ref == IdentRef::Entity && !bound.count(e.name)) {
        auto it = inst.entities.find(e.name);
        if (it != inst.entities.end()) {
          Expr r = it->second;
          r.loc = e.loc;
          return r;
        }
      }
      return e;
    }
    case ExprKind::Qualified: {
      Expr out = e;
      auto it = inst.collections.find(e.qualifier);
      if (it != inst.collections.end() && e.coll_ref != CollRef::Collection) {
        out.qualifier = it->second.name;
        out.coll_ref = it->second.is_param ? CollRef::Param : CollRef::Collection;
      }
      return out;
    }
    case ExprKind::Quant: {
      Expr out = e;
      out.binder_type = subst_type_expr(*e.binder_type, inst);
      std::set<std::string> inner = bound;
      inner.insert(e.binders.begin(), e.binders.end());
      out.kids[0] = subst_in(e.kids[0], inst, inner);
      return out;
    }
    case ExprKind::Match: {
      Expr out = e;
      out.kids[0] = subst_in(e.kids[0], inst, bound);
      for (std::size_t i = 1; i < e.kids.size(); ++i) {
        std::set<std::string> inner = bound;
        pattern_vars(e.patterns[i - 1], inner);
        out.kids[i] = subst_in(e.kids[i], inst, inner);
      }
      return out;
    }
    default: {
      Expr out = e;
      for (auto& k : out.kids) k = subst_in(k, inst, bound);
      return out;
    }
  }
}

void subst_facts(Facts& f, const Instantiation& inst) {
  for (auto& r : f.properties) {
    auto it = inst.collections.find(r.qualifier);
    if (!r.qualifier.empty() && it != inst.collections.end()) r.qualifier = it->second.name;
  }
}

Proof subst_proof_in(const Proof& p, const Instantiation& inst, std::set<std::string> bound) {
  Proof out = p;
  subst_facts(out.facts, inst);
  for (auto& s : out.steps) {
    std::set<std::string> inner = bound;
    for (auto& a : s.assumes) {
      a.type = subst_type_expr(a.type, inst);
      inner.insert(a.names.begin(), a.names.end());
    }
    for (auto& h : s.hypotheses) h.statement = subst_in(h.statement, inst, inner);
    if (s.goal) s.goal = subst_in(*s.goal, inst, inner);
    s.proof = subst_proof_in(s.proof, inst, inner);
  }
  return out;
}

}  // namespace

Expr subst_expr(const Expr& e, const Instantiation& inst) {
  if (inst.empty()) return e;
  return subst_in(e, inst, {});
}

Proof subst_proof(const Proof& p, const Instantiation& inst) {
  if (inst.empty()) return p;
  return subst_proof_in(p, inst, {});
}

Instantiation compose(const Instantiation& inner, const Instantiation& outer) {
  Instantiation out;
  for (const auto& [from, mid] : inner.collections) {
    CollTarget t = mid;
    if (mid.is_param) {
      auto it = outer.collections.find(mid.name);
      if (it != outer.collections.end()) t = it->second;
    }
    out.collections[from] = t;
  }
  for (const auto& [from, e] : inner.entities) out.entities[from] = subst_expr(e, outer);
  out.self = inner.self;
  return out;
}

}  // namespace focml
