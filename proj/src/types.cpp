#include "focml/types.hpp"

#include <functional>

namespace focml {

namespace {

TypePtr make(Type::Kind k, std::string name = {}, std::vector<TypePtr> args = {}, int var = -1) {
  auto t = std::make_shared<Type>();
  t->kind = k;
  t->name = std::move(name);
  t->args = std::move(args);
  t->var = var;
  return t;
}

std::string var_name(int v) {
  std::string s = "'";
  s.push_back(static_cast<char>('a' + v % 26));
  if (v >= 26) s += std::to_string(v / 26);
  return s;
}

}  // namespace

TypePtr t_var(int id) { return make(Type::Kind::Var, {}, {}, id); }
TypePtr t_base(const std::string& name) { return make(Type::Kind::Base, name); }
TypePtr t_union(const std::string& name) { return make(Type::Kind::Union, name); }
TypePtr t_self() {
  static const TypePtr s = make(Type::Kind::Self, "Self");
  return s;
}
TypePtr t_carrier(const std::string& name) { return make(Type::Kind::Carrier, name); }
TypePtr t_arrow(TypePtr from, TypePtr to) {
  return make(Type::Kind::Arrow, {}, {std::move(from), std::move(to)});
}
TypePtr t_arrows(const std::vector<TypePtr>& from, TypePtr to) {
  for (auto it = from.rbegin(); it != from.rend(); ++it) to = t_arrow(*it, to);
  return to;
}
TypePtr t_tuple(std::vector<TypePtr> parts) { return make(Type::Kind::Tuple, {}, std::move(parts)); }
TypePtr t_prop() {
  static const TypePtr p = make(Type::Kind::Prop, "Prop");
  return p;
}

std::string show(const TypePtr& t) {
  switch (t->kind) {
    case Type::Kind::Var: return var_name(t->var);
    case Type::Kind::Base:
    case Type::Kind::Union:
    case Type::Kind::Carrier:
    case Type::Kind::Self:
    case Type::Kind::Prop:
      return t->name;
    case Type::Kind::Arrow: {
      const std::string lhs = show(t->args[0]);
      return (t->args[0]->kind == Type::Kind::Arrow ? "(" + lhs + ")" : lhs) + " -> " +
             show(t->args[1]);
    }
    case Type::Kind::Tuple: {
      std::string s = "(";
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        const auto& a = t->args[i];
        const std::string part = show(a);
        s += (i ? " * " : "") + (a->kind == Type::Kind::Arrow ? "(" + part + ")" : part);
      }
      return s + ")";
    }
  }
  return "?";
}

bool type_equal(const TypePtr& a, const TypePtr& b) {
  if (a->kind != b->kind || a->name != b->name || a->var != b->var ||
      a->args.size() != b->args.size())
    return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!type_equal(a->args[i], b->args[i])) return false;
  return true;
}

bool alpha_equal(const TypePtr& a, const TypePtr& b) {
  std::map<int, int> fwd, bwd;
  std::function<bool(const TypePtr&, const TypePtr&)> go = [&](const TypePtr& x, const TypePtr& y) {
    if (x->kind != y->kind) return false;
    if (x->kind == Type::Kind::Var) {
      auto [f, fresh_f] = fwd.emplace(x->var, y->var);
      auto [g, fresh_g] = bwd.emplace(y->var, x->var);
      return f->second == y->var && g->second == x->var;
    }
    if (x->name != y->name || x->args.size() != y->args.size()) return false;
    for (std::size_t i = 0; i < x->args.size(); ++i)
      if (!go(x->args[i], y->args[i])) return false;
    return true;
  };
  return go(a, b);
}

bool mentions_self(const TypePtr& t) {
  if (t->kind == Type::Kind::Self) return true;
  for (const auto& a : t->args)
    if (mentions_self(a)) return true;
  return false;
}

void collect_carriers(const TypePtr& t, std::set<std::string>& out) {
  if (t->kind == Type::Kind::Carrier) out.insert(t->name);
  for (const auto& a : t->args) collect_carriers(a, out);
}

void collect_vars(const TypePtr& t, std::set<int>& out) {
  if (t->kind == Type::Kind::Var) out.insert(t->var);
  for (const auto& a : t->args) collect_vars(a, out);
}

TypePtr replace_carriers(const TypePtr& t, const std::map<std::string, TypePtr>& m) {
  if (t->kind == Type::Kind::Self || t->kind == Type::Kind::Carrier) {
    auto it = m.find(t->kind == Type::Kind::Self ? std::string("Self") : t->name);
    return it == m.end() ? t : it->second;
  }
  if (t->args.empty()) return t;
  std::vector<TypePtr> args;
  bool changed = false;
  for (const auto& a : t->args) {
    args.push_back(replace_carriers(a, m));
    changed = changed || args.back() != a;
  }
  return changed ? make(t->kind, t->name, std::move(args), t->var) : t;
}

bool split_arrows(const TypePtr& t, std::size_t n, std::vector<TypePtr>& doms, TypePtr& result) {
  doms.clear();
  TypePtr cur = t;
  for (std::size_t i = 0; i < n; ++i) {
    if (cur->kind != Type::Kind::Arrow) return false;
    doms.push_back(cur->args[0]);
    cur = cur->args[1];
  }
  result = cur;
  return true;
}

// ---------------------------------------------------------------------------

int Unifier::fresh() {
  subst_.push_back(nullptr);
  return static_cast<int>(subst_.size()) - 1;
}

TypePtr Unifier::resolve(const TypePtr& t) const {
  if (t->kind == Type::Kind::Var) {
    if (t->var >= 0 && t->var < static_cast<int>(subst_.size()) && subst_[t->var])
      return resolve(subst_[t->var]);
    return t;
  }
  if (t->args.empty()) return t;
  std::vector<TypePtr> args;
  bool changed = false;
  for (const auto& a : t->args) {
    args.push_back(resolve(a));
    changed = changed || args.back() != a;
  }
  return changed ? make(t->kind, t->name, std::move(args), t->var) : t;
}

bool Unifier::occurs(int v, const TypePtr& t) const {
  const TypePtr r = resolve(t);
  if (r->kind == Type::Kind::Var) return r->var == v;
  for (const auto& a : r->args)
    if (occurs(v, a)) return true;
  return false;
}

bool Unifier::bind(int v, const TypePtr& t) {
  if (t->kind == Type::Kind::Var && t->var == v) return true;
  if (occurs(v, t)) return false;
  subst_[v] = t;
  return true;
}

bool Unifier::unify(const TypePtr& a0, const TypePtr& b0) {
  const TypePtr a = resolve(a0);
  const TypePtr b = resolve(b0);
  if (a->kind == Type::Kind::Var) return bind(a->var, b);
  if (b->kind == Type::Kind::Var) return bind(b->var, a);
  if (a->kind == Type::Kind::Self && b->kind == Type::Kind::Self) return true;
  if (a->kind == Type::Kind::Self || b->kind == Type::Kind::Self) {
    if (!body_mode_ || !rep_) return false;
    rep_used_ = true;
    return unify(rep_, a->kind == Type::Kind::Self ? b : a);
  }
  if (a->kind != b->kind || a->name != b->name || a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!unify(a->args[i], b->args[i])) return false;
  return true;
}

TypePtr Unifier::instantiate(const TypePtr& t) {
  std::map<int, TypePtr> fresh_vars;
  std::function<TypePtr(const TypePtr&)> go = [&](const TypePtr& x) -> TypePtr {
    if (x->kind == Type::Kind::Var) {
      auto it = fresh_vars.find(x->var);
      if (it == fresh_vars.end()) it = fresh_vars.emplace(x->var, fresh_var()).first;
      return it->second;
    }
    if (x->args.empty()) return x;
    std::vector<TypePtr> args;
    for (const auto& a : x->args) args.push_back(go(a));
    return make(x->kind, x->name, std::move(args), x->var);
  };
  return go(t);
}

TypePtr Unifier::generalize(const TypePtr& t) const {
  std::map<int, int> renaming;
  std::function<TypePtr(const TypePtr&)> go = [&](const TypePtr& x) -> TypePtr {
    if (x->kind == Type::Kind::Var) {
      auto it = renaming.find(x->var);
      if (it == renaming.end()) it = renaming.emplace(x->var, static_cast<int>(renaming.size())).first;
      return t_var(it->second);
    }
    if (x->args.empty()) return x;
    std::vector<TypePtr> args;
    for (const auto& a : x->args) args.push_back(go(a));
    return make(x->kind, x->name, std::move(args), x->var);
  };
  return go(resolve(t));
}

}  // namespace focml
