#include "focml/typing.hpp"

#include <functional>
#include <set>

#include "focml/printer.hpp"
#include "focml/proof.hpp"

namespace focml {

namespace {

// Facts of the `basics` library that proofs may cite.
const std::set<std::string>& basics_properties() {
  static const std::set<std::string> props = {"int_ltNotGt", "int_eqRefl", "int_ltIrrefl",
                                              "int_eqSym", "bool_excluded_middle"};
  return props;
}

struct TypeFailure {
  SourceLoc loc;
  std::string message;
  const Expr* atom = nullptr;
};

[[noreturn]] void type_fail(const SourceLoc& loc, std::string msg) {
  throw TypeFailure{loc, std::move(msg), nullptr};
}

class SpeciesTyper;

// Inference state for one method body or statement.
class MethodTyper {
 public:
  MethodTyper(SpeciesTyper& owner, const Environment& env, const NormalFormSpecies* nf)
      : owner_(owner), env_(env), nf_(nf) {}

  Unifier u;
  bool self_touched = false;

  void push(const std::string& name, TypePtr t) { locals_.emplace_back(name, std::move(t)); }
  void pop(std::size_t n) { locals_.resize(locals_.size() - n); }

  TypePtr touch(TypePtr t) {
    if (mentions_self(t)) self_touched = true;
    return t;
  }

  void expect(const TypePtr& actual, const TypePtr& expected, const SourceLoc& loc,
              const char* what) {
    if (!u.unify(actual, expected))
      type_fail(loc, std::string(what) + ": expected " + show(u.resolve(expected)) +
                         " but found " + show(u.resolve(actual)));
  }

  TypePtr infer(Expr& e);
  void formula(Expr& e);
  TypePtr qualified(Expr& e);

  const Expr* current_atom = nullptr;
  bool allow_self_methods = true;

 private:
  const TypePtr* local(const std::string& name) const {
    for (auto it = locals_.rbegin(); it != locals_.rend(); ++it)
      if (it->first == name) return &it->second;
    return nullptr;
  }
  TypePtr ident(Expr& e, bool callee);
  TypePtr constructor(Expr& e, const std::string& ctor, std::vector<Expr*> args);
  void bind_pattern(Pattern& p, const TypePtr& t, std::size_t& pushed);

  SpeciesTyper& owner_;
  const Environment& env_;
  const NormalFormSpecies* nf_;
  std::vector<std::pair<std::string, TypePtr>> locals_;
};

class SpeciesTyper {
 public:
  SpeciesTyper(NormalFormSpecies* nf, const Environment& env) : nf_(nf), env_(env) {}

  // Generalized type of a Self method, inferring it on demand.
  TypePtr method_type(const std::string& name, const SourceLoc& loc);
  void type_method(NfMethod& m);
  void run();

  std::optional<CarrierViolation> leak_check(const NfMethod& m);

 private:
  void type_let(NfMethod& m);
  void type_statement(NfMethod& m);
  void type_proof(NfMethod& m);

  NormalFormSpecies* nf_;
  const Environment& env_;
  std::set<std::string> in_progress_;
};

// -- resolution of source types ---------------------------------------------

TypePtr resolve_named(TypeExpr& t, const Environment& env, const NormalFormSpecies* nf) {
  static const std::set<std::string> base = {"int", "bool", "string"};
  if (base.count(t.name)) {
    t.ref = TypeExpr::Ref::Builtin;
    return t_base(t.name);
  }
  if (nf) {
    if (const SpeciesParam* p = nf->param(t.name); p && p->kind == SpeciesParam::Kind::Collection) {
      t.ref = TypeExpr::Ref::Param;
      return t_carrier(t.name);
    }
  }
  if (env.types.count(t.name)) {
    t.ref = TypeExpr::Ref::Union;
    return t_union(t.name);
  }
  if (env.collections.count(t.name)) {
    t.ref = TypeExpr::Ref::Collection;
    return t_carrier(t.name);
  }
  if (t.ref == TypeExpr::Ref::Param || t.ref == TypeExpr::Ref::Collection) return t_carrier(t.name);
  fail(ErrorKind::UnknownName, t.loc, "unknown type '" + t.name + "'");
}

}  // namespace

TypePtr resolve_type(TypeExpr& t, const Environment& env, const NormalFormSpecies* nf) {
  switch (t.kind) {
    case TypeExpr::Kind::Self: return t_self();
    case TypeExpr::Kind::Named: return resolve_named(t, env, nf);
    case TypeExpr::Kind::Arrow:
      return t_arrow(resolve_type(t.args[0], env, nf), resolve_type(t.args[1], env, nf));
    case TypeExpr::Kind::Tuple: {
      std::vector<TypePtr> parts;
      for (auto& a : t.args) parts.push_back(resolve_type(a, env, nf));
      return t_tuple(std::move(parts));
    }
  }
  return t_self();
}

namespace {

// -- expressions --------------------------------------------------------------

TypePtr MethodTyper::constructor(Expr& e, const std::string& ctor, std::vector<Expr*> args) {
  const std::string& tname = env_.constructors.at(ctor);
  const UnionTypeDecl* decl = env_.types.at(tname);
  for (const auto& c : decl->ctors) {
    if (c.name != ctor) continue;
    if (c.args.size() != args.size())
      fail(ErrorKind::ArityMismatch, e.loc,
           "constructor '" + ctor + "' expects " + std::to_string(c.args.size()) + " argument(s)");
    for (std::size_t i = 0; i < args.size(); ++i) {
      TypeExpr te = c.args[i];
      expect(infer(*args[i]), resolve_type(te, env_, nullptr), args[i]->loc, "constructor argument");
    }
  }
  return t_union(tname);
}

TypePtr MethodTyper::ident(Expr& e, bool callee) {
  if (const TypePtr* t = local(e.name)) {
    e.ref = IdentRef::Local;
    return *t;
  }
  if (nf_) {
    if (const SpeciesParam* p = nf_->param(e.name); p && p->kind == SpeciesParam::Kind::Entity) {
      e.ref = IdentRef::Entity;
      return t_carrier(p->carrier);
    }
    if (allow_self_methods && e.name != "rep") {
      if (const NfMethod* m = nf_->find(e.name)) {
        if (m->is_logical())
          type_fail(e.loc, "'" + e.name + "' is a " + to_string(m->kind) +
                               " and cannot be used inside an expression");
        e.ref = IdentRef::Method;
        return touch(u.instantiate(owner_.method_type(e.name, e.loc)));
      }
    }
  }
  if (env_.constructors.count(e.name)) {
    e.ref = IdentRef::Constructor;
    return constructor(e, e.name, {});
  }
  if (e.name == "fst" || e.name == "snd") {
    e.ref = IdentRef::Builtin;
    TypePtr a = u.fresh_var(), b = u.fresh_var();
    return t_arrow(t_tuple({a, b}), e.name == "fst" ? a : b);
  }
  (void)callee;
  fail(ErrorKind::UnknownName, e.loc, "unknown identifier '" + e.name + "'");
}

TypePtr MethodTyper::qualified(Expr& e) {
  const NfMethod* m = nullptr;
  if (nf_) {
    if (const InterfaceView* v = nf_->interface_of(e.qualifier)) {
      e.coll_ref = CollRef::Param;
      m = v->find(e.name);
      if (!m)
        fail(ErrorKind::UnknownName, e.loc,
             "parameter '" + e.qualifier + "' has no method '" + e.name + "'");
    }
  }
  if (!m) {
    auto it = env_.collections.find(e.qualifier);
    if (it == env_.collections.end())
      fail(ErrorKind::UnknownName, e.loc, "unknown collection '" + e.qualifier + "'");
    e.coll_ref = CollRef::Collection;
    m = it->second->find(e.name);
    if (!m)
      fail(ErrorKind::UnknownName, e.loc,
           "collection '" + e.qualifier + "' has no method '" + e.name + "'");
  }
  if (m->is_logical())
    type_fail(e.loc, "'" + e.qualifier + "!" + e.name + "' is a " + to_string(m->kind) +
                         " and cannot be used inside an expression");
  return u.instantiate(m->type);
}

void MethodTyper::bind_pattern(Pattern& p, const TypePtr& t, std::size_t& pushed) {
  switch (p.kind) {
    case Pattern::Kind::Wildcard: return;
    case Pattern::Kind::Var:
      push(p.name, t);
      ++pushed;
      return;
    case Pattern::Kind::Tuple: {
      std::vector<TypePtr> parts;
      for (std::size_t i = 0; i < p.args.size(); ++i) parts.push_back(u.fresh_var());
      expect(t_tuple(parts), t, p.loc, "tuple pattern");
      for (std::size_t i = 0; i < p.args.size(); ++i) bind_pattern(p.args[i], parts[i], pushed);
      return;
    }
    case Pattern::Kind::Ctor: {
      auto it = env_.constructors.find(p.name);
      if (it == env_.constructors.end())
        fail(ErrorKind::UnknownName, p.loc, "unknown constructor '" + p.name + "'");
      const UnionTypeDecl* decl = env_.types.at(it->second);
      expect(t_union(decl->name), t, p.loc, "pattern");
      for (const auto& c : decl->ctors) {
        if (c.name != p.name) continue;
        if (c.args.size() != p.args.size())
          fail(ErrorKind::ArityMismatch, p.loc,
               "constructor '" + p.name + "' expects " + std::to_string(c.args.size()) +
                   " argument(s)");
        for (std::size_t i = 0; i < p.args.size(); ++i) {
          TypeExpr te = c.args[i];
          bind_pattern(p.args[i], resolve_type(te, env_, nullptr), pushed);
        }
      }
      return;
    }
  }
}

TypePtr MethodTyper::infer(Expr& e) {
  switch (e.kind) {
    case ExprKind::Int: return t_base("int");
    case ExprKind::Bool: return t_base("bool");
    case ExprKind::String: return t_base("string");
    case ExprKind::Ident: return ident(e, false);
    case ExprKind::Qualified: return qualified(e);
    case ExprKind::App: {
      Expr& callee = e.kids[0];
      if (callee.kind == ExprKind::Ident && !local(callee.name) &&
          !(nf_ && nf_->param(callee.name)) && env_.constructors.count(callee.name) &&
          !(nf_ && allow_self_methods && nf_->find(callee.name))) {
        callee.ref = IdentRef::Constructor;
        std::vector<Expr*> args;
        for (std::size_t i = 1; i < e.kids.size(); ++i) args.push_back(&e.kids[i]);
        return constructor(e, callee.name, args);
      }
      TypePtr f = callee.kind == ExprKind::Ident ? ident(callee, true) : infer(callee);
      for (std::size_t i = 1; i < e.kids.size(); ++i) {
        TypePtr arg = infer(e.kids[i]);
        TypePtr res = u.fresh_var();
        const TypePtr fr = u.resolve(f);
        if (fr->kind != Type::Kind::Var && fr->kind != Type::Kind::Arrow)
          type_fail(e.loc, "'" + print_expr(callee) + "' applied to too many arguments");
        expect(t_arrow(arg, res), f, e.kids[i].loc, "argument");
        f = res;
      }
      return f;
    }
    case ExprKind::If: {
      expect(infer(e.kids[0]), t_base("bool"), e.kids[0].loc, "condition");
      TypePtr t = infer(e.kids[1]);
      expect(infer(e.kids[2]), t, e.kids[2].loc, "else branch");
      return t;
    }
    case ExprKind::Tuple: {
      std::vector<TypePtr> parts;
      for (auto& k : e.kids) parts.push_back(infer(k));
      return t_tuple(std::move(parts));
    }
    case ExprKind::Match: {
      TypePtr scrut = infer(e.kids[0]);
      TypePtr result = u.fresh_var();
      for (std::size_t i = 1; i < e.kids.size(); ++i) {
        std::size_t pushed = 0;
        bind_pattern(e.patterns[i - 1], scrut, pushed);
        expect(infer(e.kids[i]), result, e.kids[i].loc, "match arm");
        pop(pushed);
      }
      return result;
    }
    case ExprKind::Unary:
      if (e.op != Op::Not) type_fail(e.loc, "formula connective inside an expression");
      expect(infer(e.kids[0]), t_base("bool"), e.kids[0].loc, "operand of ~~");
      return t_base("bool");
    case ExprKind::Binary: {
      switch (e.op) {
        case Op::And:
        case Op::Or:
          expect(infer(e.kids[0]), t_base("bool"), e.kids[0].loc, "boolean operand");
          expect(infer(e.kids[1]), t_base("bool"), e.kids[1].loc, "boolean operand");
          return t_base("bool");
        case Op::Add:
        case Op::Sub:
          expect(infer(e.kids[0]), t_base("int"), e.kids[0].loc, "integer operand");
          expect(infer(e.kids[1]), t_base("int"), e.kids[1].loc, "integer operand");
          return t_base("int");
        case Op::LtInt:
        case Op::EqInt:
          expect(infer(e.kids[0]), t_base("int"), e.kids[0].loc, "integer operand");
          expect(infer(e.kids[1]), t_base("int"), e.kids[1].loc, "integer operand");
          return t_base("bool");
        case Op::Eq: {
          TypePtr a = infer(e.kids[0]);
          expect(infer(e.kids[1]), a, e.kids[1].loc, "right-hand side of =");
          return t_base("bool");
        }
        default:
          type_fail(e.loc, std::string("formula connective '") + op_spelling(e.op) +
                               "' inside an expression");
      }
    }
    case ExprKind::Quant:
      type_fail(e.loc, "quantifier inside an expression");
  }
  type_fail(e.loc, "ill-formed expression");
}

void MethodTyper::formula(Expr& e) {
  switch (e.kind) {
    case ExprKind::Quant: {
      TypePtr t = touch(resolve_type(*e.binder_type, env_, nf_));
      for (const auto& b : e.binders) push(b, t);
      formula(e.kids[0]);
      pop(e.binders.size());
      return;
    }
    case ExprKind::Unary:
      if (e.op == Op::Neg) {
        formula(e.kids[0]);
        return;
      }
      break;
    case ExprKind::Binary:
      if (is_formula_op(e.op)) {
        formula(e.kids[0]);
        formula(e.kids[1]);
        return;
      }
      break;
    default:
      break;
  }
  const Expr* saved = current_atom;
  current_atom = &e;
  try {
    expect(infer(e), t_base("bool"), e.loc, "statement atom");
  } catch (TypeFailure& f) {
    if (!f.atom) f.atom = &e;
    throw;
  }
  current_atom = saved;
}

// -- species-level driver -------------------------------------------------------

TypePtr SpeciesTyper::method_type(const std::string& name, const SourceLoc& loc) {
  NfMethod* m = nf_->find(name);
  if (!m->typed) {
    if (in_progress_.count(name)) {
      // Mutual recursion between untyped definitions: the declared type, if
      // any, else an unconstrained variable; cycles are reported later.
      if (m->inherited_type) return m->inherited_type;
      return t_var(0);
    }
    (void)loc;
    type_method(*m);
  }
  return m->type;
}

void SpeciesTyper::type_let(NfMethod& m) {
  MethodTyper mt(*this, env_, nf_);
  std::vector<TypePtr> doms;
  for (auto& p : m.params) doms.push_back(p.type ? mt.touch(resolve_type(*p.type, env_, nf_)) : mt.u.fresh_var());
  TypePtr result = m.result ? mt.touch(resolve_type(*m.result, env_, nf_)) : mt.u.fresh_var();
  TypePtr whole = t_arrows(doms, result);
  if (const NfMethod* rep = nf_->rep()) mt.u.set_body_mode(rep->type);
  if (m.inherited_type) {
    mt.touch(m.inherited_type);
    if (!mt.u.unify(whole, mt.u.instantiate(m.inherited_type)))
      fail(ErrorKind::MethodTypeClash, m.loc,
           "definition of '" + m.name + "' has type " + show(mt.u.resolve(whole)) +
               " but it is declared with type " + show(m.inherited_type));
  }
  for (std::size_t i = 0; i < m.params.size(); ++i) mt.push(m.params[i].name, doms[i]);
  if (m.rec) mt.push(m.name, whole);
  mt.expect(mt.infer(*m.body), result, m.body->loc, "body of '" + m.name + "'" == "" ? "" : "body");
  m.carrier_def = mt.u.rep_used();
  const TypePtr inferred = mt.u.generalize(whole);
  if (m.inherited_type && !alpha_equal(inferred, m.inherited_type)) {
    // The definition may be more general than its declaration; the
    // declaration is what clients see.
    m.type = m.inherited_type;
  } else {
    m.type = m.inherited_type ? m.inherited_type : inferred;
  }
  m.carrier_decl = mt.self_touched || mentions_self(m.type);
}

void SpeciesTyper::type_statement(NfMethod& m) {
  MethodTyper mt(*this, env_, nf_);
  mt.u.set_statement_mode();
  try {
    mt.formula(*m.statement);
  } catch (TypeFailure& f) {
    // Distinguish a leak of the representation from a plain type error.
    MethodTyper body(*this, env_, nf_);
    bool ok = false;
    if (const NfMethod* rep = nf_->rep()) {
      body.u.set_body_mode(rep->type);
      Expr copy = *m.statement;
      try {
        body.formula(copy);
        ok = true;
      } catch (TypeFailure&) {
      }
    }
    const std::string where = f.atom ? print_expr(*f.atom) : print_expr(*m.statement);
    if (ok)
      fail(ErrorKind::WrongCarrierLeak, f.atom ? f.atom->loc : m.loc,
           "statement of '" + m.name + "' in species '" + nf_->name +
               "' needs the definition of the representation: " + f.message,
           {where});
    fail(ErrorKind::TypeMismatch, f.loc, "in statement of '" + m.name + "': " + f.message, {where});
  }
  m.type = t_prop();
  m.carrier_decl = mt.self_touched;
}

void SpeciesTyper::type_proof(NfMethod& m) {
  MethodTyper mt(*this, env_, nf_);
  if (const NfMethod* rep = nf_->rep()) mt.u.set_body_mode(rep->type);
  std::function<void(Proof&)> walk = [&](Proof& p) {
    if (p.kind == Proof::Kind::By) {
      for (const auto& d : p.facts.definitions) {
        const NfMethod* t = nf_->find(d.name);
        if (!t || d.name == "rep")
          fail(ErrorKind::UnknownName, d.loc, "cannot unfold unknown method '" + d.name + "'");
        if (!t->defined() || t->is_logical())
          fail(ErrorKind::InvalidUnfold, d.loc, "'" + d.name + "' has no definition to unfold");
      }
      for (const auto& r : p.facts.properties) {
        const NfMethod* t = nullptr;
        if (!r.qualifier.empty()) {
          if (const InterfaceView* v = nf_->interface_of(r.qualifier)) t = v->find(r.name);
          else if (auto it = env_.collections.find(r.qualifier); it != env_.collections.end())
            t = it->second->find(r.name);
        } else {
          t = nf_->find(r.name);
          if (!t && basics_properties().count(r.name)) continue;
        }
        if (!t || !t->is_logical())
          fail(ErrorKind::UnknownProperty, r.loc, "'" + r.str() + "' is not a known property");
      }
      for (const auto& ty : p.facts.types)
        if (!env_.types.count(ty))
          fail(ErrorKind::UnknownName, p.loc, "unknown type '" + ty + "' in 'by type'");
      return;
    }
    for (auto& s : p.steps) {
      std::size_t pushed = 0;
      for (auto& a : s.assumes) {
        TypePtr t = mt.touch(resolve_type(a.type, env_, nf_));
        for (const auto& n : a.names) {
          mt.push(n, t);
          ++pushed;
        }
      }
      try {
        for (auto& h : s.hypotheses) mt.formula(h.statement);
        if (s.goal) mt.formula(*s.goal);
      } catch (TypeFailure& f) {
        fail(ErrorKind::TypeMismatch, f.loc, "in proof of '" + m.name + "': " + f.message,
             {f.atom ? print_expr(*f.atom) : std::string()});
      }
      walk(s.proof);
      mt.pop(pushed);
    }
  };
  walk(*m.proof);
  if (mt.self_touched) m.carrier_decl = true;
  m.carrier_def = mt.u.rep_used();
}

void SpeciesTyper::type_method(NfMethod& m) {
  if (m.typed) return;
  in_progress_.insert(m.name);
  try {
    switch (m.kind) {
      case MethodKind::Representation: {
        TypeExpr t = *m.declared;
        m.type = resolve_type(t, env_, nf_);
        m.declared = t;
        break;
      }
      case MethodKind::Signature: {
        TypeExpr t = *m.declared;
        TypePtr ty = resolve_type(t, env_, nf_);
        m.declared = t;
        Unifier g;
        ty = g.generalize(ty);
        if (m.inherited_type && !alpha_equal(ty, m.inherited_type))
          fail(ErrorKind::MethodTypeClash, m.loc,
               "'" + m.name + "' is redeclared with type " + show(ty) + " instead of " +
                   show(m.inherited_type));
        m.type = ty;
        m.carrier_decl = mentions_self(ty);
        break;
      }
      case MethodKind::Let:
        type_let(m);
        break;
      case MethodKind::Property:
      case MethodKind::Theorem:
        type_statement(m);
        if (m.kind == MethodKind::Theorem && m.proof) type_proof(m);
        break;
      case MethodKind::ProofOf:
        break;
    }
  } catch (TypeFailure& f) {
    in_progress_.erase(m.name);
    fail(ErrorKind::TypeMismatch, f.loc, "in '" + m.name + "': " + f.message,
         {f.atom ? print_expr(*f.atom) : std::string()});
  }
  in_progress_.erase(m.name);
  m.typed = true;
}

void SpeciesTyper::run() {
  // The representation first: body mode needs it.
  if (NfMethod* rep = nf_->find("rep")) type_method(*rep);
  for (auto& m : nf_->methods) type_method(m);
}

std::optional<CarrierViolation> SpeciesTyper::leak_check(const NfMethod& m) {
  if (!m.statement) return std::nullopt;
  Expr stmt = *m.statement;
  MethodTyper rigid(*this, env_, nf_);
  rigid.u.set_statement_mode();
  try {
    rigid.formula(stmt);
    return std::nullopt;
  } catch (TypeFailure& f) {
    const Expr* atom = f.atom;
    const std::string where = atom ? print_expr(*atom) : print_expr(*m.statement);
    const SourceLoc loc = atom ? atom->loc : m.loc;
    if (const NfMethod* rep = nf_->rep()) {
      Expr copy = *m.statement;
      MethodTyper body(*this, env_, nf_);
      body.u.set_body_mode(rep->type);
      try {
        body.formula(copy);
        return CarrierViolation{m.name, where, loc};
      } catch (TypeFailure&) {
      }
    }
    fail(ErrorKind::TypeMismatch, f.loc, "in statement of '" + m.name + "': " + f.message, {where});
  }
}

}  // namespace

TypePtr type_argument(Expr& e, const Environment& env, const NormalFormSpecies* nf) {
  SpeciesTyper st(nullptr, env);
  MethodTyper mt(st, env, nf);
  mt.allow_self_methods = false;
  try {
    return mt.u.generalize(mt.infer(e));
  } catch (TypeFailure& f) {
    fail(ErrorKind::TypeMismatch, f.loc, f.message, {print_expr(e)});
  }
}

void infer_types(NormalFormSpecies& nf, const Environment& env) {
  SpeciesTyper st(&nf, env);
  st.run();
}

std::optional<CarrierViolation> check_statement_carrier_abstraction(const NfMethod& m,
                                                                     const NormalFormSpecies& nf,
                                                                     const Environment& env) {
  // Method lookups only read already-typed methods.
  SpeciesTyper st(const_cast<NormalFormSpecies*>(&nf), env);
  return st.leak_check(m);
}

}  // namespace focml
