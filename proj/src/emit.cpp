#include "focml/emit.hpp"

#include <sstream>

namespace focml {

// ---------------------------------------------------------------------------
// Logical target
// ---------------------------------------------------------------------------

namespace {

struct LCtx {
  enum class Mode { Gen, Record, Coll };
  Mode mode = Mode::Gen;
  std::string view_param;  // Self methods belong to this parameter's interface
  const NormalFormSpecies* nf = nullptr;
  std::string host;

  bool is_param(const std::string& n) const { return nf && nf->param(n); }
  std::string self_carrier() const { return mode == Mode::Record ? "rf_T" : "abst_T"; }
  std::string carrier(const std::string& n) const {
    if (!is_param(n)) return n + ".me_as_carrier";
    return mode == Mode::Record ? n + "_T" : "_p_" + n + "_T";
  }
  std::string self_method(const std::string& m) const {
    if (!view_param.empty()) return "_p_" + view_param + "_" + m;
    return mode == Mode::Record ? "rf_" + m : "abst_" + m;
  }
  LCtx view(const std::string& p) const {
    LCtx c = *this;
    c.view_param = p;
    return c;
  }
};

std::string base_type(const std::string& n) { return "basics." + n + "__t"; }

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    if (ch == '\n') {
      out += "\\n";
      continue;
    }
    out += ch;
  }
  return out + "\"";
}

std::string ty(const TypePtr& t, const LCtx& c) {
  switch (t->kind) {
    case Type::Kind::Var: return "'a" + std::to_string(t->var);
    case Type::Kind::Base: return base_type(t->name);
    case Type::Kind::Union: return t->name + "__t";
    case Type::Kind::Self: return c.self_carrier();
    case Type::Kind::Carrier: return c.carrier(t->name);
    case Type::Kind::Prop: return "Prop";
    case Type::Kind::Arrow: {
      std::string lhs = ty(t->args[0], c);
      if (t->args[0]->kind == Type::Kind::Arrow) lhs = "(" + lhs + ")";
      return lhs + " -> " + ty(t->args[1], c);
    }
    case Type::Kind::Tuple: {
      std::string s = "(";
      for (std::size_t i = 0; i < t->args.size(); ++i) s += (i ? " * " : "") + ty(t->args[i], c);
      return s + ")";
    }
  }
  return "?";
}

std::string tyexpr(const TypeExpr& t, const LCtx& c) {
  switch (t.kind) {
    case TypeExpr::Kind::Self: return c.self_carrier();
    case TypeExpr::Kind::Named:
      switch (t.ref) {
        case TypeExpr::Ref::Builtin: return base_type(t.name);
        case TypeExpr::Ref::Union: return t.name + "__t";
        case TypeExpr::Ref::Param:
        case TypeExpr::Ref::Collection: return c.carrier(t.name);
        case TypeExpr::Ref::Unresolved:
          if (t.name == "int" || t.name == "bool" || t.name == "string") return base_type(t.name);
          return c.carrier(t.name);
      }
      return t.name;
    case TypeExpr::Kind::Arrow: {
      std::string lhs = tyexpr(t.args[0], c);
      if (t.args[0].kind == TypeExpr::Kind::Arrow) lhs = "(" + lhs + ")";
      return lhs + " -> " + tyexpr(t.args[1], c);
    }
    case TypeExpr::Kind::Tuple: {
      std::string s = "(";
      for (std::size_t i = 0; i < t.args.size(); ++i) s += (i ? " * " : "") + tyexpr(t.args[i], c);
      return s + ")";
    }
  }
  return "?";
}

enum class Pos { Top, Arg, Infix };

std::string pat(const Pattern& p) {
  switch (p.kind) {
    case Pattern::Kind::Wildcard: return "_";
    case Pattern::Kind::Var: return p.name;
    case Pattern::Kind::Ctor: {
      if (p.args.empty()) return p.name;
      std::string s = "(" + p.name;
      for (const auto& a : p.args) s += " " + pat(a);
      return s + ")";
    }
    case Pattern::Kind::Tuple: {
      std::string s = "(";
      for (std::size_t i = 0; i < p.args.size(); ++i) s += (i ? ", " : "") + pat(p.args[i]);
      return s + ")";
    }
  }
  return "_";
}

std::string ex(const Expr& e, const LCtx& c, Pos p);

std::string prim(const std::string& f, const Expr& a, const Expr& b, const LCtx& c) {
  return "(" + f + " " + ex(a, c, Pos::Arg) + " " + ex(b, c, Pos::Arg) + ")";
}

std::string ex(const Expr& e, const LCtx& c, Pos p) {
  switch (e.kind) {
    case ExprKind::Ident:
      switch (e.ref) {
        case IdentRef::Method: return c.self_method(e.name);
        case IdentRef::Entity: return "_p_" + e.name + "_" + e.name;
        case IdentRef::Builtin: return "basics." + e.name;
        default: return e.name;
      }
    case ExprKind::Qualified:
      if (e.coll_ref == CollRef::Param) return "_p_" + e.qualifier + "_" + e.name;
      return e.qualifier + "." + e.name;
    case ExprKind::Int: return e.name;
    case ExprKind::Bool: return e.name;
    case ExprKind::String: return quote(e.name);
    case ExprKind::App: {
      const Expr& f = e.kids[0];
      if (f.kind == ExprKind::Ident && f.ref == IdentRef::Builtin) {
        std::string s = "basics." + f.name + " _ _";
        for (std::size_t i = 1; i < e.kids.size(); ++i) s += " " + ex(e.kids[i], c, Pos::Arg);
        return p == Pos::Top ? s : "(" + s + ")";
      }
      std::string s = "(" + ex(f, c, Pos::Arg);
      for (std::size_t i = 1; i < e.kids.size(); ++i) s += " " + ex(e.kids[i], c, Pos::Arg);
      return s + ")";
    }
    case ExprKind::If:
      return "(if " + ex(e.kids[0], c, Pos::Top) + " then " + ex(e.kids[1], c, Pos::Top) +
             " else " + ex(e.kids[2], c, Pos::Top) + ")";
    case ExprKind::Tuple: {
      std::string s = "(";
      for (std::size_t i = 0; i < e.kids.size(); ++i) s += (i ? ", " : "") + ex(e.kids[i], c, Pos::Top);
      return s + ")";
    }
    case ExprKind::Match: {
      std::string s = "(match " + ex(e.kids[0], c, Pos::Top) + " with";
      for (std::size_t i = 1; i < e.kids.size(); ++i)
        s += " | " + pat(e.patterns[i - 1]) + " => " + ex(e.kids[i], c, Pos::Top);
      return s + " end)";
    }
    case ExprKind::Unary: {
      std::string s = "basics.not " + ex(e.kids[0], c, Pos::Arg);
      return p == Pos::Arg ? "(" + s + ")" : s;
    }
    case ExprKind::Binary:
      switch (e.op) {
        case Op::And:
        case Op::Or: {
          std::string s = ex(e.kids[0], c, Pos::Infix) + (e.op == Op::And ? " && " : " || ") +
                          ex(e.kids[1], c, Pos::Infix);
          return p == Pos::Top ? s : "(" + s + ")";
        }
        case Op::Eq: return "(basics._equal_ _ " + ex(e.kids[0], c, Pos::Arg) + " " + ex(e.kids[1], c, Pos::Arg) + ")";
        case Op::LtInt: return prim("basics._lt_0x", e.kids[0], e.kids[1], c);
        case Op::EqInt: return prim("basics._equal_0x", e.kids[0], e.kids[1], c);
        case Op::Add: return prim("basics._plus_", e.kids[0], e.kids[1], c);
        case Op::Sub: return prim("basics._dash_", e.kids[0], e.kids[1], c);
        default: break;
      }
      break;
    case ExprKind::Quant: break;
  }
  return "?";
}

bool compound_formula(const Expr& e) {
  return (e.kind == ExprKind::Binary && is_formula_op(e.op)) || e.kind == ExprKind::Quant;
}

std::string fm(const Expr& e, const LCtx& c) {
  if (e.kind == ExprKind::Quant) {
    std::string s = e.op == Op::Exists ? "exists" : "forall";
    for (const auto& b : e.binders) s += " " + b;
    return s + " : " + tyexpr(*e.binder_type, c) + ", " + fm(e.kids[0], c);
  }
  if (e.kind == ExprKind::Unary && e.op == Op::Neg) {
    const Expr& k = e.kids[0];
    return "~" + (compound_formula(k) ? "(" + fm(k, c) + ")" : fm(k, c));
  }
  if (e.kind == ExprKind::Binary && is_formula_op(e.op)) {
    const char* sym = e.op == Op::Implies ? " -> " : e.op == Op::Iff ? " <-> " : e.op == Op::Conj ? " /\\ " : " \\/ ";
    const Expr& l = e.kids[0];
    const Expr& r = e.kids[1];
    std::string ls = compound_formula(l) ? "(" + fm(l, c) + ")" : fm(l, c);
    bool wrap_r = r.kind == ExprKind::Binary && is_formula_op(r.op) &&
                  !(e.op == Op::Implies && r.op == Op::Implies);
    std::string rs = wrap_r ? "(" + fm(r, c) + ")" : fm(r, c);
    return ls + sym + rs;
  }
  if (c.mode == LCtx::Mode::Record) return "Is_true " + ex(e, c, Pos::Arg);
  return "Is_true (" + ex(e, c, Pos::Top) + ")";
}

std::string term(const Term& t, const LCtx& c) {
  if (!t.module.empty()) return t.module + "." + t.name;
  if (t.expr) return ex(*t.expr, c, Pos::Arg);
  return t.name;
}

std::string lift(const Lift& l, const LCtx& c) {
  switch (l.kind) {
    case Lift::Kind::ParamCarrier: return "(" + l.name() + " : Set)";
    case Lift::Kind::ParamMethod:
      return "(" + l.name() + " : " + (l.logical ? fm(*l.statement, c.view(l.param)) : ty(l.type, c)) + ")";
    case Lift::Kind::Entity: return "(" + l.name() + " : " + ty(l.type, c) + ")";
    case Lift::Kind::SelfCarrier:
      return l.bound ? "(abst_T := " + ty(l.type, c) + ")" : "(abst_T : Set)";
    case Lift::Kind::SelfMethod: {
      if (!l.bound)
        return "(" + l.name() + " : " + (l.logical ? fm(*l.statement, c) : ty(l.type, c)) + ")";
      std::string s = "(" + l.name() + " := " +
                      (l.gen_species == c.host ? "" : l.gen_species + ".") + l.method;
      for (const auto& a : l.gen_args) s += " " + term(a, c);
      return s + ")";
    }
  }
  return "";
}

std::string indent(const std::string& text, const std::string& pad) {
  std::string out;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!first) out += "\n";
    first = false;
    out += line.empty() ? line : pad + line;
  }
  return out;
}

std::string generator(const MethodPlan& mp, const LCtx& c) {
  const NfMethod& m = mp.method;
  std::string lifts;
  for (const auto& l : mp.lifts) lifts += " " + lift(l, c);
  if (m.kind == MethodKind::Let) {
    std::vector<TypePtr> doms;
    TypePtr res;
    split_arrows(m.type, m.params.size(), doms, res);
    std::string s = "Definition " + m.name + lifts;
    for (std::size_t i = 0; i < m.params.size(); ++i)
      s += " (" + m.params[i].name + " : " + ty(doms[i], c) + ")";
    return s + " : " + ty(res, c) + " :=\n  " + ex(*m.body, c, Pos::Top) + ".";
  }
  const std::string head = m.admitted ? "Axiom " : "Theorem ";
  std::string s = head + m.name + lifts + " :\n  " + fm(*m.statement, c) + ".";
  if (!m.admitted) s += "\napply PROOF_HOLE_" + mp.species + "_" + m.name + ".";
  return s;
}

std::string record(const SpeciesPlan& p, const LCtx& c) {
  std::string s = "Record me_as_species";
  for (const auto& l : p.record_params) {
    switch (l.kind) {
      case Lift::Kind::ParamCarrier: s += " (" + l.param + "_T : Set)"; break;
      case Lift::Kind::ParamMethod:
        s += " (" + l.name() + " : " + (l.logical ? fm(*l.statement, c.view(l.param)) : ty(l.type, c)) + ")";
        break;
      default: s += " (" + l.name() + " : " + ty(l.type, c) + ")";
    }
  }
  s += p.record_params.empty() ? " :=" : " : Type :=";
  s += "\n  mk_record {\n  rf_T : Set";
  for (const auto& f : p.fields)
    s += " ;\n  rf_" + f.method + " : " + (f.logical ? fm(*f.statement, c) : ty(f.type, c));
  return s + "\n  }.";
}

std::string collection_create(const SpeciesPlan& p, const LCtx& c) {
  std::string s = "Definition collection_create";
  for (const auto& l : p.create_params)
    s += l.kind == Lift::Kind::ParamCarrier ? " (" + l.name() + " : Set)" : " " + l.name();
  s += " :=";
  for (const auto& l : p.locals) {
    s += "\n  let local_" + l.method + " := ";
    if (l.method == kRep) {
      s += ty(l.rep, c);
    } else {
      s += (l.gen_species == p.species ? "" : l.gen_species + ".") + l.method;
      for (const auto& a : l.args) s += " " + term(a, c);
    }
    s += " in";
  }
  s += "\n  mk_record";
  for (const auto& l : p.record_params)
    s += l.kind == Lift::Kind::ParamCarrier ? " (" + l.name() + " : Set)" : " " + l.name();
  for (const auto& l : p.locals) s += " local_" + l.method;
  return s + ".";
}

}  // namespace

std::string logical_type_name(const TypePtr& t) { return ty(t, LCtx{}); }

std::string LogicalBlock::text() const {
  if (!module) return items.empty() ? "" : items[0].text + "\n";
  std::string s = "Module " + name + ".\n";
  for (const auto& it : items) s += indent(it.text, "  ") + "\n";
  return s + "End " + name + ".\n";
}

LogicalBlock logical_type(const UnionTypeDecl& t, const Environment& env) {
  (void)env;
  LogicalBlock b;
  b.name = t.name;
  b.module = false;
  std::string s = "Inductive " + t.name + "__t : Set :=";
  LCtx c;
  for (const auto& k : t.ctors) {
    s += "\n  | " + k.name + " : ";
    for (const auto& a : k.args) s += tyexpr(a, c) + " -> ";
    s += t.name + "__t";
  }
  b.items.push_back({t.name, s + "."});
  return b;
}

LogicalBlock logical_species(const NormalFormSpecies& nf, const SpeciesPlan& plan,
                             const Environment& env) {
  (void)env;
  LogicalBlock b;
  b.name = nf.name;
  LCtx gen;
  gen.nf = &nf;
  gen.host = nf.name;
  LCtx rec = gen;
  rec.mode = LCtx::Mode::Record;
  if (plan.complete) b.items.push_back({"me_as_species", record(plan, rec)});
  for (const auto& mp : plan.methods) b.items.push_back({mp.method.name, generator(mp, gen)});
  if (plan.complete) b.items.push_back({"collection_create", collection_create(plan, gen)});
  return b;
}

LogicalBlock logical_collection(const CollectionModel& c, const CollectionPlan& plan,
                                const Environment& env) {
  (void)env;
  LogicalBlock b;
  b.name = c.name;
  LCtx ctx;
  ctx.mode = LCtx::Mode::Coll;
  std::string eff = "Let effective_collection := " + plan.species + ".collection_create";
  for (const auto& a : plan.args) eff += " " + term(a, ctx);
  b.items.push_back({"effective_collection", eff + "."});
  b.items.push_back({"me_as_carrier", "Definition me_as_carrier := " + ty(plan.carrier, ctx) + "."});
  std::string holes;
  for (std::size_t i = 0; i < plan.record_arity; ++i) holes += " _";
  for (const auto& m : plan.methods)
    b.items.push_back({m, "Definition " + m + " := effective_collection.(" + plan.species + ".rf_" + m +
                              holes + ")."});
  return b;
}

// ---------------------------------------------------------------------------
// Computational target
// ---------------------------------------------------------------------------

CExpr CExpr::var(std::string n) {
  CExpr e;
  e.kind = Kind::Var;
  e.name = std::move(n);
  return e;
}

CExpr CExpr::global(std::string m, std::string n) {
  CExpr e;
  e.kind = Kind::Global;
  e.module = std::move(m);
  e.name = std::move(n);
  return e;
}

CExpr CExpr::app(CExpr fn, std::vector<CExpr> args) {
  if (args.empty()) return fn;
  CExpr e;
  e.kind = Kind::App;
  e.kids.push_back(std::move(fn));
  for (auto& a : args) e.kids.push_back(std::move(a));
  return e;
}

const CDef* CModule::find(const std::string& n) const {
  for (const auto& d : defs)
    if (d.name == n) return &d;
  return nullptr;
}

namespace {

CExpr basics(const std::string& f, std::vector<CExpr> args) {
  return CExpr::app(CExpr::global("basics", f), std::move(args));
}

CExpr translate(const Expr& e) {
  CExpr out;
  switch (e.kind) {
    case ExprKind::Ident:
      switch (e.ref) {
        case IdentRef::Method: return CExpr::var("abst_" + e.name);
        case IdentRef::Entity: return CExpr::var("_p_" + e.name + "_" + e.name);
        case IdentRef::Builtin: return CExpr::global("basics", e.name);
        case IdentRef::Constructor:
          out.kind = CExpr::Kind::Ctor;
          out.name = e.name;
          return out;
        default: return CExpr::var(e.name);
      }
    case ExprKind::Qualified:
      if (e.coll_ref == CollRef::Param) return CExpr::var("_p_" + e.qualifier + "_" + e.name);
      return CExpr::global(e.qualifier, e.name);
    case ExprKind::Int:
      out.kind = CExpr::Kind::Int;
      out.text = e.name;
      return out;
    case ExprKind::Bool:
      out.kind = CExpr::Kind::Bool;
      out.flag = e.name == "true";
      return out;
    case ExprKind::String:
      out.kind = CExpr::Kind::Str;
      out.text = e.name;
      return out;
    case ExprKind::App: {
      const Expr& f = e.kids[0];
      std::vector<CExpr> args;
      for (std::size_t i = 1; i < e.kids.size(); ++i) args.push_back(translate(e.kids[i]));
      if (f.kind == ExprKind::Ident && f.ref == IdentRef::Constructor) {
        out.kind = CExpr::Kind::Ctor;
        out.name = f.name;
        out.kids = std::move(args);
        return out;
      }
      return CExpr::app(translate(f), std::move(args));
    }
    case ExprKind::If:
      out.kind = CExpr::Kind::If;
      for (const auto& k : e.kids) out.kids.push_back(translate(k));
      return out;
    case ExprKind::Tuple:
      out.kind = CExpr::Kind::Tuple;
      for (const auto& k : e.kids) out.kids.push_back(translate(k));
      return out;
    case ExprKind::Match:
      out.kind = CExpr::Kind::Match;
      for (const auto& k : e.kids) out.kids.push_back(translate(k));
      out.patterns = e.patterns;
      return out;
    case ExprKind::Unary: return basics("not", {translate(e.kids[0])});
    case ExprKind::Binary: {
      CExpr a = translate(e.kids[0]);
      CExpr b = translate(e.kids[1]);
      switch (e.op) {
        case Op::And:
        case Op::Or:
          out.kind = e.op == Op::And ? CExpr::Kind::And : CExpr::Kind::Or;
          out.kids = {std::move(a), std::move(b)};
          return out;
        case Op::Eq: return basics("_equal_", {std::move(a), std::move(b)});
        case Op::LtInt: return basics("_lt_0x", {std::move(a), std::move(b)});
        case Op::EqInt: return basics("_equal_0x", {std::move(a), std::move(b)});
        case Op::Add: return basics("_plus_", {std::move(a), std::move(b)});
        case Op::Sub: return basics("_dash_", {std::move(a), std::move(b)});
        default: break;
      }
      break;
    }
    case ExprKind::Quant: break;
  }
  return CExpr::var("?");
}

CExpr term_expr(const Term& t) {
  if (!t.module.empty()) return CExpr::global(t.module, t.name);
  if (t.expr) return translate(*t.expr);
  return CExpr::var(t.name);
}

std::vector<CExpr> kept_args(const std::vector<Term>& ts) {
  std::vector<CExpr> out;
  for (const auto& t : ts)
    if (!t.carrier && !t.logical) out.push_back(term_expr(t));
  return out;
}

}  // namespace

CModule comp_type(const UnionTypeDecl& t, const Environment& env) {
  (void)env;
  CModule m;
  m.kind = CModule::Kind::Type;
  m.name = t.name;
  LCtx c;
  for (const auto& k : t.ctors) {
    m.ctors.push_back({k.name, k.args.size()});
    std::string args;
    for (std::size_t i = 0; i < k.args.size(); ++i) args += (i ? " * " : "") + tyexpr(k.args[i], c);
    m.ctor_types.push_back(args);
  }
  return m;
}

CModule comp_species(const NormalFormSpecies& nf, const SpeciesPlan& plan) {
  CModule mod;
  mod.kind = CModule::Kind::Species;
  mod.name = nf.name;
  for (const auto& mp : plan.methods) {
    if (mp.method.kind != MethodKind::Let) continue;
    CDef d;
    d.name = mp.method.name;
    std::vector<const Lift*> bindings;
    for (const auto& l : mp.lifts) {
      if (l.erased()) continue;
      if (l.bound) bindings.push_back(&l);
      else d.params.push_back(l.name());
    }
    for (const auto& p : mp.method.params) d.params.push_back(p.name);
    d.body = translate(*mp.method.body);
    for (auto it = bindings.rbegin(); it != bindings.rend(); ++it) {
      const Lift& l = **it;
      CExpr let;
      let.kind = CExpr::Kind::Let;
      let.name = l.name();
      let.kids.push_back(CExpr::app(CExpr::global(l.gen_species, l.method), kept_args(l.gen_args)));
      let.kids.push_back(std::move(d.body));
      d.body = std::move(let);
    }
    mod.defs.push_back(std::move(d));
  }
  if (!plan.complete) return mod;
  CDef create;
  create.name = "collection_create";
  for (const auto& l : plan.create_params)
    if (!l.erased()) create.params.push_back(l.name());
  CExpr rec;
  rec.kind = CExpr::Kind::Record;
  for (const auto& l : plan.locals) {
    if (l.method == kRep || l.logical) continue;
    rec.fields.push_back("rf_" + l.method);
    rec.kids.push_back(CExpr::var("local_" + l.method));
  }
  CExpr body = std::move(rec);
  for (auto it = plan.locals.rbegin(); it != plan.locals.rend(); ++it) {
    if (it->method == kRep || it->logical) continue;
    CExpr let;
    let.kind = CExpr::Kind::Let;
    let.name = "local_" + it->method;
    let.kids.push_back(CExpr::app(CExpr::global(it->gen_species, it->method), kept_args(it->args)));
    let.kids.push_back(std::move(body));
    body = std::move(let);
  }
  create.body = std::move(body);
  mod.defs.push_back(std::move(create));
  return mod;
}

CModule comp_collection(const CollectionModel& c, const CollectionPlan& plan) {
  CModule mod;
  mod.kind = CModule::Kind::Collection;
  mod.name = c.name;
  CDef eff;
  eff.name = "effective_collection";
  eff.body = CExpr::app(CExpr::global(plan.species, "collection_create"), kept_args(plan.args));
  mod.defs.push_back(std::move(eff));
  for (std::size_t i = 0; i < plan.methods.size(); ++i) {
    if (plan.logical[i]) continue;
    CDef d;
    d.name = plan.methods[i];
    CExpr f;
    f.kind = CExpr::Kind::Field;
    f.module = plan.species;
    f.name = "rf_" + plan.methods[i];
    f.kids.push_back(CExpr::global(c.name, "effective_collection"));
    d.body = std::move(f);
    mod.defs.push_back(std::move(d));
  }
  return mod;
}

namespace {

std::string cpat(const Pattern& p) {
  switch (p.kind) {
    case Pattern::Kind::Wildcard: return "_";
    case Pattern::Kind::Var: return p.name;
    case Pattern::Kind::Ctor: {
      if (p.args.empty()) return p.name;
      if (p.args.size() == 1) return "(" + p.name + " " + cpat(p.args[0]) + ")";
      std::string s = "(" + p.name + " (";
      for (std::size_t i = 0; i < p.args.size(); ++i) s += (i ? ", " : "") + cpat(p.args[i]);
      return s + "))";
    }
    case Pattern::Kind::Tuple: {
      std::string s = "(";
      for (std::size_t i = 0; i < p.args.size(); ++i) s += (i ? ", " : "") + cpat(p.args[i]);
      return s + ")";
    }
  }
  return "_";
}

}  // namespace

std::string render_comp(const CExpr& e, const std::string& cur) {
  auto r = [&](const CExpr& k) { return render_comp(k, cur); };
  switch (e.kind) {
    case CExpr::Kind::Var: return e.name;
    case CExpr::Kind::Global: return e.module == cur ? e.name : e.module + "." + e.name;
    case CExpr::Kind::Int: return e.text;
    case CExpr::Kind::Bool: return e.flag ? "true" : "false";
    case CExpr::Kind::Str: return quote(e.text);
    case CExpr::Kind::App: {
      std::string s = "(";
      for (std::size_t i = 0; i < e.kids.size(); ++i) s += (i ? " " : "") + r(e.kids[i]);
      return s + ")";
    }
    case CExpr::Kind::And: return "(" + r(e.kids[0]) + " && " + r(e.kids[1]) + ")";
    case CExpr::Kind::Or: return "(" + r(e.kids[0]) + " || " + r(e.kids[1]) + ")";
    case CExpr::Kind::If:
      return "(if " + r(e.kids[0]) + " then " + r(e.kids[1]) + " else " + r(e.kids[2]) + ")";
    case CExpr::Kind::Tuple: {
      std::string s = "(";
      for (std::size_t i = 0; i < e.kids.size(); ++i) s += (i ? ", " : "") + r(e.kids[i]);
      return s + ")";
    }
    case CExpr::Kind::Ctor: {
      if (e.kids.empty()) return e.name;
      if (e.kids.size() == 1) return "(" + e.name + " " + r(e.kids[0]) + ")";
      std::string s = "(" + e.name + " (";
      for (std::size_t i = 0; i < e.kids.size(); ++i) s += (i ? ", " : "") + r(e.kids[i]);
      return s + "))";
    }
    case CExpr::Kind::Match: {
      std::string s = "(match " + r(e.kids[0]) + " with";
      for (std::size_t i = 1; i < e.kids.size(); ++i)
        s += " | " + cpat(e.patterns[i - 1]) + " -> " + r(e.kids[i]);
      return s + ")";
    }
    case CExpr::Kind::Let:
      return "let " + e.name + " = " + r(e.kids[0]) + " in\n" + r(e.kids[1]);
    case CExpr::Kind::Record: {
      std::string s = "{";
      for (std::size_t i = 0; i < e.kids.size(); ++i)
        s += (i ? "; " : " ") + e.fields[i] + " = " + r(e.kids[i]);
      return s + " }";
    }
    case CExpr::Kind::Field:
      return r(e.kids[0]) + "." + (e.module == cur ? "" : e.module + ".") + e.name;
  }
  return "?";
}

std::string render_comp(const CModule& m) {
  if (m.kind == CModule::Kind::Type) {
    std::string s = "type " + m.name + "__t =";
    for (std::size_t i = 0; i < m.ctors.size(); ++i) {
      s += "\n  | " + m.ctors[i].name;
      if (m.ctors[i].arity) s += " of " + m.ctor_types[i];
    }
    return s + "\n";
  }
  std::string s = "module " + m.name + " = struct\n";
  for (const auto& d : m.defs) {
    std::string head = "let " + d.name;
    for (const auto& p : d.params) head += " " + p;
    s += indent(head + " =\n  " + indent(render_comp(d.body, m.name), "  ").substr(2), "  ") + "\n";
  }
  return s + "end\n";
}

}  // namespace focml
