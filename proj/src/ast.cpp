#include "focml/ast.hpp"

#include <algorithm>

namespace focml {

TypeExpr TypeExpr::named(std::string n, SourceLoc l) {
  TypeExpr t;
  t.kind = Kind::Named;
  t.name = std::move(n);
  t.loc = std::move(l);
  return t;
}

TypeExpr TypeExpr::self(SourceLoc l) {
  TypeExpr t;
  t.kind = Kind::Self;
  t.name = "Self";
  t.loc = std::move(l);
  return t;
}

TypeExpr TypeExpr::arrow(TypeExpr from, TypeExpr to) {
  TypeExpr t;
  t.kind = Kind::Arrow;
  t.loc = from.loc;
  t.args.push_back(std::move(from));
  t.args.push_back(std::move(to));
  return t;
}

TypeExpr TypeExpr::tuple(std::vector<TypeExpr> parts) {
  TypeExpr t;
  t.kind = Kind::Tuple;
  if (!parts.empty()) t.loc = parts.front().loc;
  t.args = std::move(parts);
  return t;
}

namespace {

template <class T>
bool all_equal(const std::vector<T>& a, const std::vector<T>& b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(),
                    [](const T& x, const T& y) { return structurally_equal(x, y); });
}

}  // namespace

bool structurally_equal(const TypeExpr& a, const TypeExpr& b) {
  return a.kind == b.kind && a.name == b.name && all_equal(a.args, b.args);
}

bool is_formula_op(Op op) {
  switch (op) {
    case Op::Implies:
    case Op::Iff:
    case Op::Conj:
    case Op::Disj:
    case Op::Neg:
    case Op::Forall:
    case Op::Exists:
      return true;
    default:
      return false;
  }
}

const char* op_spelling(Op op) {
  switch (op) {
    case Op::And: return "&&";
    case Op::Or: return "||";
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Eq: return "=";
    case Op::LtInt: return "<0x";
    case Op::EqInt: return "=0x";
    case Op::Not: return "~~";
    case Op::Implies: return "->";
    case Op::Iff: return "<->";
    case Op::Conj: return "/\\";
    case Op::Disj: return "\\/";
    case Op::Neg: return "~";
    case Op::Forall: return "all";
    case Op::Exists: return "ex";
  }
  return "?";
}

Expr Expr::ident(std::string n, SourceLoc l) {
  Expr e;
  e.kind = ExprKind::Ident;
  e.name = std::move(n);
  e.loc = std::move(l);
  return e;
}

Expr Expr::qualified(std::string coll, std::string n, SourceLoc l) {
  Expr e;
  e.kind = ExprKind::Qualified;
  e.qualifier = std::move(coll);
  e.name = std::move(n);
  e.loc = std::move(l);
  return e;
}

Expr Expr::int_lit(std::string digits, SourceLoc l) {
  Expr e;
  e.kind = ExprKind::Int;
  e.name = std::move(digits);
  e.loc = std::move(l);
  return e;
}

Expr Expr::bool_lit(bool b, SourceLoc l) {
  Expr e;
  e.kind = ExprKind::Bool;
  e.name = b ? "true" : "false";
  e.loc = std::move(l);
  return e;
}

Expr Expr::string_lit(std::string s, SourceLoc l) {
  Expr e;
  e.kind = ExprKind::String;
  e.name = std::move(s);
  e.loc = std::move(l);
  return e;
}

Expr Expr::app(Expr fn, std::vector<Expr> args, SourceLoc l) {
  Expr e;
  e.kind = ExprKind::App;
  e.loc = std::move(l);
  e.kids.reserve(args.size() + 1);
  e.kids.push_back(std::move(fn));
  for (auto& a : args) e.kids.push_back(std::move(a));
  return e;
}

Expr Expr::unary(Op op, Expr x, SourceLoc l) {
  Expr e;
  e.kind = ExprKind::Unary;
  e.op = op;
  e.loc = std::move(l);
  e.kids.push_back(std::move(x));
  return e;
}

Expr Expr::binary(Op op, Expr a, Expr b, SourceLoc l) {
  Expr e;
  e.kind = ExprKind::Binary;
  e.op = op;
  e.loc = std::move(l);
  e.kids.push_back(std::move(a));
  e.kids.push_back(std::move(b));
  return e;
}

Expr Expr::tuple(std::vector<Expr> parts, SourceLoc l) {
  Expr e;
  e.kind = ExprKind::Tuple;
  e.loc = std::move(l);
  e.kids = std::move(parts);
  return e;
}

Expr Expr::if_(Expr c, Expr t, Expr f, SourceLoc l) {
  Expr e;
  e.kind = ExprKind::If;
  e.loc = std::move(l);
  e.kids.push_back(std::move(c));
  e.kids.push_back(std::move(t));
  e.kids.push_back(std::move(f));
  return e;
}

Expr Expr::quant(Op q, std::vector<std::string> vars, TypeExpr ty, Expr body, SourceLoc l) {
  Expr e;
  e.kind = ExprKind::Quant;
  e.op = q;
  e.binders = std::move(vars);
  e.binder_type = std::move(ty);
  e.loc = std::move(l);
  e.kids.push_back(std::move(body));
  return e;
}

bool structurally_equal(const Pattern& a, const Pattern& b) {
  return a.kind == b.kind && a.name == b.name && all_equal(a.args, b.args);
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.name != b.name || a.qualifier != b.qualifier) return false;
  if ((a.kind == ExprKind::Unary || a.kind == ExprKind::Binary || a.kind == ExprKind::Quant) &&
      a.op != b.op)
    return false;
  if (a.binders != b.binders) return false;
  if (a.binder_type.has_value() != b.binder_type.has_value()) return false;
  if (a.binder_type && !structurally_equal(*a.binder_type, *b.binder_type)) return false;
  return all_equal(a.kids, b.kids) && all_equal(a.patterns, b.patterns);
}

std::string StepLabel::str() const {
  return "<" + std::to_string(level) + ">" + std::to_string(index);
}

namespace {

bool equal_refs(const std::vector<FactRef>& a, const std::vector<FactRef>& b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](const FactRef& x, const FactRef& y) {
           return x.qualifier == y.qualifier && x.name == y.name;
         });
}

bool equal_facts(const Facts& a, const Facts& b) {
  return equal_refs(a.definitions, b.definitions) && equal_refs(a.properties, b.properties) &&
         a.steps == b.steps && a.hypotheses == b.hypotheses && a.types == b.types;
}

bool equal_steps(const ProofStep& a, const ProofStep& b) {
  if (!(a.label == b.label) || a.qed != b.qed) return false;
  if (a.assumes.size() != b.assumes.size() || a.hypotheses.size() != b.hypotheses.size())
    return false;
  for (std::size_t i = 0; i < a.assumes.size(); ++i) {
    if (a.assumes[i].names != b.assumes[i].names ||
        !structurally_equal(a.assumes[i].type, b.assumes[i].type))
      return false;
  }
  for (std::size_t i = 0; i < a.hypotheses.size(); ++i) {
    if (a.hypotheses[i].name != b.hypotheses[i].name ||
        !structurally_equal(a.hypotheses[i].statement, b.hypotheses[i].statement))
      return false;
  }
  if (a.goal.has_value() != b.goal.has_value()) return false;
  if (a.goal && !structurally_equal(*a.goal, *b.goal)) return false;
  return structurally_equal(a.proof, b.proof);
}

}  // namespace

bool structurally_equal(const Proof& a, const Proof& b) {
  if (a.kind != b.kind || !equal_facts(a.facts, b.facts)) return false;
  if (a.steps.size() != b.steps.size()) return false;
  for (std::size_t i = 0; i < a.steps.size(); ++i)
    if (!equal_steps(a.steps[i], b.steps[i])) return false;
  return true;
}

const char* to_string(MethodKind k) {
  switch (k) {
    case MethodKind::Signature: return "signature";
    case MethodKind::Let: return "let";
    case MethodKind::Representation: return "representation";
    case MethodKind::Property: return "property";
    case MethodKind::Theorem: return "theorem";
    case MethodKind::ProofOf: return "proof-of";
  }
  return "?";
}

bool is_logical(MethodKind k) {
  return k == MethodKind::Property || k == MethodKind::Theorem || k == MethodKind::ProofOf;
}

void CompilationUnit::append(CompilationUnit other) {
  const auto type_base = type_decls.size();
  const auto species_base = species.size();
  const auto coll_base = collections.size();
  for (auto& t : other.type_decls) type_decls.push_back(std::move(t));
  for (auto& s : other.species) species.push_back(std::move(s));
  for (auto& c : other.collections) collections.push_back(std::move(c));
  for (auto ref : other.order) {
    switch (ref.kind) {
      case TopLevelRef::Kind::Type: ref.index += type_base; break;
      case TopLevelRef::Kind::Species: ref.index += species_base; break;
      case TopLevelRef::Kind::Collection: ref.index += coll_base; break;
    }
    order.push_back(ref);
  }
}

namespace {

bool equal_species_expr(const SpeciesExpr& a, const SpeciesExpr& b) {
  return a.name == b.name && all_equal(a.args, b.args);
}

bool equal_method(const MethodDecl& a, const MethodDecl& b) {
  if (a.kind != b.kind || a.name != b.name || a.rec != b.rec) return false;
  if (a.type.has_value() != b.type.has_value()) return false;
  if (a.type && !structurally_equal(*a.type, *b.type)) return false;
  if (a.params.size() != b.params.size()) return false;
  for (std::size_t i = 0; i < a.params.size(); ++i) {
    const auto& p = a.params[i];
    const auto& q = b.params[i];
    if (p.name != q.name || p.type.has_value() != q.type.has_value()) return false;
    if (p.type && !structurally_equal(*p.type, *q.type)) return false;
  }
  if (a.body.has_value() != b.body.has_value()) return false;
  if (a.body && !structurally_equal(*a.body, *b.body)) return false;
  if (a.statement.has_value() != b.statement.has_value()) return false;
  if (a.statement && !structurally_equal(*a.statement, *b.statement)) return false;
  if (a.proof.has_value() != b.proof.has_value()) return false;
  if (a.proof && !structurally_equal(*a.proof, *b.proof)) return false;
  return true;
}

}  // namespace

bool structurally_equal(const CompilationUnit& a, const CompilationUnit& b) {
  if (a.order.size() != b.order.size()) return false;
  for (std::size_t i = 0; i < a.order.size(); ++i) {
    if (a.order[i].kind != b.order[i].kind || a.order[i].index != b.order[i].index) return false;
  }
  if (a.type_decls.size() != b.type_decls.size() || a.species.size() != b.species.size() ||
      a.collections.size() != b.collections.size())
    return false;
  for (std::size_t i = 0; i < a.type_decls.size(); ++i) {
    const auto& x = a.type_decls[i];
    const auto& y = b.type_decls[i];
    if (x.name != y.name || x.ctors.size() != y.ctors.size()) return false;
    for (std::size_t k = 0; k < x.ctors.size(); ++k) {
      if (x.ctors[k].name != y.ctors[k].name || !all_equal(x.ctors[k].args, y.ctors[k].args))
        return false;
    }
  }
  for (std::size_t i = 0; i < a.species.size(); ++i) {
    const auto& x = a.species[i];
    const auto& y = b.species[i];
    if (x.name != y.name || x.params.size() != y.params.size() ||
        x.inherits.size() != y.inherits.size() || x.methods.size() != y.methods.size())
      return false;
    for (std::size_t k = 0; k < x.params.size(); ++k) {
      const auto& p = x.params[k];
      const auto& q = y.params[k];
      if (p.kind != q.kind || p.name != q.name || p.carrier != q.carrier) return false;
      if (p.kind == SpeciesParam::Kind::Collection && !equal_species_expr(p.iface, q.iface))
        return false;
    }
    for (std::size_t k = 0; k < x.inherits.size(); ++k)
      if (!equal_species_expr(x.inherits[k], y.inherits[k])) return false;
    for (std::size_t k = 0; k < x.methods.size(); ++k)
      if (!equal_method(x.methods[k], y.methods[k])) return false;
  }
  for (std::size_t i = 0; i < a.collections.size(); ++i) {
    if (a.collections[i].name != b.collections[i].name ||
        !equal_species_expr(a.collections[i].implements, b.collections[i].implements))
      return false;
  }
  return true;
}

}  // namespace focml
