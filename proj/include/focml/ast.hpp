#pragma once

#include <optional>
#include <string>
#include <vector>

#include "focml/diagnostics.hpp"

namespace focml {

// ---------------------------------------------------------------------------
// Surface type expressions. `ref` is filled in by name resolution.
// ---------------------------------------------------------------------------

struct TypeExpr {
  enum class Kind { Named, Self, Arrow, Tuple };
  enum class Ref { Unresolved, Builtin, Union, Param, Collection };

  Kind kind = Kind::Named;
  std::string name;
  Ref ref = Ref::Unresolved;
  // Arrow: [domain, codomain]. Tuple: components.
  std::vector<TypeExpr> args;
  SourceLoc loc;

  static TypeExpr named(std::string n, SourceLoc l = {});
  static TypeExpr self(SourceLoc l = {});
  static TypeExpr arrow(TypeExpr from, TypeExpr to);
  static TypeExpr tuple(std::vector<TypeExpr> parts);
};

bool structurally_equal(const TypeExpr& a, const TypeExpr& b);

// ---------------------------------------------------------------------------
// Expressions and first-order statements share one grammar.
// ---------------------------------------------------------------------------

enum class ExprKind {
  Ident,      // variable, method, entity parameter, builtin or constructor
  Qualified,  // C!m
  Int,
  Bool,
  String,
  App,    // kids = [callee, args...]
  If,     // kids = [cond, then, else]
  Tuple,  // kids = components
  Match,  // kids = [scrutinee, arm bodies...], patterns = arm patterns
  Unary,  // kids = [operand]
  Binary, // kids = [lhs, rhs]
  Quant,  // kids = [body]; binders + binder_type
};

enum class Op {
  // expression level (basics table)
  And,     // &&
  Or,      // ||
  Add,     // +
  Sub,     // -
  Eq,      // =   (polymorphic equality)
  LtInt,   // <0x
  EqInt,   // =0x
  Not,     // ~~
  // formula level
  Implies, // ->
  Iff,     // <->
  Conj,    // /\ (conjunction)
  Disj,    // \/ (disjunction)
  Neg,     // ~
  Forall,  // all
  Exists,  // ex
};

bool is_formula_op(Op op);
const char* op_spelling(Op op);

enum class IdentRef {
  Unresolved,
  Local,        // bound variable (parameter, quantifier, pattern, assumption)
  Method,       // method of Self
  Entity,       // entity parameter of the enclosing species
  Builtin,      // basics table entry (fst, snd)
  Constructor,  // union-type constructor
};

enum class CollRef { Unresolved, Param, Collection };

struct Pattern {
  enum class Kind { Wildcard, Var, Ctor, Tuple };
  Kind kind = Kind::Wildcard;
  std::string name;
  std::vector<Pattern> args;
  SourceLoc loc;
};

struct Expr {
  ExprKind kind = ExprKind::Ident;
  std::string name;       // identifier, method, literal text, constructor
  std::string qualifier;  // Qualified: collection or parameter name
  Op op = Op::And;
  IdentRef ref = IdentRef::Unresolved;
  CollRef coll_ref = CollRef::Unresolved;
  std::vector<Expr> kids;
  std::vector<Pattern> patterns;
  std::vector<std::string> binders;
  std::optional<TypeExpr> binder_type;
  SourceLoc loc;

  static Expr ident(std::string n, SourceLoc l = {});
  static Expr qualified(std::string coll, std::string n, SourceLoc l = {});
  static Expr int_lit(std::string digits, SourceLoc l = {});
  static Expr bool_lit(bool b, SourceLoc l = {});
  static Expr string_lit(std::string s, SourceLoc l = {});
  static Expr app(Expr fn, std::vector<Expr> args, SourceLoc l = {});
  static Expr unary(Op op, Expr e, SourceLoc l = {});
  static Expr binary(Op op, Expr a, Expr b, SourceLoc l = {});
  static Expr tuple(std::vector<Expr> parts, SourceLoc l = {});
  static Expr if_(Expr c, Expr t, Expr e, SourceLoc l = {});
  static Expr quant(Op q, std::vector<std::string> vars, TypeExpr ty, Expr body, SourceLoc l = {});
};

// Equality ignoring source locations and resolution annotations.
bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const Pattern& a, const Pattern& b);

// ---------------------------------------------------------------------------
// Hierarchical proofs.
// ---------------------------------------------------------------------------

struct StepLabel {
  int level = 0;
  int index = 0;
  std::string str() const;
  friend bool operator==(const StepLabel&, const StepLabel&) = default;
};

struct FactRef {
  std::string qualifier;  // empty for Self methods / basics facts
  std::string name;
  SourceLoc loc;
  std::string str() const { return qualifier.empty() ? name : qualifier + "!" + name; }
};

struct Facts {
  std::vector<FactRef> definitions;
  std::vector<FactRef> properties;
  std::vector<StepLabel> steps;
  std::vector<std::string> hypotheses;
  std::vector<std::string> types;
};

struct ProofStep;

struct Proof {
  enum class Kind { Admitted, By, Steps };
  Kind kind = Kind::Admitted;
  Facts facts;
  std::vector<ProofStep> steps;
  SourceLoc loc;
};

struct Assumption {
  std::vector<std::string> names;
  TypeExpr type;
};

struct Hypothesis {
  std::string name;
  Expr statement;
};

struct ProofStep {
  StepLabel label;
  bool qed = false;
  std::vector<Assumption> assumes;
  std::vector<Hypothesis> hypotheses;
  std::optional<Expr> goal;  // absent for qed: the goal is the parent goal
  Proof proof;
  SourceLoc loc;
};

bool structurally_equal(const Proof& a, const Proof& b);

// ---------------------------------------------------------------------------
// Declarations.
// ---------------------------------------------------------------------------

enum class MethodKind { Signature, Let, Representation, Property, Theorem, ProofOf };

const char* to_string(MethodKind k);
bool is_logical(MethodKind k);

struct LetParam {
  std::string name;
  std::optional<TypeExpr> type;
};

struct MethodDecl {
  MethodKind kind = MethodKind::Signature;
  std::string name;
  bool rec = false;
  // Signature type, let result annotation, or representation definition.
  std::optional<TypeExpr> type;
  std::vector<LetParam> params;
  std::optional<Expr> body;       // let body
  std::optional<Expr> statement;  // property / theorem statement
  std::optional<Proof> proof;     // theorem / proof of
  SourceLoc loc;
};

struct SpeciesExpr {
  std::string name;
  std::vector<Expr> args;
  SourceLoc loc;
};

struct SpeciesParam {
  enum class Kind { Collection, Entity };
  Kind kind = Kind::Collection;
  std::string name;
  SpeciesExpr iface;    // Collection: `X is I(args)`
  std::string carrier;  // Entity: `v in X`
  SourceLoc loc;
};

struct SpeciesDecl {
  std::string name;
  std::vector<SpeciesParam> params;
  std::vector<SpeciesExpr> inherits;
  std::vector<MethodDecl> methods;
  SourceLoc loc;
};

struct CollectionDecl {
  std::string name;
  SpeciesExpr implements;
  SourceLoc loc;
};

struct Constructor {
  std::string name;
  std::vector<TypeExpr> args;
};

struct UnionTypeDecl {
  std::string name;
  std::vector<Constructor> ctors;
  SourceLoc loc;
};

struct TopLevelRef {
  enum class Kind { Type, Species, Collection };
  Kind kind;
  std::size_t index;
};

struct CompilationUnit {
  std::vector<UnionTypeDecl> type_decls;
  std::vector<SpeciesDecl> species;
  std::vector<CollectionDecl> collections;
  std::vector<TopLevelRef> order;

  bool empty() const { return order.empty(); }
  // Appends `other` after this unit, preserving source order.
  void append(CompilationUnit other);
};

bool structurally_equal(const CompilationUnit& a, const CompilationUnit& b);

}  // namespace focml
