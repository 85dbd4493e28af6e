#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "focml/ast.hpp"
#include "focml/diagnostics.hpp"
#include "focml/subst.hpp"
#include "focml/types.hpp"

namespace focml {

// One method of a flattened species, in its most recent version.
struct NfMethod {
  std::string name;
  // Signature means declared only. A theorem whose proof was reverted keeps
  // kind Theorem with valid_proof == false.
  MethodKind kind = MethodKind::Signature;
  std::string origin;  // species holding the current version
  int stamp = 0;       // merge step that produced the current version
  bool rec = false;

  // Syntax, as seen from the flattened species.
  std::optional<TypeExpr> declared;  // signature / representation
  std::vector<LetParam> params;
  std::optional<TypeExpr> result;
  std::optional<Expr> body;
  std::optional<Expr> statement;
  std::optional<Proof> proof;
  // Origin parameters -> terms of the flattened species.
  Instantiation inst;

  bool valid_proof = true;
  bool admitted = false;

  // Filled by typing.
  TypePtr type;                // generalized function type, or Prop
  TypePtr inherited_type;      // type of the version this one replaced
  bool typed = false;
  bool carrier_decl = false;
  bool carrier_def = false;

  // `by definition of` targets of the proof, fixed at the origin.
  std::vector<std::string> unfolds;
  SourceLoc loc;

  bool is_logical() const { return kind == MethodKind::Property || kind == MethodKind::Theorem; }
  bool is_function() const { return kind == MethodKind::Signature || kind == MethodKind::Let; }
  bool defined() const {
    if (kind == MethodKind::Theorem) return valid_proof;
    return kind == MethodKind::Let || kind == MethodKind::Representation;
  }
};

// A collection parameter seen through its interface: the methods of the
// interface species with its own parameters instantiated and Self replaced
// by the parameter's carrier.
struct InterfaceView {
  std::string param;
  std::string species;
  Instantiation inst;           // interface species params -> our terms
  std::vector<NfMethod> methods;  // no representation
  std::vector<std::string> order; // the interface species' global order

  const NfMethod* find(const std::string& name) const;
};

struct NormalFormSpecies {
  std::string name;
  std::vector<SpeciesParam> params;
  std::vector<NfMethod> methods;  // merge order; "rep" when defined
  std::vector<InterfaceView> interfaces;  // one per collection parameter
  std::vector<Diagnostic> warnings;       // reverted proofs, admitted
  SourceLoc loc;

  const NfMethod* find(const std::string& name) const;
  NfMethod* find(const std::string& name);
  const NfMethod* rep() const { return find("rep"); }
  const InterfaceView* interface_of(const std::string& param) const;
  const SpeciesParam* param(const std::string& name) const;
};

struct CollectionModel {
  std::string name;
  std::string species;
  std::vector<Expr> args;  // effective arguments, type-annotated
  Instantiation inst;      // species params -> effective arguments
  std::vector<NfMethod> interface;  // Self abstract (carrier of the collection)
  std::vector<std::string> admitted;
  SourceLoc loc;

  const NfMethod* find(const std::string& name) const;
};

struct UnitTypes;

// Everything earlier declarations make visible.
struct Environment {
  std::map<std::string, const UnionTypeDecl*> types;
  std::map<std::string, std::string> constructors;  // constructor -> type
  std::map<std::string, std::shared_ptr<const NormalFormSpecies>> species;
  std::map<std::string, std::shared_ptr<const CollectionModel>> collections;
  // Global method order of each analysed species.
  std::map<std::string, std::vector<std::string>> orders;
};

// Builds the view of `nf` instantiated by `inst`, with Self seen as `self`.
std::vector<NfMethod> instantiate_methods(const NormalFormSpecies& nf, const Instantiation& inst);

// Merges inherit clauses then the body. Local methods are left untyped.
// Throws CompileError on representation redefinition, type clash, unknown
// inherited species or ill-formed arguments.
NormalFormSpecies normalize(const SpeciesDecl& decl, const Environment& env);

// Marks theorems whose unfolded definitions were replaced after their proof
// (per merge stamps) as reverted, with a warning each.
void invalidate_proofs(NormalFormSpecies& nf);

// Completeness and argument checks for `collection C = implement S(args)`.
CollectionModel make_collection(const CollectionDecl& decl, const Environment& env);

// Names of signatures left undefined and properties left unproved (including
// reverted theorems); "rep" when the representation is missing.
std::vector<std::string> missing_definitions(const NormalFormSpecies& nf);

// Flattened species re-read as a declaration without inherit clause.
SpeciesDecl as_declaration(const NormalFormSpecies& nf);

// Same methods, kinds, types and statements, ignoring origins and stamps.
bool same_modulo_origins(const NormalFormSpecies& a, const NormalFormSpecies& b);

}  // namespace focml
