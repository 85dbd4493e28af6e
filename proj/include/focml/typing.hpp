#pragma once

#include <optional>
#include <string>

#include "focml/hierarchy.hpp"

namespace focml {

// Source type in the context of a species (or of no species when `nf` is
// null). Annotates `t.ref`. Throws UnknownName.
TypePtr resolve_type(TypeExpr& t, const Environment& env, const NormalFormSpecies* nf);

// Types an argument of a species application (`IntC!fromInt (5)`, `minv`):
// no Self method, no local variable. Annotates references.
TypePtr type_argument(Expr& e, const Environment& env, const NormalFormSpecies* nf);

// Gives every method of `nf` its type and carrier flags. Inherited methods
// keep the type computed at their origin; redefinitions must agree with it.
// Throws TypeMismatch, MethodTypeClash, UnknownName, WrongCarrierLeak.
void infer_types(NormalFormSpecies& nf, const Environment& env);

struct CarrierViolation {
  std::string method;
  std::string atom;  // the boolean atom that needs Self = representation
  SourceLoc loc;
};

// Statement typed with Self rigid. A violation is reported when that fails
// while typing with Self identified to the representation succeeds. Throws
// TypeMismatch when the statement is ill-typed in both modes.
std::optional<CarrierViolation> check_statement_carrier_abstraction(const NfMethod& m,
                                                                     const NormalFormSpecies& nf,
                                                                     const Environment& env);

}  // namespace focml
