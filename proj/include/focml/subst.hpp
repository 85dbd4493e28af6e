#pragma once

#include <map>
#include <string>

#include "focml/ast.hpp"
#include "focml/types.hpp"

namespace focml {

// Where a collection parameter of some species is sent: a collection
// parameter of the current species or an existing collection.
struct CollTarget {
  std::string name;
  bool is_param = true;
};

// Formal parameters of an inherited (or implemented, or interface) species
// mapped to terms of the species that uses it.
struct Instantiation {
  std::map<std::string, CollTarget> collections;
  std::map<std::string, Expr> entities;
  // Self of the instantiated species, when it is viewed from outside
  // (interfaces of parameters and collections).
  std::optional<CollTarget> self;

  bool empty() const { return collections.empty() && entities.empty() && !self; }
};

TypePtr subst_type(const TypePtr& t, const Instantiation& inst);
TypeExpr subst_type_expr(const TypeExpr& t, const Instantiation& inst);
Expr subst_expr(const Expr& e, const Instantiation& inst);
Proof subst_proof(const Proof& p, const Instantiation& inst);

// `outer ∘ inner`: first `inner` (origin -> middle), then `outer` (middle -> current).
Instantiation compose(const Instantiation& inner, const Instantiation& outer);

}  // namespace focml
