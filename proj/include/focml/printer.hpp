#pragma once

#include <string>

#include "focml/ast.hpp"

namespace focml {

// Source-syntax pretty printer. Output re-parses to a structurally equal AST;
// compound subterms are parenthesized rather than relying on precedence.
std::string print_type(const TypeExpr& t);
std::string print_expr(const Expr& e);
std::string print_proof(const Proof& p, int indent = 2);
std::string print_unit(const CompilationUnit& u);

}  // namespace focml
