#pragma once

#include <string>
#include <string_view>

#include "focml/ast.hpp"

namespace focml {

// Parses one source file. `prior` holds the declarations of files processed
// earlier; names it declares may be inherited, implemented or referenced.
// Throws CompileError on the first syntax or well-formedness error.
CompilationUnit parse_source(std::string_view text, const std::string& file = "",
                             const CompilationUnit* prior = nullptr);

// A single expression, e.g. the argument of `eval --call`.
Expr parse_expression(std::string_view text, const std::string& file = "<call>");

}  // namespace focml
