#pragma once

#include <string>
#include <vector>

#include "focml/ast.hpp"

namespace focml {

// Computational target, kept as data: the text emitter prints it and the
// evaluator runs it.
struct CExpr {
  enum class Kind {
    Var,     // name
    Global,  // module.name; module "basics" for built-ins
    Int,     // text
    Bool,    // flag
    Str,     // text
    App,     // kids = [fn, args...]
    And,     // short-circuit, kids = [a, b]
    Or,
    If,      // kids = [cond, then, else]
    Tuple,   // kids
    Ctor,    // name, kids = args
    Match,   // kids = [scrutinee, arm bodies...], patterns
    Let,     // name = kids[0] in kids[1]
    Record,  // fields[i] = kids[i]
    Field,   // kids[0].module.name
  };
  Kind kind = Kind::Var;
  std::string module;
  std::string name;
  std::string text;
  bool flag = false;
  std::vector<CExpr> kids;
  std::vector<Pattern> patterns;
  std::vector<std::string> fields;

  static CExpr var(std::string n);
  static CExpr global(std::string m, std::string n);
  static CExpr app(CExpr fn, std::vector<CExpr> args);
};

struct CDef {
  std::string name;
  std::vector<std::string> params;
  CExpr body;
};

struct CCtor {
  std::string name;
  std::size_t arity = 0;
};

struct CModule {
  enum class Kind { Type, Species, Collection };
  Kind kind = Kind::Species;
  std::string name;
  std::vector<CCtor> ctors;  // Type
  std::vector<std::string> ctor_types;  // Type: rendered argument types, per ctor
  std::vector<CDef> defs;

  const CDef* find(const std::string& n) const;
};

std::string render_comp(const CModule& m);
std::string render_comp(const CExpr& e, const std::string& current_module = "");

}  // namespace focml
