#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "focml/eval.hpp"
#include "focml/program.hpp"

namespace focml {

enum ExitCode { kExitOk = 0, kExitCompileError = 1, kExitUsage = 2 };

// `Coll!m` applied to `args` on the computational output of `p`. Throws
// EvalError for unknown collections, unexposed or logical methods, arity
// mismatches.
ValuePtr eval_call(const Program& p, const std::string& collection, const std::string& method,
                   const std::vector<ValuePtr>& args, std::size_t step_limit = 1000000);

// Splits `In_5_10!filter(12)` into collection, method and argument values.
struct CallSpec {
  std::string collection;
  std::string method;
  std::vector<ValuePtr> args;
};
CallSpec parse_call(const std::string& text);

// The `focmlc` driver. `argv[0]` is the program name.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace focml
