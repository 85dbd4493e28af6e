#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "focml/ast.hpp"
#include "focml/comp.hpp"

namespace focml {

using BigInt = boost::multiprecision::cpp_int;

struct Value;
using ValuePtr = std::shared_ptr<const Value>;
struct Closure;

struct Value {
  enum class Kind { Int, Bool, Str, Tuple, Ctor, Record, Function };
  Kind kind = Kind::Int;
  BigInt num;
  bool flag = false;
  std::string text;                 // Str; Ctor name
  std::vector<ValuePtr> items;      // Tuple, Ctor args, Record fields
  std::vector<std::string> fields;  // Record
  std::shared_ptr<const Closure> fn;

  static ValuePtr integer(BigInt n);
  static ValuePtr boolean(bool b);
  static ValuePtr string(std::string s);
  static ValuePtr tuple(std::vector<ValuePtr> v);
  static ValuePtr ctor(std::string name, std::vector<ValuePtr> args);
};

bool values_equal(const Value& a, const Value& b);
// `(5, Too_low)`, `"s"`, `true`, `<fun>`.
std::string show_value(const Value& v);

class EvalError : public std::runtime_error {
 public:
  enum class Kind { UnknownName, ArityMismatch, MatchFailure, StepLimit, TypeError };
  EvalError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
  Kind kind;
};
const char* to_string(EvalError::Kind k);

// Runs computational modules. Zero-parameter definitions are evaluated on
// first use and cached.
class Evaluator {
 public:
  explicit Evaluator(std::vector<CModule> modules, std::size_t step_limit = 1000000);
  ~Evaluator();

  ValuePtr global(const std::string& module, const std::string& name);
  ValuePtr apply(const ValuePtr& fn, const std::vector<ValuePtr>& args);
  // `Module.name` applied to `args`; a zero-parameter global when `args` is empty.
  ValuePtr call(const std::string& module, const std::string& name, const std::vector<ValuePtr>& args);

  std::size_t steps() const { return steps_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::size_t steps_ = 0;
  friend struct Impl;
};

// Source-level literal (`12`, `(3, Too_low)`, `"x"`, `true`, `C (1)`) to a value.
ValuePtr literal_value(const std::string& text);
ValuePtr literal_value(const Expr& e);

}  // namespace focml
