#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace focml {

struct SourceLoc {
  std::string file;
  int line = 0;
  int column = 0;

  std::string str() const;
};

enum class ErrorKind {
  SyntaxError,
  DuplicateName,
  DuplicateMethod,
  UnknownName,
  UnknownProperty,
  UnknownSpecies,
  IllFormedProof,
  StratificationViolation,
  TypeMismatch,
  MethodTypeClash,
  RepresentationRedefined,
  WrongCarrierLeak,
  CycleInDependencies,
  IncompleteSpecies,
  ArityMismatch,
  InterfaceMismatch,
  InvalidUnfold,
  RevertedProof,
  AdmittedProof,
};

std::string_view to_string(ErrorKind kind);

enum class Severity { Error, Warning, Note };

struct Diagnostic {
  Severity severity = Severity::Error;
  ErrorKind kind = ErrorKind::SyntaxError;
  SourceLoc loc;
  std::string message;
  // Cycle path, offending subterm, list of missing methods...
  std::vector<std::string> witness;

  bool is_error() const { return severity == Severity::Error; }
};

// Renders `file:line:col: error: [Kind] message` plus a witness line.
std::string format(const Diagnostic& d, bool color = false);

class CompileError : public std::runtime_error {
 public:
  explicit CompileError(Diagnostic d);
  const Diagnostic& diagnostic() const { return diag_; }

 private:
  Diagnostic diag_;
};

[[noreturn]] void fail(ErrorKind kind, const SourceLoc& loc, std::string message,
                       std::vector<std::string> witness = {});

}  // namespace focml
