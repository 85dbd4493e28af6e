#include "focml/diagnostics.hpp"

#include <sstream>

namespace focml {

std::string SourceLoc::str() const {
  std::ostringstream os;
  os << (file.empty() ? "<input>" : file) << ':' << line << ':' << column;
  return os.str();
}

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::DuplicateMethod: return "DuplicateMethod";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::UnknownProperty: return "UnknownProperty";
    case ErrorKind::UnknownSpecies: return "UnknownSpecies";
    case ErrorKind::IllFormedProof: return "IllFormedProof";
    case ErrorKind::StratificationViolation: return "StratificationViolation";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::MethodTypeClash: return "MethodTypeClash";
    case ErrorKind::RepresentationRedefined: return "RepresentationRedefined";
    case ErrorKind::WrongCarrierLeak: return "WrongCarrierLeak";
    case ErrorKind::CycleInDependencies: return "CycleInDependencies";
    case ErrorKind::IncompleteSpecies: return "IncompleteSpecies";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::InterfaceMismatch: return "InterfaceMismatch";
    case ErrorKind::InvalidUnfold: return "InvalidUnfold";
    case ErrorKind::RevertedProof: return "RevertedProof";
    case ErrorKind::AdmittedProof: return "AdmittedProof";
  }
  return "Unknown";
}

std::string format(const Diagnostic& d, bool color) {
  const char* sev = d.severity == Severity::Error     ? "error"
                    : d.severity == Severity::Warning ? "warning"
                                                      : "note";
  const char* on = "";
  const char* off = "";
  if (color) {
    on = d.severity == Severity::Error ? "\x1b[1;31m" : "\x1b[1;33m";
    off = "\x1b[0m";
  }
  std::ostringstream os;
  os << d.loc.str() << ": " << on << sev << off << ": [" << to_string(d.kind) << "] "
     << d.message;
  if (!d.witness.empty()) {
    os << "\n  witness:";
    for (const auto& w : d.witness) os << ' ' << w;
  }
  return os.str();
}

CompileError::CompileError(Diagnostic d) : std::runtime_error(format(d)), diag_(std::move(d)) {}

void fail(ErrorKind kind, const SourceLoc& loc, std::string message,
          std::vector<std::string> witness) {
  Diagnostic d;
  d.kind = kind;
  d.loc = loc;
  d.message = std::move(message);
  d.witness = std::move(witness);
  throw CompileError(std::move(d));
}

}  // namespace focml
