#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "focml/program.hpp"

namespace focml::testing {

inline std::string sample_path(const std::string& name) { return std::string(FOCML_SAMPLES_DIR) + "/" + name; }
inline std::string golden_path(const std::string& name) { return std::string(FOCML_GOLDEN_DIR) + "/" + name; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Compiles samples in order, e.g. {"example.fcl", "isine.fcl"}.
inline Program compile_samples(const std::vector<std::string>& names) {
  std::vector<std::string> paths;
  for (const auto& n : names) paths.push_back(sample_path(n));
  return compile(read_files(paths));
}

inline std::vector<const Diagnostic*> errors_of(const Program& p) {
  std::vector<const Diagnostic*> out;
  for (const auto& d : p.diagnostics)
    if (d.is_error()) out.push_back(&d);
  return out;
}

}  // namespace focml::testing
