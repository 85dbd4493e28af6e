#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "focml/ast.hpp"
#include "focml/comp.hpp"
#include "focml/dependency.hpp"
#include "focml/emit.hpp"
#include "focml/generators.hpp"
#include "focml/hierarchy.hpp"

namespace focml {

// One top-level declaration after compilation.
struct Entry {
  TopLevelRef::Kind kind = TopLevelRef::Kind::Species;
  std::string name;
  bool ok = false;
  const UnionTypeDecl* type = nullptr;
  std::shared_ptr<const NormalFormSpecies> species;
  std::optional<SpeciesDeps> deps;
  std::optional<SpeciesPlan> plan;
  std::shared_ptr<const CollectionModel> collection;
  std::optional<CollectionPlan> collection_plan;
};

struct Program {
  std::unique_ptr<CompilationUnit> unit = std::make_unique<CompilationUnit>();
  Environment env;
  PlanRegistry plans;
  std::vector<Entry> entries;  // source order
  std::vector<Diagnostic> diagnostics;  // errors, warnings and notes, in order

  bool ok() const;
  std::size_t error_count() const;
  const Entry* find(const std::string& name) const;
};

struct SourceFile {
  std::string path;
  std::string text;
};

// Parses every file (later files see the earlier ones), then compiles each
// declaration in order. A failed declaration is reported and skipped; the
// ones depending on it are skipped with a note. A syntax error stops
// everything.
Program compile(const std::vector<SourceFile>& files);
Program compile_text(const std::string& text, const std::string& file = "<input>");
// Throws std::runtime_error when a file cannot be read.
std::vector<SourceFile> read_files(const std::vector<std::string>& paths);

std::vector<LogicalBlock> logical_blocks(const Program& p);
std::vector<CModule> comp_modules(const Program& p);
std::string emit_logical(const Program& p);
std::string emit_computational(const Program& p);

}  // namespace focml
