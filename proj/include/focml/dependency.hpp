#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "focml/hierarchy.hpp"

namespace focml {

// The carrier takes part in dependency sets under this name.
inline const std::string kRep = "rep";

enum class Keep { TypeOnly, TypeAndBody };
const char* to_string(Keep k);

struct EnvEntry {
  std::string name;
  Keep keep = Keep::TypeOnly;
  friend bool operator==(const EnvEntry&, const EnvEntry&) = default;
};

struct ParamDep {
  std::string name;
  std::string type;  // as seen from the species
  friend bool operator==(const ParamDep&, const ParamDep&) = default;
};

// Dependencies of one method on one parameter. An entity parameter's only
// possible member is itself.
struct ParamDeps {
  std::string param;
  bool entity = false;
  bool carrier = false;  // collection parameter whose carrier must be lifted
  std::vector<ParamDep> members;  // in the parameter species' order
  friend bool operator==(const ParamDeps&, const ParamDeps&) = default;
  bool empty() const { return !carrier && members.empty(); }
};

struct MethodDeps {
  std::string name;
  std::vector<std::string> decl;  // global order; kRep for the carrier
  std::vector<std::string> def;
  bool carrier_decl = false;
  bool carrier_def = false;
  std::vector<std::string> universe;
  std::vector<EnvEntry> min_env;
  std::vector<ParamDeps> params;  // one entry per species parameter
  int order_index = -1;
  friend bool operator==(const MethodDeps&, const MethodDeps&) = default;

  const ParamDeps* param(const std::string& p) const;
};

struct SpeciesDeps {
  std::string species;
  std::vector<std::string> order;   // global order, kRep included
  std::vector<MethodDeps> methods;  // global order, kRep excluded
  friend bool operator==(const SpeciesDeps&, const SpeciesDeps&) = default;

  const MethodDeps* find(const std::string& name) const;
};

// Syntactic dependency graph of a flattened, typed species. Every method is
// a node, plus kRep. `types` holds what the *type* (statement) of a method
// decl-depends on.
struct DepGraph {
  std::map<std::string, std::set<std::string>> decl;
  std::map<std::string, std::set<std::string>> def;
  std::map<std::string, std::set<std::string>> types;
  std::set<std::string> rec_group;  // rec lets allowed to be mutually recursive
  std::map<std::string, std::string> origin;
};

DepGraph build_graph(const NormalFormSpecies& nf);

std::set<std::string> decl_deps(const NfMethod& m, const NormalFormSpecies& nf);
std::set<std::string> def_deps(const NfMethod& m, const NormalFormSpecies& nf);
// Every z with z def-depending transitively into x (x excluded).
std::set<std::string> def_closure(const std::string& x, const DepGraph& g);
std::set<std::string> visible_universe(const std::string& x, const DepGraph& g);
std::vector<EnvEntry> minimal_typing_env(const std::string& x, const DepGraph& g,
                                         const std::vector<std::string>& order);

// Global order: smallest-name-first topological sort of the decl graph.
// Throws CycleInDependencies with the cycle as witness.
std::vector<std::string> order_methods(const DepGraph& g);

// Parameter methods used by x through [Body], [Type], [Def], [Univ], [Prm],
// before completion. Carrier and entity uses are reported in `carrier`.
enum Rule : unsigned { kBody = 1, kType = 2, kDef = 4, kUniv = 8, kPrm = 16, kAllRules = 31 };
struct RawParamDeps {
  std::set<std::string> members;
  bool carrier = false;
};
RawParamDeps param_deps(const std::string& x, const NormalFormSpecies& nf, const DepGraph& g,
                        const std::string& param, const Environment& env,
                        unsigned rules = kAllRules);
// [Close]: adds what the statements of the members need inside the interface.
std::set<std::string> close_param_deps(const std::set<std::string>& d, const InterfaceView& view);

// Delegates to typing's statement-mode check for every logical method.
std::optional<Diagnostic> check_carrier_leak(const NormalFormSpecies& nf, const Environment& env);

// The whole calculus for one species.
SpeciesDeps analyze(const NormalFormSpecies& nf, const Environment& env);

}  // namespace focml
