#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "focml/dependency.hpp"
#include "focml/hierarchy.hpp"

namespace focml {

// A value passed to a generator: a variable in scope (`_p_V_lt`, `abst_T`,
// `local_eq`), a field of an existing collection (`IntC.lt`,
// `IntC.me_as_carrier`) or an entity expression (`IntC!fromInt (5)`).
struct Term {
  std::string module;  // non-empty for collection members
  std::string name;
  std::optional<Expr> expr;
  bool carrier = false;  // stands for a type (erased computationally)
  bool logical = false;  // stands for a proof (erased computationally)
};

struct Lift {
  enum class Kind { ParamCarrier, ParamMethod, Entity, SelfCarrier, SelfMethod };
  Kind kind = Kind::SelfMethod;
  std::string param;   // ParamCarrier, ParamMethod, Entity
  std::string method;  // ParamMethod, SelfMethod
  bool logical = false;
  bool bound = false;  // `:=` binding instead of an abstraction
  TypePtr type;        // functions, entities; representation when SelfCarrier is bound
  std::optional<Expr> statement;  // logical lifts
  // Bindings of Self methods: generator host and arguments.
  std::string gen_species;
  std::vector<Term> gen_args;

  std::string name() const;  // _p_V_T, _p_V_lt, _p_minv_minv, abst_T, abst_gt
  bool erased() const { return logical || kind == Kind::ParamCarrier || kind == Kind::SelfCarrier; }
};

struct MethodPlan {
  std::string species;  // host: where the method is (re)defined
  NfMethod method;      // as seen from the host
  std::vector<Lift> lifts;
};

struct LocalDef {
  std::string method;       // kRep for the carrier
  std::string gen_species;  // host of the generator
  std::vector<Term> args;
  bool logical = false;
  TypePtr rep;  // carrier definition
};

struct RecordField {
  std::string method;
  bool logical = false;
  TypePtr type;
  std::optional<Expr> statement;
};

struct SpeciesPlan {
  std::string species;
  std::vector<std::string> order;   // global order (kRep included)
  std::vector<MethodPlan> methods;  // generators hosted here, global order
  bool complete = false;
  // Only for complete species.
  std::vector<Lift> record_params;  // carriers, entities, [Close]([Type]) methods
  std::vector<RecordField> fields;  // rf_T excluded
  std::vector<Lift> create_params;  // carriers, entities, parameter methods
  std::vector<LocalDef> locals;     // local_rep first

  const MethodPlan* find(const std::string& method) const;
};

struct CollectionPlan {
  std::string name;
  std::string species;
  std::vector<Term> args;  // one per create_params entry
  TypePtr carrier;         // representation with parameters resolved
  std::vector<std::string> methods;  // projected, global order
  std::vector<bool> logical;
  std::size_t record_arity = 0;
};

// Plans of earlier species, by name.
using PlanRegistry = std::map<std::string, SpeciesPlan>;

SpeciesPlan plan_species(const NormalFormSpecies& nf, const SpeciesDeps& deps,
                         const Environment& env, const PlanRegistry& earlier);

CollectionPlan plan_collection(const CollectionModel& c, const Environment& env,
                               const PlanRegistry& plans);

// Names referenced before being bound, for each plan of the species; empty
// when well scoped.
std::vector<std::string> scope_errors(const SpeciesPlan& p);

}  // namespace focml
