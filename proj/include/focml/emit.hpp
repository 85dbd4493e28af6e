#pragma once

#include <string>
#include <vector>

#include "focml/comp.hpp"
#include "focml/generators.hpp"

namespace focml {

// One top-level definition of the logical target (record, generator,
// collection generator, projection...), rendered as text.
struct LogicalItem {
  std::string name;
  std::string text;
};

struct LogicalBlock {
  std::string name;
  bool module = true;  // false for inductive types
  std::vector<LogicalItem> items;

  std::string text() const;
};

LogicalBlock logical_type(const UnionTypeDecl& t, const Environment& env);
LogicalBlock logical_species(const NormalFormSpecies& nf, const SpeciesPlan& plan,
                             const Environment& env);
LogicalBlock logical_collection(const CollectionModel& c, const CollectionPlan& plan,
                                const Environment& env);

CModule comp_type(const UnionTypeDecl& t, const Environment& env);
CModule comp_species(const NormalFormSpecies& nf, const SpeciesPlan& plan);
CModule comp_collection(const CollectionModel& c, const CollectionPlan& plan);

// Logical rendering of a source type (`basics.int__t`, `statut_t__t`).
std::string logical_type_name(const TypePtr& t);

}  // namespace focml
