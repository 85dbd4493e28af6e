#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "focml/program.hpp"

namespace focml {

using Json = nlohmann::ordered_json;

// Dependency report: species -> method -> {decl, def, universe, min_env,
// params, order_index, valid_proof, carrier_decl, carrier_def}. Two reserved
// keys per species keep the report invertible: "@order" (global order with
// the representation) and "@entities" (entity parameters).
Json deps_json(const SpeciesDeps& d, const NormalFormSpecies& nf);
Json deps_json(const Program& p);
std::map<std::string, SpeciesDeps> deps_from_json(const Json& j);

// Documentation: per species, methods with origin and status; reverted
// proofs and admitted occurrences.
std::string doc_text(const Program& p);

// All diagnostics, one block each; color when `color`.
std::string format_diagnostics(const Program& p, bool color);

}  // namespace focml
