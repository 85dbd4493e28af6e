#pragma once

// Token-level comparison of logical listings: whitespace is ignored, proof
// holes are collapsed to one token, and each top-level item is compared on
// its own, so module order and a missing final period do not matter.

#include <map>
#include <set>
#include <string>
#include <vector>

namespace focml {
struct Program;
}

namespace focml::testing {

struct ListingItem {
  std::string key;  // "Definition gt", "Record me_as_species", ...
  std::vector<std::string> tokens;
};

std::vector<std::string> listing_tokens(const std::string& text);
std::vector<ListingItem> listing_items(const std::string& text);

// Differences between an expected listing and an actual one. Items of
// `actual` missing from `expected` are reported unless their key is in
// `allowed_extra`.
std::vector<std::string> compare_listings(const std::string& expected, const std::string& actual,
                                          const std::set<std::string>& allowed_extra = {});

// Every golden listing under the golden directory against the matching block
// of `p`; block name -> differences (empty when equal).
std::map<std::string, std::vector<std::string>> golden_differences(const Program& p);

}  // namespace focml::testing
