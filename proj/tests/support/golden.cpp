#include "golden.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

#include "fixtures.hpp"
#include "focml/program.hpp"

namespace focml::testing {

namespace {

const std::set<std::string> kItemKeywords = {"Definition", "Theorem", "Axiom", "Record", "Let", "Inductive"};

bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::string strip(const std::string& text) {
  static const std::regex paper_hole(R"(apply\s+\$[^$]*\$\s*;)");
  static const std::regex our_hole(R"(apply\s+PROOF_HOLE_\w+\s*\.)");
  static const std::regex module_open(R"(\bModule\s+\w+\s*\.)");
  static const std::regex module_close(R"(\bEnd\s+\w+\s*\.)");
  static const std::regex require(R"(\bRequire\s+Export\s+\w+\s*\.)");
  std::string s = std::regex_replace(text, paper_hole, " HOLE ");
  s = std::regex_replace(s, our_hole, " HOLE ");
  s = std::regex_replace(s, module_open, " ");
  s = std::regex_replace(s, module_close, " ");
  return std::regex_replace(s, require, " ");
}

}  // namespace

std::vector<std::string> listing_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '"') {
      std::size_t j = text.find('"', i + 1);
      if (j == std::string::npos) j = text.size() - 1;
      out.push_back(text.substr(i, j - i + 1));
      i = j + 1;
    } else if (word_char(c)) {
      std::size_t j = i;
      while (j < text.size() && word_char(text[j])) ++j;
      out.push_back(text.substr(i, j - i));
      i = j;
    } else {
      out.emplace_back(1, c);
      ++i;
    }
  }
  return out;
}

std::vector<ListingItem> listing_items(const std::string& text) {
  std::vector<ListingItem> items;
  for (const auto& t : listing_tokens(strip(text))) {
    if (kItemKeywords.count(t)) items.push_back({t, {}});
    if (items.empty()) continue;
    items.back().tokens.push_back(t);
    if (items.back().tokens.size() == 2) items.back().key += " " + t;
  }
  for (auto& it : items)
    if (!it.tokens.empty() && it.tokens.back() == ".") it.tokens.pop_back();
  return items;
}

std::vector<std::string> compare_listings(const std::string& expected, const std::string& actual,
                                          const std::set<std::string>& allowed_extra) {
  std::vector<std::string> diffs;
  std::map<std::string, std::vector<std::string>> got;
  for (auto& it : listing_items(actual)) got[it.key] = it.tokens;
  std::set<std::string> seen;
  for (const auto& want : listing_items(expected)) {
    seen.insert(want.key);
    auto it = got.find(want.key);
    if (it == got.end()) {
      diffs.push_back("missing item: " + want.key);
      continue;
    }
    const auto& have = it->second;
    std::size_t k = 0;
    while (k < want.tokens.size() && k < have.size() && want.tokens[k] == have[k]) ++k;
    if (k != want.tokens.size() || k != have.size()) {
      std::string w = k < want.tokens.size() ? want.tokens[k] : "<end>";
      std::string h = k < have.size() ? have[k] : "<end>";
      diffs.push_back(want.key + ": token " + std::to_string(k) + " expected '" + w + "' got '" + h + "'");
    }
  }
  for (const auto& [key, toks] : got)
    if (!seen.count(key) && !allowed_extra.count(key)) diffs.push_back("unexpected item: " + key);
  return diffs;
}

namespace {

const std::vector<std::string> kGolden = {"Data", "OrdData", "TheInt", "IsIn", "IntC", "In_5_10"};

// Items we emit that the reference listings leave out.
const std::map<std::string, std::set<std::string>> kAllowedExtra = {
    {"In_5_10", {"Definition me_as_carrier"}},
};

}  // namespace

std::map<std::string, std::vector<std::string>> golden_differences(const Program& p) {
  std::map<std::string, std::vector<std::string>> out;
  std::vector<LogicalBlock> blocks = logical_blocks(p);
  for (const auto& name : kGolden) {
    auto& diffs = out[name];
    std::string expected = slurp(golden_path(name + ".v"));
    if (expected.empty()) {
      diffs.push_back("golden listing missing");
      continue;
    }
    auto b = std::find_if(blocks.begin(), blocks.end(), [&](const LogicalBlock& x) { return x.name == name; });
    if (b == blocks.end()) {
      diffs.push_back("no block emitted");
      continue;
    }
    auto extra = kAllowedExtra.find(name);
    diffs = compare_listings(expected, b->text(), extra == kAllowedExtra.end() ? std::set<std::string>{} : extra->second);
  }
  return out;
}

}  // namespace focml::testing
