#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "golden.hpp"
#include "properties.hpp"

using namespace focml;
using namespace focml::testing;

TEST(Listing, TokensIgnoreLayout) {
  EXPECT_EQ(listing_tokens("Definition  x:=\n  f y."), (std::vector<std::string>{"Definition", "x", ":", "=", "f", "y", "."}));
  EXPECT_EQ(listing_tokens("\"a b\" c'"), (std::vector<std::string>{"\"a b\"", "c'"}));
}

TEST(Listing, HolesAndModulesAreNeutral) {
  auto a = listing_items("Module M.\n  Theorem t : P.\n  apply $\"Large Coq term\"$ ;\nEnd M.");
  auto b = listing_items("Module M.\nTheorem t : P.\napply PROOF_HOLE_M_t.\nEnd M.\n");
  ASSERT_EQ(a.size(), 1u);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(a[0].tokens, b[0].tokens);
  EXPECT_EQ(a[0].key, "Theorem t");
}

TEST(Listing, ComparisonReportsDifferences) {
  EXPECT_TRUE(compare_listings("Definition x := 1.", "Definition x := 1").empty());
  EXPECT_EQ(compare_listings("Definition x := 1.", "Definition x := 2.").size(), 1u);
  EXPECT_EQ(compare_listings("Definition x := 1.", "Definition x := 1. Definition y := 2.").size(), 1u);
  EXPECT_TRUE(compare_listings("Definition x := 1.", "Definition x := 1. Definition y := 2.", {"Definition y"}).empty());
  EXPECT_EQ(compare_listings("Definition x := 1.", "Definition z := 1.").size(), 2u);
}

TEST(Emit, LogicalMatchesGolden) {
  Program p = compile_samples({"example.fcl"});
  ASSERT_TRUE(p.ok());
  for (const auto& [name, diffs] : golden_differences(p)) {
    std::string all;
    for (const auto& d : diffs) all += "\n  " + d;
    EXPECT_TRUE(diffs.empty()) << name << ":" << all;
  }
}

TEST(Emit, LogicalHeaderAndTypes) {
  Program p = compile_samples({"example.fcl"});
  std::string out = emit_logical(p);
  EXPECT_EQ(out.rfind("Require Export basics.\n", 0), 0u);
  EXPECT_NE(out.find("Inductive statut_t__t : Set :="), std::string::npos);
}

TEST(Emit, ComputationalErasesLogic) {
  Program p = compile_samples({"example.fcl"});
  for (const auto& m : comp_modules(p)) {
    EXPECT_EQ(m.find("ltNotGt"), nullptr) << m.name;
    EXPECT_EQ(m.find("lowMin"), nullptr) << m.name;
    EXPECT_EQ(m.find("me_as_carrier"), nullptr) << m.name;
  }
  for (const auto& e : p.entries)
    if (e.plan)
      for (const auto& c : comp_modules(p))
        if (c.name == e.name && c.kind == CModule::Kind::Species) {
          auto errs = erasure_errors(*e.plan, c);
          EXPECT_TRUE(errs.empty()) << e.name << ": " << (errs.empty() ? "" : errs.front());
        }
}

TEST(Emit, IncompleteSpeciesHasNoCreate) {
  Program p = compile_samples({"example.fcl"});
  for (const auto& m : comp_modules(p)) {
    if (m.name == "OrdData") EXPECT_EQ(m.find("collection_create"), nullptr);
    if (m.name == "TheInt") EXPECT_NE(m.find("collection_create"), nullptr);
  }
  std::string text = emit_computational(p);
  EXPECT_NE(text.find("effective_collection.TheInt.rf_fromInt"), std::string::npos) << text;
}

TEST(Emit, Deterministic) {
  Program a = compile_samples({"example.fcl", "watch.fcl"});
  Program b = compile_samples({"example.fcl", "watch.fcl"});
  EXPECT_EQ(emit_logical(a), emit_logical(b));
  EXPECT_EQ(emit_computational(a), emit_computational(b));
}
