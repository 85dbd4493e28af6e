#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace focml;
using namespace focml::testing;

namespace {

const NfMethod& method(const Program& p, const std::string& s, const std::string& m) {
  const NfMethod* x = p.find(s)->species->find(m);
  if (!x) throw std::runtime_error(s + "." + m + " missing");
  return *x;
}

const Diagnostic* find_kind(const Program& p, ErrorKind k) {
  for (const auto& d : p.diagnostics)
    if (d.kind == k) return &d;
  return nullptr;
}

}  // namespace

TEST(Hierarchy, LaterVersionsWin) {
  Program p = compile_samples({"example.fcl"});
  ASSERT_TRUE(p.ok());
  EXPECT_EQ(method(p, "TheInt", "id").origin, "TheInt");
  EXPECT_EQ(method(p, "TheInt", "gt").origin, "OrdData");
  EXPECT_EQ(method(p, "TheInt", "ltNotGt").kind, MethodKind::Theorem);
  EXPECT_EQ(method(p, "OrdData", "ltNotGt").kind, MethodKind::Property);
  EXPECT_EQ(method(p, "OrdData", "fromInt").kind, MethodKind::Signature);
}

TEST(Hierarchy, CompletenessOfSpecies) {
  Program p = compile_samples({"example.fcl"});
  EXPECT_TRUE(missing_definitions(*p.find("TheInt")->species).empty());
  EXPECT_TRUE(missing_definitions(*p.find("IsIn")->species).empty());
  auto miss = missing_definitions(*p.find("OrdData")->species);
  EXPECT_NE(std::find(miss.begin(), miss.end(), "ltNotGt"), miss.end());
  EXPECT_NE(std::find(miss.begin(), miss.end(), "lt"), miss.end());
}

TEST(Hierarchy, RedefinitionRevertsDependentProof) {
  Program p = compile_samples({"example.fcl", "isine.fcl"});
  const Diagnostic* w = find_kind(p, ErrorKind::RevertedProof);
  ASSERT_NE(w, nullptr);
  EXPECT_EQ(w->severity, Severity::Warning);
  EXPECT_EQ(w->witness, (std::vector<std::string>{"lowMin", "filter"}));
  const NfMethod& low = method(p, "IsInE", "lowMin");
  EXPECT_EQ(low.kind, MethodKind::Theorem);
  EXPECT_FALSE(low.valid_proof);
  // The species itself is fine; implementing it is not.
  EXPECT_TRUE(p.find("IsInE")->ok);
  const Diagnostic* inc = find_kind(p, ErrorKind::IncompleteSpecies);
  ASSERT_NE(inc, nullptr);
  EXPECT_EQ(inc->witness, (std::vector<std::string>{"lowMin"}));
  EXPECT_FALSE(p.find("E_5_10")->ok);
}

TEST(Hierarchy, AdmittedProofRestoresCompleteness) {
  Program p = compile_samples({"example.fcl", "isine_fixed.fcl"});
  EXPECT_TRUE(p.ok());
  EXPECT_NE(find_kind(p, ErrorKind::AdmittedProof), nullptr);
  EXPECT_TRUE(method(p, "IsInE", "lowMin").admitted);
}

TEST(Hierarchy, UnprovedPropertyIsIncomplete) {
  Program p = compile_samples({"incomplete.fcl"});
  auto errs = errors_of(p);
  ASSERT_EQ(errs.size(), 1u);
  EXPECT_EQ(errs[0]->kind, ErrorKind::IncompleteSpecies);
  EXPECT_EQ(errs[0]->witness, (std::vector<std::string>{"nextMoves"}));
}

TEST(Hierarchy, ParametersAreInstantiated) {
  Program p = compile_samples({"example.fcl"});
  const Entry* c = p.find("In_5_10");
  ASSERT_TRUE(c && c->ok && c->collection);
  EXPECT_EQ(p.find("In_1_8")->ok, true);
}

TEST(Hierarchy, BadInheritance) {
  Program p = compile_text("species A (X is Nope) = end ;;", "t.fcl");
  ASSERT_FALSE(p.ok());
  EXPECT_EQ(errors_of(p).front()->kind, ErrorKind::UnknownSpecies);

  Program q = compile_text("species A = signature f : int ; end ;;\ncollection C = implement A ; end ;;", "t.fcl");
  ASSERT_FALSE(q.ok());
  EXPECT_EQ(errors_of(q).front()->kind, ErrorKind::IncompleteSpecies);
}
