#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "focml/types.hpp"

using namespace focml;
using namespace focml::testing;

namespace {

std::string type_of(const Program& p, const std::string& species, const std::string& method) {
  const Entry* e = p.find(species);
  if (!e || !e->species) return "<no species>";
  const NfMethod* m = e->species->find(method);
  return m && m->type ? show(m->type) : "<untyped>";
}

ErrorKind first_error(const std::string& text) {
  Program p = compile_text(text, "t.fcl");
  auto errs = errors_of(p);
  if (errs.empty()) {
    ADD_FAILURE() << "accepted: " << text;
    return ErrorKind::SyntaxError;
  }
  return errs.front()->kind;
}

}  // namespace

TEST(Typing, ExampleTypes) {
  Program p = compile_samples({"example.fcl"});
  ASSERT_TRUE(p.ok());
  EXPECT_EQ(type_of(p, "OrdData", "gt"), "Self -> Self -> bool");
  EXPECT_EQ(type_of(p, "Data", "id"), "string");
  EXPECT_EQ(type_of(p, "TheInt", "fromInt"), "int -> Self");
  EXPECT_EQ(type_of(p, "IsIn", "getStatus"), "Self -> statut_t");
}

TEST(Typing, CarrierFlags) {
  Program p = compile_samples({"example.fcl"});
  const NfMethod* lt = p.find("TheInt")->species->find("lt");
  ASSERT_NE(lt, nullptr);
  EXPECT_TRUE(lt->carrier_decl);
  EXPECT_TRUE(lt->carrier_def);  // the body compares ints
}

TEST(Typing, WrongLeaksTheCarrier) {
  Program p = compile_samples({"wrong.fcl"});
  auto errs = errors_of(p);
  ASSERT_EQ(errs.size(), 1u);
  EXPECT_EQ(errs[0]->kind, ErrorKind::WrongCarrierLeak);
  EXPECT_FALSE(p.find("Wrong")->ok);
  EXPECT_FALSE(p.find("Bad")->ok);
}

TEST(Typing, Mismatches) {
  EXPECT_EQ(first_error("species A =\n  let f (x) = x + true ;\nend ;;"), ErrorKind::TypeMismatch);
  EXPECT_EQ(first_error("species A =\n  let f (x) = g (x) ;\nend ;;"), ErrorKind::UnknownName);
  // A body that contradicts an inherited signature fails while inferring it.
  EXPECT_EQ(first_error("species A =\n  signature f : int -> int ;\nend ;;\n"
                        "species B =\n  inherit A ;\n  let f (x) = true ;\nend ;;"),
            ErrorKind::TypeMismatch);
  EXPECT_EQ(first_error("species A =\n  signature f : int -> int ;\nend ;;\n"
                        "species B =\n  inherit A ;\n  signature f : bool ;\nend ;;"),
            ErrorKind::MethodTypeClash);
}

TEST(Typing, RepresentationCannotChange) {
  EXPECT_EQ(first_error("species A =\n  representation = int ;\nend ;;\n"
                        "species B =\n  inherit A ;\n  representation = bool ;\nend ;;"),
            ErrorKind::RepresentationRedefined);
}
