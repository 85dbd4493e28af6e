#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "focml/parser.hpp"
#include "focml/printer.hpp"

using namespace focml;
using namespace focml::testing;

namespace {

Diagnostic syntax_failure(const std::string& text) {
  try {
    parse_source(text, "t.fcl");
  } catch (const CompileError& e) {
    return e.diagnostic();
  }
  ADD_FAILURE() << "accepted: " << text;
  return {};
}

}  // namespace

TEST(Syntax, ExampleParsesInOrder) {
  CompilationUnit u = parse_source(slurp(sample_path("example.fcl")), "example.fcl");
  ASSERT_EQ(u.species.size(), 4u);
  EXPECT_EQ(u.species[0].name, "Data");
  EXPECT_EQ(u.species[3].name, "IsIn");
  ASSERT_EQ(u.collections.size(), 3u);
  EXPECT_EQ(u.collections[1].name, "In_5_10");
  ASSERT_EQ(u.type_decls.size(), 1u);
  EXPECT_EQ(u.type_decls[0].ctors.size(), 3u);
  EXPECT_EQ(u.order.size(), 8u);
  EXPECT_EQ(u.order[3].kind, TopLevelRef::Kind::Type);

  const SpeciesDecl& isin = u.species[3];
  ASSERT_EQ(isin.params.size(), 3u);
  EXPECT_EQ(isin.params[0].kind, SpeciesParam::Kind::Collection);
  EXPECT_EQ(isin.params[1].kind, SpeciesParam::Kind::Entity);
  EXPECT_EQ(isin.params[1].carrier, "V");
}

TEST(Syntax, PrintThenParseIsStable) {
  for (const char* f : {"example.fcl", "close.fcl", "evenodd.fcl", "incomplete.fcl", "wrong.fcl"}) {
    CompilationUnit u = parse_source(slurp(sample_path(f)), f);
    std::string once = print_unit(u);
    CompilationUnit again = parse_source(once, "printed.fcl");
    EXPECT_TRUE(structurally_equal(u, again)) << f;
    EXPECT_EQ(print_unit(again), once) << f;
  }
}

TEST(Syntax, LaterFilesSeeEarlierOnes) {
  CompilationUnit base = parse_source(slurp(sample_path("example.fcl")), "example.fcl");
  CompilationUnit ext = parse_source(slurp(sample_path("isine.fcl")), "isine.fcl", &base);
  ASSERT_EQ(ext.species.size(), 1u);
  EXPECT_EQ(ext.species[0].inherits[0].name, "IsIn");
}

TEST(Syntax, ErrorsCarryLocations) {
  Diagnostic d = syntax_failure("species A =\n  let x = ;\nend ;;");
  EXPECT_EQ(d.kind, ErrorKind::SyntaxError);
  EXPECT_EQ(d.loc.file, "t.fcl");
  EXPECT_EQ(d.loc.line, 2);
}

TEST(Syntax, DuplicateMethodRejected) {
  Diagnostic d = syntax_failure("species A =\n  signature f : int ;\n  signature f : int ;\nend ;;");
  EXPECT_EQ(d.kind, ErrorKind::DuplicateMethod);
}

TEST(Syntax, DuplicateTopLevelRejected) {
  Diagnostic d = syntax_failure("species A = end ;;\nspecies A = end ;;");
  EXPECT_EQ(d.kind, ErrorKind::DuplicateName);
}

TEST(Syntax, ExpressionsRoundTrip) {
  for (const char* e : {"x + 1", "if a then (b, Too_low) else f (x, y)", "~~ (lt (x, y)) && ~~ (eq (x, y))"}) {
    Expr once = parse_expression(e);
    EXPECT_EQ(print_expr(parse_expression(print_expr(once))), print_expr(once)) << e;
  }
}
