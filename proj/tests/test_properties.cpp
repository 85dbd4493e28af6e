#include <gtest/gtest.h>

#include "properties.hpp"

using namespace focml::testing;

TEST(Properties, ThousandRandomSpecies) {
  SuiteResult r = run_property_suite(1000);
  EXPECT_EQ(r.cases, 1000);
  for (const auto& law : kLaws) {
    EXPECT_GT(r.checked[law], 0) << law;
    EXPECT_EQ(r.failures[law], 0) << law;
  }
  for (const auto& m : r.messages) ADD_FAILURE() << m;
}

TEST(Properties, GeneratorIsReproducible) {
  for (std::uint64_t s : {1u, 7u, 999u}) {
    RandomCase a = random_case(s), b = random_case(s);
    EXPECT_EQ(a.source, b.source);
  }
}

TEST(Properties, GeneratorCoversShapes) {
  int complete = 0, with_params = 0;
  for (std::uint64_t s = 1; s <= 200; ++s) {
    RandomCase c = random_case(s);
    EXPECT_LE(c.methods.size(), 6u);
    complete += c.complete;
    with_params += c.source.find("species S (") != std::string::npos;
  }
  EXPECT_GT(complete, 20);
  EXPECT_GT(with_params, 20);
}
