#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "fixtures.hpp"
#include "focml/cli.hpp"
#include "focml/report.hpp"

using namespace focml;
using namespace focml::testing;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun focmlc(std::vector<std::string> args) {
  args.insert(args.begin(), "focmlc");
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("focml_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
  fs::create_directories(d);
  return d / name;
}

}  // namespace

TEST(Cli, CheckExitCodes) {
  EXPECT_EQ(focmlc({"check", sample_path("example.fcl")}).code, kExitOk);
  CliRun wrong = focmlc({"check", sample_path("wrong.fcl")});
  EXPECT_EQ(wrong.code, kExitCompileError);
  EXPECT_NE(wrong.err.find("[WrongCarrierLeak]"), std::string::npos);
  EXPECT_NE(wrong.err.find("wrong.fcl:"), std::string::npos);
  EXPECT_EQ(focmlc({"check", sample_path("does_not_exist.fcl")}).code, kExitUsage);
  EXPECT_EQ(focmlc({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(focmlc({"check"}).code, kExitUsage);
}

TEST(Cli, WarningsDoNotFail) {
  CliRun r = focmlc({"check", sample_path("example.fcl"), sample_path("isine_fixed.fcl")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.err.find("[AdmittedProof]"), std::string::npos);
  EXPECT_EQ(r.err.find("error:"), std::string::npos);
}

TEST(Cli, CycleWitness) {
  CliRun r = focmlc({"check", sample_path("evenodd.fcl")});
  EXPECT_EQ(r.code, kExitCompileError);
  EXPECT_NE(r.err.find("witness: even odd even"), std::string::npos) << r.err;
}

TEST(Cli, DepsJsonRoundTrip) {
  CliRun r = focmlc({"deps", sample_path("example.fcl"), sample_path("watch.fcl")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  Json j = Json::parse(r.out);
  auto back = deps_from_json(j);
  Program p = compile_samples({"example.fcl", "watch.fcl"});
  std::size_t n = 0;
  for (const auto& e : p.entries) {
    if (!e.deps) continue;
    ++n;
    ASSERT_TRUE(back.count(e.name)) << e.name;
    EXPECT_EQ(back.at(e.name), *e.deps) << e.name;
  }
  EXPECT_EQ(back.size(), n);
  EXPECT_EQ(j["TheInt"]["ltNotGt"]["min_env"][3]["keep"], "TypeAndBody");
}

TEST(Cli, DepsToFile) {
  fs::path f = scratch("deps.json");
  ASSERT_EQ(focmlc({"deps", "--json", f.string(), sample_path("close.fcl")}).code, kExitOk);
  Json j = Json::parse(slurp(f.string()));
  EXPECT_EQ(j["B"]["th1"]["params"]["P"].size(), 4u);
}

TEST(Cli, EmitFilesAreDeterministic) {
  fs::path l1 = scratch("a.v"), c1 = scratch("a.ml"), l2 = scratch("b.v"), c2 = scratch("b.ml");
  auto files = {sample_path("example.fcl"), sample_path("watch.fcl")};
  std::vector<std::string> a = {"emit", "--logical", l1.string(), "--comp", c1.string()};
  std::vector<std::string> b = {"emit", "--logical", l2.string(), "--comp", c2.string()};
  a.insert(a.end(), files.begin(), files.end());
  b.insert(b.end(), files.begin(), files.end());
  ASSERT_EQ(focmlc(a).code, kExitOk);
  ASSERT_EQ(focmlc(b).code, kExitOk);
  EXPECT_FALSE(slurp(l1.string()).empty());
  EXPECT_EQ(slurp(l1.string()), slurp(l2.string()));
  EXPECT_EQ(slurp(c1.string()), slurp(c2.string()));
}

TEST(Cli, EmitRefusesErrors) {
  EXPECT_EQ(focmlc({"emit", sample_path("wrong.fcl")}).code, kExitCompileError);
}

TEST(Cli, Eval) {
  CliRun r = focmlc({"eval", "--call", "In_5_10!filter(3)", sample_path("example.fcl")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "(5, Too_low)\n");
  CliRun bad = focmlc({"eval", "--call", "In_5_10!nothing(3)", sample_path("example.fcl")});
  EXPECT_NE(bad.code, kExitOk);
}

TEST(Cli, Doc) {
  CliRun r = focmlc({"doc", sample_path("example.fcl"), sample_path("isine.fcl")});
  EXPECT_NE(r.out.find("species TheInt (complete)"), std::string::npos);
  EXPECT_NE(r.out.find("  gt : let, defined, from OrdData"), std::string::npos);
  EXPECT_NE(r.out.find("lowMin"), std::string::npos);
}
