// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "fixtures.hpp"
#include "focml/cli.hpp"
#include "focml/report.hpp"
#include "golden.hpp"
#include "properties.hpp"

using namespace focml;
using namespace focml::testing;
namespace fs = std::filesystem;

namespace {

struct Check {
  std::vector<std::string> problems;
  void expect(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
};

const Diagnostic* first(const Program& p, ErrorKind k, Severity s = Severity::Error) {
  for (const auto& d : p.diagnostics)
    if (d.kind == k && d.severity == s) return &d;
  return nullptr;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& x : v) out += (out.empty() ? "" : " ") + x;
  return out;
}

void golden(Check& c) {
  Program p = compile_samples({"example.fcl"});
  c.expect(p.ok(), "example.fcl does not compile");
  for (const auto& [name, diffs] : golden_differences(p))
    for (const auto& d : diffs) c.expect(false, name + ": " + d);
}

void rejections(Check& c) {
  Program wrong = compile_samples({"wrong.fcl"});
  const Diagnostic* leak = first(wrong, ErrorKind::WrongCarrierLeak);
  c.expect(leak != nullptr, "Wrong: no WrongCarrierLeak");

  Program eo = compile_samples({"evenodd.fcl"});
  const Diagnostic* cyc = first(eo, ErrorKind::CycleInDependencies);
  c.expect(cyc != nullptr, "even/odd: no CycleInDependencies");
  if (cyc) {
    // A length-2 cycle: two distinct methods, closed back on the first.
    const auto& w = cyc->witness;
    c.expect(w.size() == 3 && w[0] == w[2] && w[0] != w[1], "even/odd witness: " + join(w));
  }

  Program inc = compile_samples({"incomplete.fcl"});
  const Diagnostic* ic = first(inc, ErrorKind::IncompleteSpecies);
  c.expect(ic != nullptr, "unproved property: no IncompleteSpecies");
  if (ic) c.expect(ic->witness == std::vector<std::string>{"nextMoves"}, "incomplete witness: " + join(ic->witness));
}

void reverted(Check& c) {
  std::vector<std::string> args = {"focmlc", "check", sample_path("example.fcl"), sample_path("isine.fcl")};
  std::ostringstream out, err;
  run(args, out, err);
  c.expect(err.str().find("warning: [RevertedProof]") != std::string::npos, "check shows no RevertedProof warning");

  Program p = compile_samples({"example.fcl", "isine.fcl"});
  const Diagnostic* w = first(p, ErrorKind::RevertedProof, Severity::Warning);
  c.expect(w && w->witness == std::vector<std::string>{"lowMin", "filter"}, "lowMin not reverted by filter");
  const Entry* e = p.find("IsInE");
  const NfMethod* low = e && e->species ? e->species->find("lowMin") : nullptr;
  c.expect(low && !low->valid_proof, "IsInE.lowMin still proved");
  const Diagnostic* ic = first(p, ErrorKind::IncompleteSpecies);
  c.expect(ic && ic->witness == std::vector<std::string>{"lowMin"}, "implementing IsInE is not IncompleteSpecies(lowMin)");

  Program fixed = compile_samples({"example.fcl", "isine_fixed.fcl"});
  c.expect(fixed.ok(), "a new proof of lowMin does not restore completeness");
}

void evaluation(Check& c) {
  // Oracle: filter read off the source with machine integers, gt = not lt and not eq.
  auto oracle = [](long x) -> std::pair<long, std::string> {
    if (x < 5) return {5, "Too_low"};
    if (!(x < 10) && x != 10) return {10, "Too_high"};
    return {x, "In_range"};
  };
  const std::vector<std::pair<long, std::string>> expected = {
      {3, "(5, Too_low)"}, {5, "(5, In_range)"}, {7, "(7, In_range)"}, {10, "(10, In_range)"}, {12, "(10, Too_high)"}};
  Program p = compile_samples({"example.fcl"});
  for (const auto& [x, shown] : expected) {
    auto [v, s] = oracle(x);
    std::string o = "(" + std::to_string(v) + ", " + s + ")";
    c.expect(o == shown, "oracle disagrees on " + std::to_string(x) + ": " + o);
    try {
      std::string got = show_value(*eval_call(p, "In_5_10", "filter", {Value::integer(x)}));
      c.expect(got == o, "filter(" + std::to_string(x) + ") = " + got + ", oracle " + o);
    } catch (const std::exception& e) {
      c.expect(false, "filter(" + std::to_string(x) + "): " + e.what());
    }
  }
}

void properties(Check& c) {
  SuiteResult r = run_property_suite(1000);
  c.expect(r.cases >= 1000, "only " + std::to_string(r.cases) + " cases");
  for (const auto& law : kLaws) {
    c.expect(r.checked[law] > 0, law + " never checked");
    c.expect(r.failures[law] == 0, law + ": " + std::to_string(r.failures[law]) + " failing cases");
  }
  for (const auto& m : r.messages) c.expect(false, m);
}

void determinism(Check& c) {
  fs::path dir = fs::temp_directory_path() / "focml_acceptance";
  fs::create_directories(dir);
  std::vector<std::string> inputs = {sample_path("example.fcl"), sample_path("watch.fcl"), sample_path("close.fcl")};
  std::map<std::string, std::string> first_run;
  for (int round = 0; round < 2; ++round) {
    std::map<std::string, std::string> outputs;
    for (const auto& [cmd, flags] : std::vector<std::pair<std::string, std::vector<std::string>>>{
             {"deps", {"--json", (dir / "deps.json").string()}},
             {"emit", {"--logical", (dir / "out.v").string(), "--comp", (dir / "out.ml").string()}}}) {
      std::vector<std::string> args = {"focmlc", cmd};
      args.insert(args.end(), flags.begin(), flags.end());
      args.insert(args.end(), inputs.begin(), inputs.end());
      std::ostringstream out, err;
      c.expect(run(args, out, err) == kExitOk, cmd + " failed: " + err.str());
    }
    for (const char* f : {"deps.json", "out.v", "out.ml"}) {
      outputs[f] = slurp((dir / f).string());
      fs::remove(dir / f);
    }
    if (round == 0) {
      first_run = outputs;
      for (const auto& [f, text] : outputs) c.expect(!text.empty(), std::string(f) + " is empty");
    } else {
      for (const auto& [f, text] : outputs) c.expect(text == first_run[f], std::string(f) + " differs between runs");
    }
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"golden logical listings", golden},
      {"rejections (carrier leak, cycle, incomplete)", rejections},
      {"redefinition reverts proof", reverted},
      {"evaluator matches oracle", evaluation},
      {"property suites (1000 random species)", properties},
      {"deterministic outputs", determinism},
  };
  bool all = true;
  int n = 0;
  for (const auto& [name, fn] : criteria) {
    Check c;
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.problems.push_back(std::string("exception: ") + e.what());
    }
    ++n;
    std::cout << (c.problems.empty() ? "PASS" : "FAIL") << " " << n << " " << name << "\n";
    for (const auto& p : c.problems) std::cout << "     " << p << "\n";
    all = all && c.problems.empty();
  }
  return all ? 0 : 1;
}
