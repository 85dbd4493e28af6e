#pragma once

// Random well-formed programs for the property suites. Each case is a base
// species and a species `S` inheriting it, with at most six methods in
// total and at most two parameters. Alongside the source we keep what each
// method of the flattened `S` refers to, known by construction rather than
// by analysis, so the dependency calculus can be checked against it.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace focml::testing {

struct MethodTruth {
  std::set<std::string> decl;   // includes "rep" for the carrier
  std::set<std::string> def;
  std::set<std::string> types;  // what the type / statement mentions
};

struct RandomCase {
  std::uint64_t seed = 0;
  std::string source;
  std::vector<std::string> methods;  // flattened S, by construction rank
  std::map<std::string, MethodTruth> truth;  // every method of S, plus "rep"
  bool complete = false;  // a collection of S is declared when true
};

RandomCase random_case(std::uint64_t seed);

// Brute-force fixpoints over the truth tables.
std::set<std::string> oracle_def_closure(const std::string& x, const std::map<std::string, MethodTruth>& t);
std::set<std::string> oracle_universe(const std::string& x, const std::map<std::string, MethodTruth>& t);

}  // namespace focml::testing
