#pragma once

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.hpp"

namespace cise::test {

/// Generates small well-sorted specifications as DSL text: one uninterpreted
/// sort, up to three state variables, two operations with up to two
/// parameters, template-based clauses. Deterministic for a fixed seed.
class SpecFuzzer {
public:
  explicit SpecFuzzer(unsigned seed) : rng_(seed) {}

  std::string next_source() {
    bool use_x = chance(80);
    bool use_flag = chance(35);
    bool use_map = chance(45);
    if (!use_x && !use_flag && !use_map) use_x = true;

    std::ostringstream os;
    os << "@init\ntype E;\nfunction probe(): E;\n\n@variable\n";
    if (use_x) os << "var x: int;\n";
    if (use_flag) os << "var flag: bool;\n";
    if (use_map) os << "var m: [E]int;\n";

    os << "\n@equals\n";
    if (use_map && chance(60))
      os << "equals (a: [E]int, b: [E]int) := (forall k: E :: a[k] == b[k]);\n";

    os << "\n@invariant\n" << invariant(use_x, use_map) << ";\n\n@operations\n";
    for (int op = 0; op < 2; ++op) os << operation(op, use_x, use_flag, use_map);
    return os.str();
  }

  vc::SpecPtr next_spec() { return parse_text(next_source(), "<fuzz>"); }

private:
  std::mt19937 rng_;

  bool chance(int percent) { return static_cast<int>(rng_() % 100) < percent; }
  int pick(int n) { return static_cast<int>(rng_() % static_cast<unsigned>(n)); }

  std::string invariant(bool use_x, bool use_map) {
    std::vector<std::string> pool = {"true"};
    if (use_x) {
      pool.push_back("x >= 0");
      pool.push_back("x <= 2");
      pool.push_back("x >= -2");
    }
    if (use_map) pool.push_back("m[probe()] >= 0");
    return pool[static_cast<std::size_t>(pick(static_cast<int>(pool.size())))];
  }

  std::string operation(int index, bool use_x, bool use_flag, bool use_map) {
    bool int_param = chance(70);
    bool elem_param = use_map ? chance(70) : chance(20);

    std::ostringstream os;
    os << "\noperation op" << index << "(";
    bool first = true;
    if (int_param) {
      os << "n: int";
      first = false;
    }
    if (elem_param) {
      if (!first) os << ", ";
      os << "e: E";
    }
    os << ")\n";

    std::vector<std::string> pres;
    if (int_param && chance(60)) pres.push_back("n > 0");
    if (int_param && chance(20)) pres.push_back("n <= 2");
    if (use_x && chance(35)) pres.push_back("x >= 0");
    if (use_flag && chance(30)) pres.push_back(chance(50) ? "flag == true" : "flag == false");
    if (use_map && elem_param && chance(35)) pres.push_back("m[e] >= 0");
    for (const auto& p : pres) os << "  requires " << p << ";\n";

    // Choose one variable to update; the others stay framed.
    std::vector<std::string> posts;
    int target = pick(3);
    if (target == 0 && use_x) {
      std::vector<std::string> pool = {"x == old(x) + 1", "x == old(x) - 1"};
      if (int_param) {
        pool.push_back("x == old(x) + n");
        pool.push_back("x == n");
      }
      posts.push_back(pool[static_cast<std::size_t>(pick(static_cast<int>(pool.size())))]);
    } else if (target == 1 && use_flag) {
      posts.push_back(chance(50) ? "flag == true" : "flag == false");
    } else if (use_map && elem_param) {
      std::vector<std::string> pool = {"m == old(m)[e := old(m)[e] + 1]",
                                       "m == old(m)[e := 0]"};
      if (int_param) pool.push_back("m == old(m)[e := old(m)[e] + n]");
      posts.push_back(pool[static_cast<std::size_t>(pick(static_cast<int>(pool.size())))]);
    } else if (use_x) {
      posts.push_back("x == old(x) + 1");
    } else if (use_flag) {
      posts.push_back("flag == true");
    }
    if (posts.empty()) posts.push_back("true");
    for (const auto& p : posts) os << "  ensures " << p << ";\n";
    return os.str();
  }
};

}  // namespace cise::test
