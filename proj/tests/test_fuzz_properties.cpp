#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cise/printer.hpp"
#include "cise/solver.hpp"
#include "spec_fuzzer.hpp"

using namespace cise;
using test::SpecFuzzer;

namespace {

constexpr int kQuickSpecs = 60;  // the acceptance suite runs the full 200

DomainBounds small_bounds() {
  DomainBounds bounds;
  bounds.int_lo = -2;
  bounds.int_hi = 2;
  bounds.default_cardinality = 2;
  return bounds;
}

SolverVerdict solve_task(const vc::VerificationTask& task) {
  return solve::check_finite(task, small_bounds());
}

}  // namespace

TEST_CASE("generated specifications parse and print to a fixpoint") {
  SpecFuzzer fuzz(7);
  for (int i = 0; i < kQuickSpecs; ++i) {
    std::string source = fuzz.next_source();
    CAPTURE(source);
    auto spec = parse_spec(source, "<fuzz>");
    std::string printed = to_source(spec);
    auto reparsed = parse_spec(printed, "<fuzz2>");
    CHECK(to_source(reparsed) == printed);
  }
}

TEST_CASE("pair checks are symmetric in their operation order") {
  SpecFuzzer fuzz(11);
  for (int i = 0; i < kQuickSpecs; ++i) {
    auto spec = fuzz.next_spec();
    const auto& ops = spec->operations;
    for (std::size_t a = 0; a < ops.size(); ++a) {
      for (std::size_t b = a; b < ops.size(); ++b) {
        auto opp_ab = solve_task(vc::vc_opposition(spec, ops[a], ops[b]));
        auto opp_ba = solve_task(vc::vc_opposition(spec, ops[b], ops[a]));
        CAPTURE(i);
        CHECK(opp_ab.kind == opp_ba.kind);

        auto comm_ab = solve_task(vc::vc_commutativity(spec, ops[a], ops[b]));
        auto comm_ba = solve_task(vc::vc_commutativity(spec, ops[b], ops[a]));
        CHECK(comm_ab.kind == comm_ba.kind);
      }
    }
  }
}

TEST_CASE("self-pair stability is direction-symmetric") {
  SpecFuzzer fuzz(13);
  for (int i = 0; i < kQuickSpecs; ++i) {
    auto spec = fuzz.next_spec();
    for (const auto& op : spec->operations) {
      auto one = solve_task(vc::vc_stability(spec, op, op));
      auto two = solve_task(vc::vc_stability(spec, op, op));
      CHECK(one.kind == two.kind);
    }
  }
  // and on the bank: both self pairs give the same verdict in either role
  auto bank = test::load_corpus("bank_v2.spec");
  for (const auto& op : bank->operations) {
    auto verdict = solve::check_finite(vc::vc_stability(bank, op, op), DomainBounds{});
    auto again = solve::check_finite(vc::vc_stability(bank, op, op), DomainBounds{});
    CHECK(verdict.kind == again.kind);
  }
}

TEST_CASE("adding restrictions never turns an unsat stability query sat") {
  SpecFuzzer fuzz(17);
  std::mt19937 rng(23);
  for (int i = 0; i < kQuickSpecs; ++i) {
    auto spec = fuzz.next_spec();
    const auto& ops = spec->operations;
    for (std::size_t a = 0; a < ops.size(); ++a) {
      for (std::size_t b = 0; b < ops.size(); ++b) {
        // all same-sorted parameter pairs across the two instances
        std::vector<vc::ParamDisequality> all;
        for (std::size_t p = 0; p < ops[a].params.size(); ++p)
          for (std::size_t q = 0; q < ops[b].params.size(); ++q) {
            if (ops[a].params[p].sort != ops[b].params[q].sort) continue;
            vc::ParamDisequality d;
            d.left_pos = static_cast<int>(p);
            d.right_pos = static_cast<int>(q);
            all.push_back(d);
          }
        if (all.empty()) continue;

        // R = random subset, R' = R plus one more
        std::vector<vc::ParamDisequality> smaller, larger;
        for (const auto& d : all)
          if (rng() % 2) smaller.push_back(d);
        larger = smaller;
        larger.push_back(all[rng() % all.size()]);

        auto with_smaller = solve_task(vc::vc_stability(spec, ops[a], ops[b], smaller));
        auto with_larger = solve_task(vc::vc_stability(spec, ops[a], ops[b], larger));
        CAPTURE(i);
        if (with_smaller.is_unsat()) CHECK(with_larger.is_unsat());
      }
    }
  }
}
