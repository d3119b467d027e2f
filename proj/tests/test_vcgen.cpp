#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cise/solver.hpp"
#include "test_support.hpp"

using namespace cise;
using test::find_outcome;
using test::finite_config;
using test::load_corpus;

namespace {

SolverVerdict solve_finite(const vc::VerificationTask& task, long long lo = -4, long long hi = 4,
                           int card = 2) {
  DomainBounds bounds;
  bounds.int_lo = lo;
  bounds.int_hi = hi;
  bounds.default_cardinality = card;
  return solve::check_finite(task, bounds);
}

const Operation& op_named(const Specification& spec, const std::string& name) {
  return *spec.find_operation(name);
}

}  // namespace

TEST_CASE("safety: unguarded deposit admits a negative amount, guarded does not") {
  auto v1 = load_corpus("bank_v1.spec");
  auto verdict = solve_finite(vc::vc_safety(v1, op_named(*v1, "deposit")));
  REQUIRE(verdict.is_sat());
  CHECK(verdict.model.assignments.at("amount#1").as_int() < 0);

  auto v2 = load_corpus("bank_v2.spec");
  CHECK(solve_finite(vc::vc_safety(v2, op_named(*v2, "deposit"))).is_unsat());
}

TEST_CASE("safety: a no-op operation preserves any invariant") {
  auto spec = test::parse_text(
      "@variable var x: int;\n@invariant x >= 0;\n@operations\n"
      "operation nop() ensures true;\n");
  CHECK(solve_finite(vc::vc_safety(spec, spec->operations[0])).is_unsat());
}

TEST_CASE("anomaly: satisfiable operations pass, contradictions fail") {
  auto v2 = load_corpus("bank_v2.spec");
  CHECK(solve_finite(vc::vc_anomaly(v2, op_named(*v2, "withdraw"))).is_sat());

  auto requires_false = load_corpus("contradictory_requires.spec");
  CHECK(solve_finite(vc::vc_anomaly(requires_false, op_named(*requires_false, "never")))
            .is_unsat());

  auto ensures_both = load_corpus("contradictory_ensures.spec");
  CHECK(solve_finite(vc::vc_anomaly(ensures_both, op_named(*ensures_both, "impossible")))
            .is_unsat());
}

TEST_CASE("completeness: stores are functional, lower bounds are not") {
  auto v2 = load_corpus("bank_v2.spec");
  CHECK(solve_finite(vc::vc_completeness(v2, op_named(*v2, "deposit")), 0, 2).is_unsat());

  auto under = load_corpus("underdetermined.spec");
  CHECK(solve_finite(vc::vc_completeness(under, op_named(*under, "bump"))).is_sat());

  auto nop = test::parse_text(
      "@variable var x: int;\n@invariant true;\n@operations\n"
      "operation f() ensures true;\n");
  CHECK(solve_finite(vc::vc_completeness(nop, nop->operations[0])).is_unsat());
}

TEST_CASE("opposition: concurrent pairs are sat, contradictory guards unsat") {
  auto v2 = load_corpus("bank_v2.spec");
  CHECK(solve_finite(vc::vc_opposition(v2, op_named(*v2, "withdraw"), op_named(*v2, "withdraw")))
            .is_sat());

  auto flags = load_corpus("opposed_flags.spec");
  CHECK(solve_finite(
            vc::vc_opposition(flags, op_named(*flags, "scale_up"), op_named(*flags, "scale_down")))
            .is_unsat());
}

TEST_CASE("opposition with a self-conflicting token forces distinct arguments") {
  auto tokens = load_corpus("bank_v2_tokens.spec");
  auto verdict = solve_finite(
      vc::vc_opposition(tokens, op_named(*tokens, "withdraw"), op_named(*tokens, "withdraw")));
  REQUIRE(verdict.is_sat());
  CHECK(verdict.model.assignments.at("accountId#1") !=
        verdict.model.assignments.at("accountId#2"));
}

TEST_CASE("stability of concurrent withdraws across candidate restrictions") {
  auto v2 = load_corpus("bank_v2.spec");
  const Operation& withdraw = op_named(*v2, "withdraw");

  // no restrictions: fails, with both accountIds equal in the first model
  auto plain = solve_finite(vc::vc_stability(v2, withdraw, withdraw));
  REQUIRE(plain.is_sat());
  CHECK(plain.model.assignments.at("accountId#1") == plain.model.assignments.at("accountId#2"));

  // accountIds forced apart (parameter positions 0 and 0): passes
  vc::ParamDisequality accounts;
  accounts.left_pos = 0;
  accounts.right_pos = 0;
  CHECK(solve_finite(vc::vc_stability(v2, withdraw, withdraw, {accounts})).is_unsat());

  // amounts forced apart (positions 1 and 1): still fails
  vc::ParamDisequality amounts;
  amounts.left_pos = 1;
  amounts.right_pos = 1;
  CHECK(solve_finite(vc::vc_stability(v2, withdraw, withdraw, {amounts})).is_sat());
}

TEST_CASE("commutativity: additions commute, last-writer assignment does not") {
  auto v2 = load_corpus("bank_v2.spec");
  CHECK(solve_finite(vc::vc_commutativity(v2, op_named(*v2, "deposit"), op_named(*v2, "deposit")),
                     0, 3)
            .is_unsat());

  auto lww = load_corpus("last_writer_register.spec");
  auto verdict =
      solve_finite(vc::vc_commutativity(lww, lww->operations[0], lww->operations[0]));
  REQUIRE(verdict.is_sat());
  CHECK(verdict.model.assignments.at("v#1") != verdict.model.assignments.at("v#2"));

  auto with_nop = test::parse_text(
      "@variable var x: int;\n@invariant true;\n@operations\n"
      "operation set(v: int) ensures x == v;\n"
      "operation nop() ensures true;\n");
  CHECK(solve_finite(vc::vc_commutativity(with_nop, with_nop->operations[0],
                                          with_nop->operations[1]))
            .is_unsat());
}

TEST_CASE("plan emits the documented task mix") {
  auto checker = make_checker(finite_config());

  // bank v2: 3 kinds x 2 ops, then 3 pairs with both stability directions for
  // the cross pair only
  auto v2 = load_corpus("bank_v2.spec");
  auto plan = vc::plan(v2, checker);
  int stage1 = 0, opposition = 0, stability = 0, commutativity = 0;
  for (const auto& outcome : plan.outcomes) {
    switch (outcome.task.kind) {
      case vc::CheckKind::Safety:
      case vc::CheckKind::Anomaly:
      case vc::CheckKind::Completeness: ++stage1; break;
      case vc::CheckKind::Opposition: ++opposition; break;
      case vc::CheckKind::Stability: ++stability; break;
      case vc::CheckKind::Commutativity: ++commutativity; break;
    }
  }
  CHECK(stage1 == 6);
  CHECK(opposition == 3);
  CHECK(stability == 4);
  CHECK(commutativity == 3);
  CHECK(plan.stage1_passed);

  // a single nullary operation: 3 stage-1 tasks + opposition + at most 2 more
  auto tiny = test::parse_text(
      "@variable var x: int;\n@invariant true;\n@operations\n"
      "operation f() ensures x == old(x);\n");
  auto tiny_plan = vc::plan(tiny, checker);
  CHECK(tiny_plan.outcomes.size() == 6);  // 3 + opposition + 1 stability + 1 commutativity

  // bank v1 stops after stage 1
  auto v1 = load_corpus("bank_v1.spec");
  auto v1_plan = vc::plan(v1, checker);
  CHECK(v1_plan.outcomes.size() == 6);
  CHECK_FALSE(v1_plan.stage1_passed);
  CHECK_FALSE(v1_plan.stage2_run);
}

TEST_CASE("an opposed pair skips its stability and commutativity tasks") {
  auto flags = load_corpus("opposed_flags.spec");
  auto plan = vc::plan(flags, make_checker(finite_config()));
  CHECK(find_outcome(plan, vc::CheckKind::Opposition, "opposition(scale_up, scale_down)"));
  CHECK_FALSE(find_outcome(plan, vc::CheckKind::Stability, "stability(scale_up, scale_down)"));
  CHECK_FALSE(find_outcome(plan, vc::CheckKind::Stability, "stability(scale_down, scale_up)"));
  CHECK_FALSE(
      find_outcome(plan, vc::CheckKind::Commutativity, "commutativity(scale_up, scale_down)"));
  // every emitted task still passed
  for (const auto& outcome : plan.outcomes) CHECK(outcome.verdict == vc::Verdict::Pass);
}

TEST_CASE("every free symbol of every corpus query is decodable") {
  const char* files[] = {"bank_v1.spec", "bank_v2.spec", "bank_v2_tokens.spec",
                         "twop_set.spec", "opposed_flags.spec"};
  for (const char* name : files) {
    auto spec = load_corpus(name);
    auto plan = vc::plan(spec, make_checker(finite_config()));
    for (const auto& outcome : plan.outcomes) {
      for_each_free_var(
          outcome.task.query,
          [&](const Expr& v) {
            CAPTURE(name);
            CAPTURE(v.name);
            CHECK(outcome.task.decode.count(v.name) == 1);
          },
          [&](const Expr& a) {
            if (a.args.empty()) CHECK(outcome.task.decode.count(a.name) == 1);
          });
    }
  }
}

TEST_CASE("polarity is expect-sat exactly for anomaly and opposition") {
  auto v2 = load_corpus("bank_v2.spec");
  const Operation& d = op_named(*v2, "deposit");
  CHECK(vc::vc_safety(v2, d).polarity == vc::Polarity::ExpectUnsat);
  CHECK(vc::vc_anomaly(v2, d).polarity == vc::Polarity::ExpectSat);
  CHECK(vc::vc_completeness(v2, d).polarity == vc::Polarity::ExpectUnsat);
  CHECK(vc::vc_opposition(v2, d, d).polarity == vc::Polarity::ExpectSat);
  CHECK(vc::vc_stability(v2, d, d).polarity == vc::Polarity::ExpectUnsat);
  CHECK(vc::vc_commutativity(v2, d, d).polarity == vc::Polarity::ExpectUnsat);
}
