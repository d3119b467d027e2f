#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cise/printer.hpp"
#include "cise/token_synth.hpp"
#include "test_support.hpp"

using namespace cise;
using test::finite_config;
using test::load_corpus;

namespace {

struct CountingChecker {
  vc::TaskChecker inner;
  std::shared_ptr<int> calls = std::make_shared<int>(0);

  SolverVerdict operator()(const vc::VerificationTask& task) const {
    ++*calls;
    return inner(task);
  }
};

report::Counterexample stability_cex(const vc::SpecPtr& spec, const vc::PlannedOutcome& outcome) {
  (void)spec;
  return report::build_counterexample(outcome.task, outcome.solver.model, DomainBounds{});
}

const vc::PlannedOutcome& failing_stability(const vc::PlanResult& plan) {
  for (const auto& outcome : plan.outcomes)
    if (outcome.task.kind == vc::CheckKind::Stability && outcome.verdict == vc::Verdict::Fail)
      return outcome;
  throw std::logic_error("no failing stability task");
}

}  // namespace

TEST_CASE("candidate ordering: equal-valued parameters first, then unions") {
  auto spec = load_corpus("bank_v2.spec");
  const auto& withdraw = *spec->find_operation("withdraw");
  auto inst1 = logic::instantiate(withdraw, 1);
  auto inst2 = logic::instantiate(withdraw, 2);

  // Hand-built counterexample: accountIds equal, amounts distinct.
  report::Counterexample cex;
  cex.instances.resize(2);
  cex.instances[0].op_name = cex.instances[1].op_name = "withdraw";
  cex.instances[0].instance_id = 1;
  cex.instances[1].instance_id = 2;
  cex.instances[0].params = {{"accountId", Value::elem("Client", 0)},
                             {"amount", Value::int_value(1)}};
  cex.instances[1].params = {{"accountId", Value::elem("Client", 0)},
                             {"amount", Value::int_value(2)}};

  auto ordered = synth::candidates(inst1, inst2, cex);
  REQUIRE(ordered.size() == 3);  // 2 singletons + 1 union
  // accountId pair (positions 0,0) first: its values were equal in the model
  CHECK(ordered[0].diseqs.size() == 1);
  CHECK(ordered[0].diseqs[0].left_pos == 0);
  CHECK(ordered[0].diseqs[0].right_pos == 0);
  CHECK(ordered[0].evidence_equal[0]);
  CHECK(ordered[1].diseqs[0].left_pos == 1);
  CHECK_FALSE(ordered[1].evidence_equal[0]);
  CHECK(ordered[2].diseqs.size() == 2);
}

TEST_CASE("candidates: no same-sorted cross parameters means an empty list") {
  auto spec = test::parse_text(
      "@init type E;\n@variable var x: int;\n@invariant true;\n@operations\n"
      "operation f(n: int) ensures x == n;\n"
      "operation g(e: E) ensures x == old(x) + 1;\n");
  auto inst1 = logic::instantiate(spec->operations[0], 1);
  auto inst2 = logic::instantiate(spec->operations[1], 2);
  report::Counterexample cex;
  cex.instances.resize(2);
  cex.instances[0].instance_id = 1;
  cex.instances[1].instance_id = 2;
  cex.instances[0].params = {{"n", Value::int_value(0)}};
  cex.instances[1].params = {{"e", Value::elem("E", 0)}};
  CHECK(synth::candidates(inst1, inst2, cex).empty());
}

TEST_CASE("candidates: a one-parameter self-pair yields exactly one singleton") {
  auto spec = load_corpus("bounded_counter.spec");
  auto inst1 = logic::instantiate(spec->operations[0], 1);
  auto inst2 = logic::instantiate(spec->operations[0], 2);
  report::Counterexample cex;
  cex.instances.resize(2);
  cex.instances[0].instance_id = 1;
  cex.instances[1].instance_id = 2;
  cex.instances[0].params = {{"n", Value::int_value(1)}};
  cex.instances[1].params = {{"n", Value::int_value(2)}};
  auto ordered = synth::candidates(inst1, inst2, cex);
  REQUIRE(ordered.size() == 1);
  CHECK(ordered[0].diseqs.size() == 1);
}

TEST_CASE("bank v2 synthesis reproduces the published token model") {
  auto spec = load_corpus("bank_v2.spec");
  auto checker = make_checker(finite_config());
  auto plan = vc::plan(spec, checker);
  auto result = synth::synthesize(spec, checker, plan, DomainBounds{});

  REQUIRE(result.applicable);
  REQUIRE(result.success);
  CHECK(result.validated);

  REQUIRE(result.model.restrictions.size() == 1);
  CHECK(result.model.restrictions[0].op_i == "withdraw");
  CHECK(result.model.restrictions[0].op_j == "withdraw");
  CHECK(result.model.restrictions[0].description == "parameter 1 != parameter 3");

  REQUIRE(result.model.tokens.size() == 1);
  CHECK(result.model.tokens[0].name == "tok_withdraw");
  CHECK(result.model.tokens[0].op_name == "withdraw");
  CHECK(result.model.tokens[0].arg_params == std::vector<std::string>{"accountId"});
  REQUIRE(result.model.conflicts.size() == 1);
  CHECK(result.model.conflicts[0] == std::make_pair(std::string("tok_withdraw"),
                                                    std::string("tok_withdraw")));

  // the amounts-differ candidate was tried and rejected
  bool amounts_rejected = false;
  for (const auto& step : result.log)
    amounts_rejected |= step.candidate == "parameter 2 != parameter 4" &&
                        step.status == synth::SearchStep::Status::Rejected;
  CHECK(amounts_rejected);

  std::string rendered = synth::render_token_model(result);
  CHECK(test::contains(rendered, "RESTRICTIONS"));
  CHECK(test::contains(rendered, "parameter 1 != parameter 3"));
  CHECK(test::contains(rendered, "TOKEN MODEL"));
  CHECK(test::contains(rendered, "withdraw: requires token tok_withdraw(accountId)"));
  CHECK(test::contains(rendered, "conflict: tok_withdraw tok_withdraw"));
}

TEST_CASE("forced ordering: amounts-differ first is rejected, accountIds accepted") {
  auto spec = load_corpus("bank_v2.spec");
  auto checker = make_checker(finite_config());
  auto plan = vc::plan(spec, checker);
  const auto& failing = failing_stability(plan);
  auto cex = stability_cex(spec, failing);
  auto ordered = synth::candidates(failing.task.instances[0], failing.task.instances[1], cex);
  REQUIRE(ordered.size() == 3);
  std::swap(ordered[0], ordered[1]);  // force the amounts singleton first

  std::size_t withdraw_index = 1;
  auto search = synth::search_pair(spec, checker, withdraw_index, withdraw_index,
                                   {{withdraw_index, withdraw_index}}, ordered,
                                   "(withdraw, withdraw)", true);
  REQUIRE(search.found);
  REQUIRE(search.log.size() >= 2);
  CHECK(search.log[0].candidate == "parameter 2 != parameter 4");
  CHECK(search.log[0].status == synth::SearchStep::Status::Rejected);
  CHECK(search.log[1].candidate == "parameter 1 != parameter 3");
  CHECK(search.log[1].status == synth::SearchStep::Status::Accepted);
}

TEST_CASE("evidence ordering selects the same model with fewer solver calls") {
  auto spec = load_corpus("bank_v2.spec");
  auto plain = make_checker(finite_config());
  auto plan = vc::plan(spec, plain);
  const auto& failing = failing_stability(plan);
  auto cex = stability_cex(spec, failing);
  auto evidence_ordered =
      synth::candidates(failing.task.instances[0], failing.task.instances[1], cex);

  std::size_t w = 1;
  // evidence order with early exit
  CountingChecker counted{plain};
  auto selection = synth::search_pair(spec, counted, w, w, {{w, w}}, evidence_ordered,
                                      "(withdraw, withdraw)", false);
  int evidence_calls = *counted.calls;

  // exhaustive: every candidate evaluated
  CountingChecker exhaustive{plain};
  for (const auto& candidate : evidence_ordered)
    (void)synth::search_pair(spec, exhaustive, w, w, {{w, w}}, {candidate}, "(w, w)", false);
  int exhaustive_calls = *exhaustive.calls;

  // same accepted restriction either way (the first unsat candidate is the
  // accountId singleton in both orders), fewer calls with the optimization
  REQUIRE(selection.found);
  CHECK(selection.accepted.diseqs.size() == 1);
  CHECK(selection.accepted.diseqs[0].left_pos == 0);
  CHECK(evidence_calls < exhaustive_calls);
  CHECK(evidence_calls == 1);
}

TEST_CASE("token injection round-trips through printing and verifies") {
  auto spec = load_corpus("bank_v2.spec");
  auto checker = make_checker(finite_config());
  auto plan = vc::plan(spec, checker);
  auto result = synth::synthesize(spec, checker, plan, DomainBounds{});
  REQUIRE(result.success);

  Specification injected = synth::inject_tokens(*spec, result.model);
  REQUIRE(injected.tokens.size() == 1);
  CHECK(injected.conflicting("tok_withdraw", "tok_withdraw"));
  const Operation* withdraw = injected.find_operation("withdraw");
  REQUIRE(withdraw);
  REQUIRE(withdraw->acquires.size() == 1);
  CHECK(withdraw->acquires[0].token == "tok_withdraw");

  // printable and reparseable, and the reparse verifies end to end
  std::string printed = to_source(injected);
  auto reparsed = test::parse_text(printed, "<injected>");
  auto verify = vc::plan(reparsed, checker);
  CHECK(verify.stage1_passed);
  for (const auto& outcome : verify.outcomes) CHECK(outcome.verdict == vc::Verdict::Pass);
}

TEST_CASE("parameter-independent stability failures have no token solution") {
  auto spec = load_corpus("bounded_counter.spec");
  auto checker = make_checker(finite_config());
  auto plan = vc::plan(spec, checker);
  auto result = synth::synthesize(spec, checker, plan, DomainBounds{});
  REQUIRE(result.applicable);
  CHECK_FALSE(result.success);
  CHECK(test::contains(result.failure, "(add, add)"));
  std::string rendered = synth::render_token_model(result);
  CHECK(test::contains(rendered, "none"));
  CHECK(test::contains(rendered, "no restriction stabilizes"));
}

TEST_CASE("two failing pairs yield two restriction entries in stable order") {
  auto spec = test::parse_text(
      "@init\ntype K;\nfunction probe(): K;\n"
      "@variable\nvar stock: [K]int;\nvar credit: [K]int;\n"
      "@equals\nequals (a: [K]int, b: [K]int) := (forall k: K :: a[k] == b[k]);\n"
      "@invariant\nstock[probe()] >= 0 && credit[probe()] >= 0;\n"
      "@operations\n"
      "operation take(k: K, n: int)\n"
      "  requires n > 0;\n  requires stock[k] >= n;\n"
      "  ensures stock == old(stock)[k := old(stock)[k] - n];\n"
      "operation spend(k: K, n: int)\n"
      "  requires n > 0;\n  requires credit[k] >= n;\n"
      "  ensures credit == old(credit)[k := old(credit)[k] - n];\n");
  auto checker = make_checker(finite_config(-1, 1));
  auto plan = vc::plan(spec, checker);
  DomainBounds bounds;
  bounds.int_lo = -1;
  bounds.int_hi = 1;
  auto result = synth::synthesize(spec, checker, plan, bounds);
  REQUIRE(result.success);
  CHECK(result.validated);
  REQUIRE(result.model.restrictions.size() == 2);
  CHECK(result.model.restrictions[0].op_i == "spend");  // ordered by name pairs
  CHECK(result.model.restrictions[1].op_i == "take");
  REQUIRE(result.model.tokens.size() == 2);
  CHECK(result.model.tokens[0].name == "tok_spend");
  CHECK(result.model.tokens[1].name == "tok_take");
  REQUIRE(result.model.conflicts.size() == 2);
}

TEST_CASE("union-only failures explore larger sets; the accepted set is minimal") {
  // Stability reads two keys, so every singleton and two-element union leaves
  // some interference open; at cardinality 2 the first three-way disequality
  // set pins the instances onto disjoint keys.
  auto spec = test::parse_text(
      "@init\ntype K;\nfunction probe(): K;\n"
      "@variable\nvar stock: [K]int;\n"
      "@equals\nequals (a: [K]int, b: [K]int) := (forall k: K :: a[k] == b[k]);\n"
      "@invariant\nstock[probe()] >= 0;\n"
      "@operations\n"
      "operation pay(a: K, b: K, n: int)\n"
      "  requires n > 0;\n  requires stock[a] >= n;\n  requires stock[b] >= n;\n"
      "  ensures stock == old(stock)[a := old(stock)[a] - n][b := old(stock)[b] - n];\n");
  auto checker = make_checker(finite_config(-2, 2));
  auto plan = vc::plan(spec, checker);
  DomainBounds bounds;
  bounds.int_lo = -2;
  bounds.int_hi = 2;
  auto result = synth::synthesize(spec, checker, plan, bounds);
  REQUIRE(result.applicable);
  REQUIRE(result.success);
  CHECK(result.validated);
  REQUIRE(result.model.restrictions.size() == 1);
  const auto& accepted = result.model.restrictions[0].diseqs;
  REQUIRE(accepted.size() == 3);
  for (const auto& d : accepted) {
    CHECK(d.left_pos <= 1);  // the K-sorted parameters, not the amount
    CHECK(d.right_pos <= 1);
  }

  // minimality: dropping any single disequality leaves the query satisfiable
  const Operation& pay = spec->operations[0];
  for (std::size_t skip = 0; skip < accepted.size(); ++skip) {
    std::vector<vc::ParamDisequality> subset;
    for (std::size_t i = 0; i < accepted.size(); ++i)
      if (i != skip) subset.push_back(accepted[i]);
    auto verdict = solve::check_finite(vc::vc_stability(spec, pay, pay, subset), bounds);
    CHECK(verdict.is_sat());
  }
}

TEST_CASE("synthesis is not applicable without failing stability tasks") {
  auto spec = load_corpus("gcounter.spec");
  auto checker = make_checker(finite_config());
  auto plan = vc::plan(spec, checker);
  auto result = synth::synthesize(spec, checker, plan, DomainBounds{});
  CHECK_FALSE(result.applicable);
}
