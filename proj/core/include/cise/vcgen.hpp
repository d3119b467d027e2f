#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "cise/logic.hpp"
#include "cise/value.hpp"

namespace cise::vc {

/// The six solver-backed checks. The syntax check is the parser itself.
/// Safety/Anomaly/Completeness form stage 1 (sequential), the pairwise
/// checks form stage 2 (concurrent).
enum class CheckKind { Safety, Anomaly, Completeness, Opposition, Stability, Commutativity };

int stage(CheckKind kind);
std::string to_string(CheckKind kind);

enum class Polarity { ExpectUnsat, ExpectSat };

/// Required disequality between two instance parameters, identified by
/// instance id (1 or 2) and 0-based position within that instance's
/// parameter list. Reports phrase positions 1-based over the concatenation
/// of both instances' parameter lists.
struct ParamDisequality {
  int left_instance = 1;
  int left_pos = 0;
  int right_instance = 2;
  int right_pos = 0;

  bool operator==(const ParamDisequality& o) const {
    return left_instance == o.left_instance && left_pos == o.left_pos &&
           right_instance == o.right_instance && right_pos == o.right_pos;
  }
};

struct SymbolInfo {
  enum class Kind { StateVar, Param, Function };
  Kind kind = Kind::StateVar;
  Sort sort;
  // StateVar
  std::string base;
  int state_index = 0;
  // Param
  int instance_id = 0;
  std::string op_name;
  std::string param_name;  // original (unrenamed) name
  int param_pos = 0;       // within the instance
};

/// The clause a counterexample blames: source location, source-level text,
/// and the formula that must evaluate to false under a Sat model of an
/// expect-unsat task (the replay check).
struct FailingClause {
  SourceSpan span;
  std::string text;
  ExprPtr replay;
};

/// One solver query plus everything needed to decode its models back to
/// source terms. Tasks are self-contained immutable values; independent
/// tasks may be discharged concurrently.
struct VerificationTask {
  CheckKind kind = CheckKind::Safety;
  std::shared_ptr<const Specification> spec;
  std::vector<logic::OpInstance> instances;  // one (stage 1) or two (stage 2)
  ExprPtr query;                             // spec axioms conjoined in front
  Polarity polarity = Polarity::ExpectUnsat;
  std::map<std::string, SymbolInfo> decode;
  std::vector<ParamDisequality> restrictions;
  FailingClause failing;

  std::string describe() const;  // "stability(withdraw, withdraw)"

  /// 1-based position of (instance, pos) in the concatenated parameter lists.
  int concat_position(int instance_id, int pos) const;
};

using SpecPtr = std::shared_ptr<const Specification>;

VerificationTask vc_safety(const SpecPtr& spec, const Operation& op);
VerificationTask vc_anomaly(const SpecPtr& spec, const Operation& op);
VerificationTask vc_completeness(const SpecPtr& spec, const Operation& op);
VerificationTask vc_opposition(const SpecPtr& spec, const Operation& op_i, const Operation& op_j);
VerificationTask vc_stability(const SpecPtr& spec, const Operation& op_i, const Operation& op_j,
                              std::vector<ParamDisequality> restrictions = {});
VerificationTask vc_commutativity(const SpecPtr& spec, const Operation& op_i,
                                  const Operation& op_j);

/// No-conflicting-token-co-held constraint between the two instances: for
/// each declared-conflicting pair of acquired templates, their argument
/// tuples differ in at least one position. True when tokenless.
ExprPtr token_compatibility(const Specification& spec, const logic::OpInstance& a,
                            const logic::OpInstance& b);

enum class Verdict { Pass, Fail, Unknown };
std::string to_string(Verdict v);

/// polarity/kind-aware mapping of solver results to verdicts. Opposition's
/// unsat is a Pass (the pair can never run concurrently), not a failure.
Verdict judge(const VerificationTask& task, const SolverVerdict& result);

struct PlannedOutcome {
  VerificationTask task;
  SolverVerdict solver;
  Verdict verdict = Verdict::Pass;
  std::string note;  // "opposed; pair skipped", "bounded", ...
};

using TaskChecker = std::function<SolverVerdict(const VerificationTask&)>;

struct PlanResult {
  std::vector<PlannedOutcome> outcomes;
  bool stage1_passed = false;
  bool stage2_run = false;
};

/// Runs the two-stage pipeline: stage-1 tasks for every operation in
/// declaration order (safety, anomaly, completeness), then, only if all of
/// stage 1 passed and the limit allows, stage-2 tasks per unordered pair:
/// opposition; when the pair can run concurrently also stability (both
/// directions for distinct pairs, one for self-pairs) and commutativity.
PlanResult plan(const SpecPtr& spec, const TaskChecker& checker, int stage_limit = 2);

}  // namespace cise::vc
