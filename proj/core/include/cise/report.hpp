#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cise/vcgen.hpp"

#include <json.hpp>

namespace cise::report {

/// A model that fails to falsify its failing clause: a vcgen/solver bug.
/// Callers abort the run rather than emit an untrustworthy counterexample.
class ReplayMismatch : public Error {
public:
  explicit ReplayMismatch(const std::string& task)
      : Error(SourceSpan{}, "counterexample for " + task + " does not falsify its clause") {}
};

struct ParamValuation {
  std::string op_name;
  int instance_id = 1;
  std::vector<std::pair<std::string, Value>> params;  // original names, in order
};

struct VariableValuation {
  std::string name;
  int state_index = 0;
  Sort sort;
  Value value;
  std::vector<Value> relevant_keys;  // map sorts: keys worth displaying
};

struct Counterexample {
  vc::CheckKind kind = vc::CheckKind::Safety;
  SourceSpan clause_span;
  std::string clause_text;
  std::vector<ParamValuation> instances;
  std::vector<VariableValuation> variables;
  bool vacuous = false;  // anomaly failures have no model at all
};

/// Decodes a Sat model of an expect-unsat task into the counterexample and
/// replays it: the failing clause must evaluate to false under the model.
/// Throws ReplayMismatch otherwise.
Counterexample build_counterexample(const vc::VerificationTask& task, const Model& model,
                                    const DomainBounds& bounds);

/// Anomaly failure: the clause set is unsatisfiable, valuations are empty.
Counterexample build_vacuous_counterexample(const vc::VerificationTask& task);

struct TaskReport {
  vc::CheckKind kind = vc::CheckKind::Safety;
  int stage = 1;
  std::vector<std::string> ops;
  vc::Verdict verdict = vc::Verdict::Pass;
  std::string note;
  std::optional<Counterexample> counterexample;
};

struct Report {
  enum class Summary { Verified, NotVerified, Unknown };

  std::string source_name;
  std::string backend_name;
  std::vector<std::string> base_sections;  // syntax-checked section names
  std::vector<TaskReport> tasks;
  Summary summary = Summary::Verified;
  bool concurrent_skipped = false;
  std::string concurrent_skip_reason;
};

std::string to_string(Report::Summary summary);

/// Assembles the report from a plan run, building (and replaying) the
/// counterexample for every failed task.
Report build_report(const Specification& spec, const vc::PlanResult& plan,
                    const std::string& backend_name, const DomainBounds& bounds,
                    int stage_limit);

std::string render_text(const Report& report);

nlohmann::ordered_json to_json(const Report& report);
nlohmann::ordered_json value_to_json(const Value& value);
std::string render_json(const Report& report);

}  // namespace cise::report
