#include "cise/report.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "cise/eval.hpp"

namespace cise::report {

namespace {

/// Elements decoded from an smt model may exceed the configured cardinality;
/// widen so replay quantifiers range over everything the model mentions.
DomainBounds widen_for_model(const DomainBounds& bounds, const Model& model) {
  DomainBounds widened = bounds;
  auto widen = [&](const Value& v) {
    if (v.kind() != Value::Kind::Elem) return;
    int need = v.elem_index() + 1;
    int& card = widened.sort_cardinality[v.elem_sort()];
    if (card == 0) card = widened.default_cardinality;
    if (card < need) card = need;
  };
  for (const auto& [name, value] : model.assignments) {
    (void)name;
    widen(value);
    if (value.kind() == Value::Kind::Map) {
      widen(value.map_default());
      for (const auto& [k, v] : value.map_overrides()) {
        widen(k);
        widen(v);
      }
    }
  }
  return widened;
}

}  // namespace

Counterexample build_counterexample(const vc::VerificationTask& task, const Model& model,
                                    const DomainBounds& bounds) {
  Counterexample cex;
  cex.kind = task.kind;
  cex.clause_span = task.failing.span;
  cex.clause_text = task.failing.text;

  DomainBounds replay_bounds = widen_for_model(bounds, model);
  if (task.failing.replay) {
    Value verdict = eval(model, task.failing.replay, replay_bounds);
    if (verdict.kind() != Value::Kind::Bool || verdict.as_bool())
      throw ReplayMismatch(task.describe());
  }

  for (const auto& inst : task.instances) {
    ParamValuation pv;
    pv.op_name = inst.op_name;
    pv.instance_id = inst.id;
    for (std::size_t i = 0; i < inst.params.size(); ++i) {
      auto it = model.assignments.find(inst.params[i].name);
      if (it == model.assignments.end())
        throw UnassignedSymbol(inst.span, inst.params[i].name);
      pv.params.emplace_back(inst.original_param_names[i], it->second);
    }
    cex.instances.push_back(std::move(pv));
  }

  // State variables named by the failing clause, at every index the task uses.
  std::set<std::string> clause_vars;
  if (task.failing.replay)
    for_each_free_var(task.failing.replay, [&](const Expr& v) {
      std::string base;
      int index = 0;
      if (logic::split_state_symbol(v.name, base, index)) clause_vars.insert(base);
    });

  for (const auto& [symbol, info] : task.decode) {
    if (info.kind != vc::SymbolInfo::Kind::StateVar) continue;
    if (!clause_vars.count(info.base)) continue;
    auto it = model.assignments.find(symbol);
    if (it == model.assignments.end()) continue;
    VariableValuation vv;
    vv.name = info.base;
    vv.state_index = info.state_index;
    vv.sort = info.sort;
    vv.value = it->second;
    if (info.sort.is_map()) {
      std::set<Value> keys;
      for (const auto& inst : cex.instances)
        for (const auto& [pname, pvalue] : inst.params) {
          (void)pname;
          bool matches = (info.sort.key().is_int() && pvalue.kind() == Value::Kind::Int) ||
                         (info.sort.key().is_uninterpreted() &&
                          pvalue.kind() == Value::Kind::Elem &&
                          pvalue.elem_sort() == info.sort.key().name());
          if (matches) keys.insert(pvalue);
        }
      vv.relevant_keys.assign(keys.begin(), keys.end());
    }
    cex.variables.push_back(std::move(vv));
  }
  std::sort(cex.variables.begin(), cex.variables.end(),
            [](const VariableValuation& a, const VariableValuation& b) {
              if (a.name != b.name) return a.name < b.name;
              return a.state_index < b.state_index;
            });
  return cex;
}

Counterexample build_vacuous_counterexample(const vc::VerificationTask& task) {
  Counterexample cex;
  cex.kind = task.kind;
  cex.clause_span = task.failing.span;
  cex.clause_text = task.failing.text;
  cex.vacuous = true;
  for (const auto& inst : task.instances) {
    ParamValuation pv;
    pv.op_name = inst.op_name;
    pv.instance_id = inst.id;
    cex.instances.push_back(std::move(pv));
  }
  return cex;
}

std::string to_string(Report::Summary summary) {
  switch (summary) {
    case Report::Summary::Verified: return "VERIFIED";
    case Report::Summary::NotVerified: return "NOT VERIFIED";
    case Report::Summary::Unknown: return "UNKNOWN";
  }
  return "?";
}

Report build_report(const Specification& spec, const vc::PlanResult& plan,
                    const std::string& backend_name, const DomainBounds& bounds,
                    int stage_limit) {
  Report report;
  report.source_name = spec.source_name;
  report.backend_name = backend_name;
  report.base_sections = {"@init", "@variable", "@equals"};
  if (spec.has_tokens_section || !spec.tokens.empty()) report.base_sections.push_back("@tokens");
  report.base_sections.push_back("@invariant");
  report.base_sections.push_back("@operations");

  bool any_fail = false;
  bool any_unknown = false;
  for (const auto& outcome : plan.outcomes) {
    TaskReport tr;
    tr.kind = outcome.task.kind;
    tr.stage = vc::stage(tr.kind);
    for (const auto& inst : outcome.task.instances) tr.ops.push_back(inst.op_name);
    tr.verdict = outcome.verdict;
    tr.note = outcome.note;
    if (outcome.verdict == vc::Verdict::Fail) {
      any_fail = true;
      if (outcome.solver.is_sat())
        tr.counterexample = build_counterexample(outcome.task, outcome.solver.model, bounds);
      else
        tr.counterexample = build_vacuous_counterexample(outcome.task);
    }
    if (outcome.verdict == vc::Verdict::Unknown) {
      any_unknown = true;
      std::string reason = outcome.solver.reason == SolverVerdict::UnknownReason::Timeout
                               ? "timeout"
                               : "incompleteness";
      tr.note = tr.note.empty() ? reason : tr.note + "; " + reason;
    }
    report.tasks.push_back(std::move(tr));
  }

  if (!plan.stage2_run) {
    report.concurrent_skipped = true;
    report.concurrent_skip_reason =
        stage_limit < 2 ? "stage limit 1" : "sequential verification failed";
  }

  report.summary = any_fail ? Report::Summary::NotVerified
                 : any_unknown ? Report::Summary::Unknown
                               : Report::Summary::Verified;
  return report;
}

namespace {

std::string render_value_line(const VariableValuation& vv) {
  std::ostringstream os;
  os << vv.name << "@" << vv.state_index;
  if (vv.sort.is_map()) {
    os << ":";
    for (const auto& key : vv.relevant_keys)
      os << " [" << key.to_string() << "] = " << vv.value.select(key).to_string() << ",";
    os << " default = " << vv.value.map_default().to_string();
  } else {
    os << " = " << vv.value.to_string();
  }
  return os.str();
}

void render_counterexample(const Counterexample& cex, const std::string& source_name,
                           std::ostream& os) {
  if (cex.vacuous) {
    os << "    unsatisfiable clauses at " << source_name << ":" << cex.clause_span.line << ":"
       << cex.clause_span.column << ":\n";
    os << "      " << cex.clause_text << "\n";
    os << "    (no execution satisfies them; the operation can never take effect)\n";
    return;
  }
  os << "    failed clause at " << source_name << ":" << cex.clause_span.line << ":"
     << cex.clause_span.column << ":\n";
  os << "      " << cex.clause_text << "\n";
  for (const auto& inst : cex.instances) {
    os << "    " << inst.op_name << " [instance " << inst.instance_id << "]:";
    if (inst.params.empty()) {
      os << " (no parameters)";
    } else {
      bool first = true;
      for (const auto& [name, value] : inst.params) {
        os << (first ? " " : ", ") << name << " = " << value.to_string();
        first = false;
      }
    }
    os << "\n";
  }
  for (const auto& vv : cex.variables) os << "    " << render_value_line(vv) << "\n";
}

}  // namespace

std::string render_text(const Report& report) {
  std::ostringstream os;
  os << "BASE VERIFICATION\n";
  for (const auto& section : report.base_sections)
    os << "  syntax(" << section << "): PASS\n";

  os << "SEQUENTIAL VERIFICATION\n";
  for (const auto& task : report.tasks) {
    if (task.stage != 1) continue;
    os << "  " << vc::to_string(task.kind) << "(" << task.ops.front()
       << "): " << vc::to_string(task.verdict);
    if (!task.note.empty()) os << " (" << task.note << ")";
    os << "\n";
    if (task.counterexample) render_counterexample(*task.counterexample, report.source_name, os);
  }

  os << "CONCURRENT VERIFICATION\n";
  if (report.concurrent_skipped) {
    os << "  skipped (" << report.concurrent_skip_reason << ")\n";
  } else {
    for (const auto& task : report.tasks) {
      if (task.stage != 2) continue;
      os << "  " << vc::to_string(task.kind) << "(" << task.ops.front() << ", " << task.ops.back()
         << "): " << vc::to_string(task.verdict);
      if (!task.note.empty()) os << " (" << task.note << ")";
      os << "\n";
      if (task.counterexample)
        render_counterexample(*task.counterexample, report.source_name, os);
    }
  }

  os << "RESULT: " << to_string(report.summary) << "\n";
  return os.str();
}

nlohmann::ordered_json value_to_json(const Value& value) {
  switch (value.kind()) {
    case Value::Kind::Int: return value.as_int();
    case Value::Kind::Bool: return value.as_bool();
    case Value::Kind::Elem: return value.to_string();
    case Value::Kind::Map: {
      nlohmann::ordered_json j;
      j["entries"] = nlohmann::ordered_json::array();
      for (const auto& [k, v] : value.map_overrides())
        j["entries"].push_back({{"key", value_to_json(k)}, {"value", value_to_json(v)}});
      j["default"] = value_to_json(value.map_default());
      return j;
    }
  }
  return nullptr;
}

namespace {

nlohmann::ordered_json counterexample_to_json(const Counterexample& cex,
                                              const std::string& source_name) {
  nlohmann::ordered_json j;
  j["check"] = vc::to_string(cex.kind);
  j["vacuous"] = cex.vacuous;
  j["failed_clause"] = {{"file", source_name},
                        {"line", cex.clause_span.line},
                        {"column", cex.clause_span.column},
                        {"text", cex.clause_text}};
  j["instances"] = nlohmann::ordered_json::array();
  for (const auto& inst : cex.instances) {
    nlohmann::ordered_json ji;
    ji["operation"] = inst.op_name;
    ji["instance"] = inst.instance_id;
    ji["params"] = nlohmann::ordered_json::array();
    for (const auto& [name, value] : inst.params)
      ji["params"].push_back({{"name", name}, {"value", value_to_json(value)}});
    j["instances"].push_back(std::move(ji));
  }
  j["variables"] = nlohmann::ordered_json::array();
  for (const auto& vv : cex.variables) {
    nlohmann::ordered_json jv;
    jv["name"] = vv.name;
    jv["index"] = vv.state_index;
    if (vv.sort.is_map()) {
      jv["entries"] = nlohmann::ordered_json::array();
      for (const auto& key : vv.relevant_keys)
        jv["entries"].push_back(
            {{"key", value_to_json(key)}, {"value", value_to_json(vv.value.select(key))}});
      jv["default"] = value_to_json(vv.value.map_default());
    } else {
      jv["value"] = value_to_json(vv.value);
    }
    j["variables"].push_back(std::move(jv));
  }
  return j;
}

std::string summary_key(Report::Summary s) {
  switch (s) {
    case Report::Summary::Verified: return "verified";
    case Report::Summary::NotVerified: return "not_verified";
    case Report::Summary::Unknown: return "unknown";
  }
  return "?";
}

std::string verdict_key(vc::Verdict v) {
  switch (v) {
    case vc::Verdict::Pass: return "pass";
    case vc::Verdict::Fail: return "fail";
    case vc::Verdict::Unknown: return "unknown";
  }
  return "?";
}

}  // namespace

nlohmann::ordered_json to_json(const Report& report) {
  nlohmann::ordered_json j;
  j["source"] = report.source_name;
  j["backend"] = report.backend_name;
  j["summary"] = summary_key(report.summary);
  j["base"] = nlohmann::ordered_json::array();
  for (const auto& section : report.base_sections)
    j["base"].push_back({{"section", section}, {"status", "pass"}});
  j["tasks"] = nlohmann::ordered_json::array();
  for (const auto& task : report.tasks) {
    nlohmann::ordered_json jt;
    jt["stage"] = task.stage;
    jt["kind"] = vc::to_string(task.kind);
    jt["ops"] = task.ops;
    jt["verdict"] = verdict_key(task.verdict);
    if (!task.note.empty()) jt["note"] = task.note;
    if (task.counterexample)
      jt["counterexample"] = counterexample_to_json(*task.counterexample, report.source_name);
    j["tasks"].push_back(std::move(jt));
  }
  j["concurrent_skipped"] = report.concurrent_skipped;
  if (report.concurrent_skipped) j["concurrent_skip_reason"] = report.concurrent_skip_reason;
  return j;
}

std::string render_json(const Report& report) { return to_json(report).dump(2) + "\n"; }

}  // namespace cise::report
