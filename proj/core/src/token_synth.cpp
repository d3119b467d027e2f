#include "cise/token_synth.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace cise::synth {

namespace {

using vc::ParamDisequality;

const Value* param_value(const report::Counterexample& cex, int instance_id, int pos) {
  for (const auto& inst : cex.instances) {
    if (inst.instance_id != instance_id) continue;
    if (pos < 0 || static_cast<std::size_t>(pos) >= inst.params.size()) return nullptr;
    return &inst.params[static_cast<std::size_t>(pos)].second;
  }
  return nullptr;
}

std::string describe_diseq(const ParamDisequality& d, std::size_t params_of_first) {
  auto concat = [&](int instance, int pos) {
    return (instance == 1 ? 0 : static_cast<int>(params_of_first)) + pos + 1;
  };
  std::ostringstream os;
  os << "parameter " << concat(d.left_instance, d.left_pos) << " != parameter "
     << concat(d.right_instance, d.right_pos);
  return os.str();
}

std::string describe_candidate(const RestrictionCandidate& c, std::size_t params_of_first) {
  std::ostringstream os;
  for (std::size_t i = 0; i < c.diseqs.size(); ++i) {
    if (i) os << " and ";
    os << describe_diseq(c.diseqs[i], params_of_first);
  }
  return os.str();
}

}  // namespace

std::vector<RestrictionCandidate> candidates(const logic::OpInstance& inst_i,
                                             const logic::OpInstance& inst_j,
                                             const report::Counterexample& cex) {
  bool self_pair = inst_i.op_name == inst_j.op_name;

  // Base order: matching positions first for self-pairs, then lexicographic.
  std::vector<std::pair<int, int>> positions;
  for (std::size_t p = 0; p < inst_i.params.size(); ++p)
    for (std::size_t q = 0; q < inst_j.params.size(); ++q) {
      if (inst_i.params[p].sort != inst_j.params[q].sort) continue;
      positions.emplace_back(static_cast<int>(p), static_cast<int>(q));
    }
  std::stable_sort(positions.begin(), positions.end(),
                   [&](const std::pair<int, int>& a, const std::pair<int, int>& b) {
                     if (self_pair && (a.first == a.second) != (b.first == b.second))
                       return a.first == a.second;
                     return a < b;
                   });

  std::vector<RestrictionCandidate> singletons;
  for (const auto& [p, q] : positions) {
    RestrictionCandidate c;
    ParamDisequality d;
    d.left_instance = 1;
    d.left_pos = p;
    d.right_instance = 2;
    d.right_pos = q;
    c.diseqs.push_back(d);
    const Value* left = param_value(cex, 1, p);
    const Value* right = param_value(cex, 2, q);
    c.evidence_equal.push_back(left && right && *left == *right);
    singletons.push_back(std::move(c));
  }
  std::stable_sort(singletons.begin(), singletons.end(),
                   [](const RestrictionCandidate& a, const RestrictionCandidate& b) {
                     return a.evidence_equal[0] && !b.evidence_equal[0];
                   });

  std::vector<RestrictionCandidate> out = singletons;
  for (std::size_t i = 0; i < singletons.size(); ++i)
    for (std::size_t j = i + 1; j < singletons.size(); ++j) {
      RestrictionCandidate u;
      u.diseqs = {singletons[i].diseqs[0], singletons[j].diseqs[0]};
      u.evidence_equal = {singletons[i].evidence_equal[0], singletons[j].evidence_equal[0]};
      out.push_back(std::move(u));
    }
  return out;
}

namespace {

/// Re-expresses {(1,p),(2,q)} stated for direction (i, j) in direction
/// (j, i): the operations swap instance ids, so the restriction becomes
/// {(1,q),(2,p)}.
ParamDisequality flip_direction(const ParamDisequality& d) {
  ParamDisequality out;
  out.left_instance = 1;
  out.left_pos = d.right_pos;
  out.right_instance = 2;
  out.right_pos = d.left_pos;
  return out;
}

bool stabilizes(const vc::SpecPtr& spec, const vc::TaskChecker& checker,
                std::size_t canonical_i, std::size_t canonical_j,
                const std::vector<std::pair<std::size_t, std::size_t>>& failing_directions,
                const RestrictionCandidate& candidate) {
  for (const auto& [a, b] : failing_directions) {
    std::vector<ParamDisequality> restrictions;
    for (const auto& d : candidate.diseqs)
      restrictions.push_back(a == canonical_i && b == canonical_j ? d : flip_direction(d));
    vc::VerificationTask task = vc::vc_stability(spec, spec->operations[a], spec->operations[b],
                                                 std::move(restrictions));
    if (!checker(task).is_unsat()) return false;
  }
  return true;
}

}  // namespace

PairSearch search_pair(const vc::SpecPtr& spec, const vc::TaskChecker& checker,
                       std::size_t op_i, std::size_t op_j,
                       const std::vector<std::pair<std::size_t, std::size_t>>& failing_directions,
                       const std::vector<RestrictionCandidate>& ordered,
                       const std::string& pair_name, bool record_all_singletons) {
  PairSearch result;
  std::size_t params_of_first = spec->operations[op_i].params.size();

  auto try_candidate = [&](const RestrictionCandidate& c) {
    bool ok = stabilizes(spec, checker, op_i, op_j, failing_directions, c);
    SearchStep step;
    step.pair = pair_name;
    step.candidate = describe_candidate(c, params_of_first);
    if (ok && !result.found) {
      step.status = SearchStep::Status::Accepted;
      result.found = true;
      result.accepted = c;
    } else {
      step.status = ok ? SearchStep::Status::ViableNotSelected : SearchStep::Status::Rejected;
    }
    result.log.push_back(std::move(step));
    return ok;
  };

  // Singletons and two-element unions come pre-ordered; sizes stay ascending
  // so the first accepted candidate has no accepted proper subset.
  std::vector<const RestrictionCandidate*> singles;
  for (const auto& c : ordered)
    if (c.diseqs.size() == 1) singles.push_back(&c);

  for (const auto& c : ordered) {
    if (c.diseqs.size() != 1) continue;
    try_candidate(c);
    if (result.found && !record_all_singletons) break;
  }
  if (result.found) return result;

  for (const auto& c : ordered) {
    if (c.diseqs.size() != 2) continue;
    if (try_candidate(c)) return result;
  }

  // Larger unions, size-ascending over the singleton ranks. A satisfiable
  // full set proves no subset can work (restrictions only shrink the model
  // space), so probe it first.
  std::size_t n = singles.size();
  if (n > 2) {
    RestrictionCandidate full;
    for (const auto* s : singles) {
      full.diseqs.push_back(s->diseqs[0]);
      full.evidence_equal.push_back(s->evidence_equal[0]);
    }
    if (!stabilizes(spec, checker, op_i, op_j, failing_directions, full)) {
      SearchStep step;
      step.pair = pair_name;
      step.candidate = describe_candidate(full, params_of_first);
      step.status = SearchStep::Status::Rejected;
      result.log.push_back(std::move(step));
      return result;  // NoSolution
    }
    for (std::size_t k = 3; k < n && !result.found; ++k) {
      std::vector<std::size_t> combo(k);
      for (std::size_t i = 0; i < k; ++i) combo[i] = i;
      while (true) {
        RestrictionCandidate c;
        for (std::size_t idx : combo) {
          c.diseqs.push_back(singles[idx]->diseqs[0]);
          c.evidence_equal.push_back(singles[idx]->evidence_equal[0]);
        }
        if (try_candidate(c)) return result;
        // next combination in lexicographic order
        std::size_t i = k;
        while (i > 0) {
          --i;
          if (combo[i] + (k - i) < n) {
            ++combo[i];
            for (std::size_t j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
            break;
          }
          if (i == 0) {
            i = k + 1;
            break;
          }
        }
        if (i == k + 1) break;
      }
    }
    if (!result.found) try_candidate(full);  // known unsat: minimal by exhaustion
  }
  return result;
}

namespace {

struct PairKey {
  std::size_t i = 0;
  std::size_t j = 0;
  bool operator<(const PairKey& o) const { return std::tie(i, j) < std::tie(o.i, o.j); }
};

std::string pair_name_of(const Specification& spec, PairKey key) {
  return "(" + spec.operations[key.i].name + ", " + spec.operations[key.j].name + ")";
}

/// Deterministic template naming: tok_<op> for the first restricted
/// parameter of an operation, tok_<op>_<param> for any further ones. Returns
/// the template's name, creating the template when new.
class TemplateNamer {
public:
  explicit TemplateNamer(const Specification& spec) : spec_(spec) {}

  std::string for_param(std::vector<TokenTemplate>& templates, const std::string& op_name,
                        const std::string& param_name) {
    for (const auto& t : templates)
      if (t.op_name == op_name && t.arg_params == std::vector<std::string>{param_name})
        return t.name;
    std::string name = "tok_" + op_name;
    for (const auto& t : templates)
      if (t.op_name == op_name) {
        name += "_" + param_name;
        break;
      }
    while (spec_.find_token(name)) name += "_syn";
    templates.push_back({name, op_name, {param_name}});
    return name;
  }

private:
  const Specification& spec_;
};

}  // namespace

SynthesisResult synthesize(const vc::SpecPtr& spec, const vc::TaskChecker& checker,
                           const vc::PlanResult& plan, const DomainBounds& bounds) {
  SynthesisResult result;

  // Failing stability tasks, grouped by unordered operation pair. The first
  // failing direction of a pair supplies the triggering counterexample.
  struct Group {
    std::vector<std::pair<std::size_t, std::size_t>> directions;
    const vc::PlannedOutcome* first = nullptr;
  };
  std::map<PairKey, Group> groups;
  auto index_of = [&](const std::string& name) {
    for (std::size_t k = 0; k < spec->operations.size(); ++k)
      if (spec->operations[k].name == name) return k;
    return spec->operations.size();
  };
  for (const auto& outcome : plan.outcomes) {
    if (outcome.task.kind != vc::CheckKind::Stability || outcome.verdict != vc::Verdict::Fail)
      continue;
    std::size_t a = index_of(outcome.task.instances[0].op_name);
    std::size_t b = index_of(outcome.task.instances[1].op_name);
    PairKey key{std::min(a, b), std::max(a, b)};
    auto& group = groups[key];
    group.directions.emplace_back(a, b);
    if (!group.first) group.first = &outcome;
  }
  if (!plan.stage1_passed || groups.empty()) return result;  // not applicable
  result.applicable = true;

  TemplateNamer namer(*spec);
  std::set<std::pair<std::string, std::string>> conflict_set;
  bool all_found = true;

  for (const auto& [key, group] : groups) {
    const vc::VerificationTask& trigger = group.first->task;
    report::Counterexample cex =
        report::build_counterexample(trigger, group.first->solver.model, bounds);

    std::size_t canon_i = index_of(trigger.instances[0].op_name);
    std::size_t canon_j = index_of(trigger.instances[1].op_name);
    std::vector<RestrictionCandidate> ordered =
        candidates(trigger.instances[0], trigger.instances[1], cex);
    std::string pair_name = pair_name_of(*spec, key);

    if (ordered.empty()) {
      all_found = false;
      result.failure = "no same-sorted parameter pairs for " + pair_name;
      continue;
    }

    PairSearch search = search_pair(spec, checker, canon_i, canon_j, group.directions, ordered,
                                    pair_name, /*record_all_singletons=*/true);
    result.log.insert(result.log.end(), search.log.begin(), search.log.end());
    if (!search.found) {
      all_found = false;
      result.failure = "no restriction stabilizes " + pair_name;
      continue;
    }

    PairRestriction restriction;
    restriction.op_i = trigger.instances[0].op_name;
    restriction.op_j = trigger.instances[1].op_name;
    restriction.diseqs = search.accepted.diseqs;
    restriction.description = describe_candidate(
        search.accepted, spec->operations[canon_i].params.size());
    result.model.restrictions.push_back(restriction);

    for (const auto& d : search.accepted.diseqs) {
      const Operation& op_a = spec->operations[canon_i];
      const Operation& op_b = spec->operations[canon_j];
      const std::string& param_a = op_a.params[static_cast<std::size_t>(d.left_pos)].name;
      const std::string& param_b = op_b.params[static_cast<std::size_t>(d.right_pos)].name;
      std::string token_a = namer.for_param(result.model.tokens, op_a.name, param_a);
      std::string token_b = (op_a.name == op_b.name && d.left_pos == d.right_pos)
                                ? token_a
                                : namer.for_param(result.model.tokens, op_b.name, param_b);
      auto pair = token_a <= token_b ? std::make_pair(token_a, token_b)
                                     : std::make_pair(token_b, token_a);
      conflict_set.insert(std::move(pair));
    }
  }
  std::stable_sort(result.model.restrictions.begin(), result.model.restrictions.end(),
                   [](const PairRestriction& a, const PairRestriction& b) {
                     return std::tie(a.op_i, a.op_j) < std::tie(b.op_i, b.op_j);
                   });
  std::stable_sort(result.model.tokens.begin(), result.model.tokens.end(),
                   [](const TokenTemplate& a, const TokenTemplate& b) {
                     return std::tie(a.op_name, a.name) < std::tie(b.op_name, b.name);
                   });
  result.model.conflicts.assign(conflict_set.begin(), conflict_set.end());
  result.success = all_found;
  if (!result.success) return result;

  // Validate: the full plan with the tokens injected must pass everywhere.
  auto injected = std::make_shared<const Specification>(inject_tokens(*spec, result.model));
  vc::PlanResult validation = vc::plan(injected, checker, 2);
  bool all_pass = validation.stage1_passed;
  for (const auto& outcome : validation.outcomes) {
    if (outcome.verdict != vc::Verdict::Pass) {
      all_pass = false;
      result.failure = "with tokens injected, " + outcome.task.describe() + " is " +
                       vc::to_string(outcome.verdict);
      break;
    }
  }
  result.validated = all_pass;
  if (!all_pass) result.success = false;
  return result;
}

Specification inject_tokens(const Specification& spec, const TokenModel& model) {
  Specification out = spec;
  out.has_tokens_section = out.has_tokens_section || !model.tokens.empty();

  for (const auto& t : model.tokens) {
    const Operation* op = out.find_operation(t.op_name);
    TokenDecl decl;
    decl.name = t.name;
    for (const auto& param_name : t.arg_params)
      for (const auto& p : op->params)
        if (p.name == param_name) decl.params.push_back({param_name, p.sort, {}});
    out.tokens.push_back(std::move(decl));
  }
  for (const auto& c : model.conflicts)
    if (!out.conflicting(c.first, c.second)) out.conflicts.push_back(c);

  for (auto& op : out.operations) {
    for (const auto& t : model.tokens) {
      if (t.op_name != op.name) continue;
      AcquireClause clause;
      clause.token = t.name;
      for (const auto& param_name : t.arg_params)
        for (const auto& p : op.params)
          if (p.name == param_name)
            clause.args.push_back(Expr::var(VarKind::Param, param_name, p.sort));
      op.acquires.push_back(std::move(clause));
    }
  }
  return out;
}

std::string render_token_model(const SynthesisResult& result) {
  std::ostringstream os;
  os << "RESTRICTIONS\n";
  if (result.model.restrictions.empty()) {
    os << "  none\n";
  } else {
    for (const auto& r : result.model.restrictions)
      os << "  (" << r.op_i << ", " << r.op_j << "): " << r.description << "\n";
  }
  for (const auto& step : result.log) {
    os << "  tried " << step.pair << ": " << step.candidate << " -> ";
    switch (step.status) {
      case SearchStep::Status::Accepted: os << "accepted"; break;
      case SearchStep::Status::Rejected: os << "rejected (stability still fails)"; break;
      case SearchStep::Status::ViableNotSelected: os << "stabilizes (not selected)"; break;
    }
    os << "\n";
  }
  os << "TOKEN MODEL\n";
  if (result.model.tokens.empty()) {
    os << "  none\n";
  } else {
    for (const auto& t : result.model.tokens) {
      os << "  " << t.op_name << ": requires token " << t.name << "(";
      for (std::size_t i = 0; i < t.arg_params.size(); ++i) {
        if (i) os << ", ";
        os << t.arg_params[i];
      }
      os << ")\n";
    }
    for (const auto& c : result.model.conflicts)
      os << "  conflict: " << c.first << " " << c.second << "\n";
  }
  if (result.success && result.validated)
    os << "RESULT WITH TOKENS: VERIFIED\n";
  else if (!result.failure.empty())
    os << "TOKEN SYNTHESIS: " << result.failure << "\n";
  return os.str();
}

nlohmann::ordered_json to_json(const SynthesisResult& result) {
  nlohmann::ordered_json j;
  j["applicable"] = result.applicable;
  j["success"] = result.success;
  j["validated"] = result.validated;
  if (!result.failure.empty()) j["failure"] = result.failure;
  j["restrictions"] = nlohmann::ordered_json::array();
  for (const auto& r : result.model.restrictions)
    j["restrictions"].push_back(
        {{"ops", {r.op_i, r.op_j}}, {"description", r.description}});
  j["search"] = nlohmann::ordered_json::array();
  for (const auto& step : result.log) {
    std::string status = step.status == SearchStep::Status::Accepted ? "accepted"
                         : step.status == SearchStep::Status::Rejected
                             ? "rejected"
                             : "viable_not_selected";
    j["search"].push_back(
        {{"pair", step.pair}, {"candidate", step.candidate}, {"status", status}});
  }
  j["tokens"] = nlohmann::ordered_json::array();
  for (const auto& t : result.model.tokens)
    j["tokens"].push_back(
        {{"operation", t.op_name}, {"token", t.name}, {"args", t.arg_params}});
  j["conflicts"] = nlohmann::ordered_json::array();
  for (const auto& c : result.model.conflicts)
    j["conflicts"].push_back({c.first, c.second});
  return j;
}

}  // namespace cise::synth
