#include "cise/vcgen.hpp"

#include <sstream>

#include "cise/printer.hpp"

namespace cise::vc {

int stage(CheckKind kind) {
  switch (kind) {
    case CheckKind::Safety:
    case CheckKind::Anomaly:
    case CheckKind::Completeness:
      return 1;
    default:
      return 2;
  }
}

std::string to_string(CheckKind kind) {
  switch (kind) {
    case CheckKind::Safety: return "safety";
    case CheckKind::Anomaly: return "anomaly";
    case CheckKind::Completeness: return "completeness";
    case CheckKind::Opposition: return "opposition";
    case CheckKind::Stability: return "stability";
    case CheckKind::Commutativity: return "commutativity";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Unknown: return "UNKNOWN";
  }
  return "?";
}

std::string VerificationTask::describe() const {
  std::ostringstream os;
  os << to_string(kind) << "(";
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (i) os << ", ";
    os << instances[i].op_name;
  }
  os << ")";
  return os.str();
}

int VerificationTask::concat_position(int instance_id, int pos) const {
  int offset = 0;
  for (const auto& inst : instances) {
    if (inst.id == instance_id) return offset + pos + 1;
    offset += static_cast<int>(inst.params.size());
  }
  return pos + 1;
}

namespace {

using logic::OpInstance;

ExprPtr instance_param_var(const OpInstance& inst, int pos) {
  const Param& p = inst.params[static_cast<std::size_t>(pos)];
  return Expr::var(VarKind::Param, p.name, p.sort);
}

ExprPtr tuple_equal(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b) {
  std::vector<ExprPtr> eqs;
  for (std::size_t i = 0; i < a.size(); ++i) eqs.push_back(Expr::eq(a[i], b[i]));
  return Expr::conjoin(std::move(eqs));
}

/// Builder collecting the query conjuncts and finishing with the decode map.
struct TaskBuilder {
  VerificationTask task;
  std::vector<ExprPtr> conjuncts;

  TaskBuilder(CheckKind kind, SpecPtr spec, Polarity polarity) {
    task.kind = kind;
    task.spec = std::move(spec);
    task.polarity = polarity;
    for (const auto& axiom : task.spec->axioms) conjuncts.push_back(axiom);
  }

  void add(ExprPtr e) { conjuncts.push_back(std::move(e)); }

  void add_instance(OpInstance inst) { task.instances.push_back(std::move(inst)); }

  VerificationTask finish() {
    task.query = Expr::conjoin(std::move(conjuncts));
    build_decode();
    return std::move(task);
  }

  void build_decode() {
    auto note_symbol = [&](const Expr& v) {
      if (task.decode.count(v.name)) return;
      SymbolInfo info;
      info.sort = v.sort;
      std::string base;
      int num = 0;
      if (logic::split_state_symbol(v.name, base, num)) {
        info.kind = SymbolInfo::Kind::StateVar;
        info.base = base;
        info.state_index = num;
      } else if (logic::split_param_symbol(v.name, base, num)) {
        info.kind = SymbolInfo::Kind::Param;
        info.instance_id = num;
        for (const auto& inst : task.instances) {
          if (inst.id != num) continue;
          info.op_name = inst.op_name;
          for (std::size_t i = 0; i < inst.params.size(); ++i) {
            if (inst.params[i].name == v.name) {
              info.param_name = inst.original_param_names[i];
              info.param_pos = static_cast<int>(i);
              break;
            }
          }
        }
      } else {
        // An unindexed symbol can only be a nullary function constant slipped
        // in as a Var; treat as Function.
        info.kind = SymbolInfo::Kind::Function;
      }
      task.decode.emplace(v.name, std::move(info));
    };
    auto note_apply = [&](const Expr& a) {
      if (!a.args.empty()) return;  // n-ary functions are not model symbols
      if (task.decode.count(a.name)) return;
      SymbolInfo info;
      info.kind = SymbolInfo::Kind::Function;
      info.sort = a.sort;
      task.decode.emplace(a.name, std::move(info));
    };
    for_each_free_var(task.query, note_symbol, note_apply);
    if (task.failing.replay) for_each_free_var(task.failing.replay, note_symbol, note_apply);
    // Unconstrained parameters still belong to the model.
    for (const auto& inst : task.instances)
      for (std::size_t i = 0; i < inst.params.size(); ++i) {
        const Param& p = inst.params[i];
        if (task.decode.count(p.name)) continue;
        SymbolInfo info;
        info.kind = SymbolInfo::Kind::Param;
        info.sort = p.sort;
        info.instance_id = inst.id;
        info.op_name = inst.op_name;
        info.param_name = inst.original_param_names[i];
        info.param_pos = static_cast<int>(i);
        task.decode.emplace(p.name, std::move(info));
      }
  }
};

ExprPtr invariant_at(const Specification& spec, int index) {
  return logic::at_state(spec.invariant, index);
}

ExprPtr pre_at(const OpInstance& inst, int index) { return logic::at_state(inst.pre, index); }

FailingClause clause_from_expr(const ExprPtr& source_expr, ExprPtr replay) {
  FailingClause c;
  c.span = source_expr->span;
  c.text = cise::to_string(source_expr);
  c.replay = std::move(replay);
  return c;
}

}  // namespace

ExprPtr token_compatibility(const Specification& spec, const OpInstance& a, const OpInstance& b) {
  std::vector<ExprPtr> conjuncts;
  for (const auto& acq_a : a.acquires) {
    for (const auto& acq_b : b.acquires) {
      if (!spec.conflicting(acq_a.token, acq_b.token)) continue;
      if (acq_a.args.size() != acq_b.args.size()) continue;  // tuples can never match
      bool sorts_match = true;
      for (std::size_t i = 0; i < acq_a.args.size(); ++i)
        sorts_match = sorts_match && acq_a.args[i]->sort == acq_b.args[i]->sort;
      if (!sorts_match) continue;
      // Same instantiation of conflicting templates would be co-held.
      conjuncts.push_back(Expr::not_(tuple_equal(acq_a.args, acq_b.args)));
    }
  }
  return Expr::conjoin(std::move(conjuncts));
}

VerificationTask vc_safety(const SpecPtr& spec, const Operation& op) {
  TaskBuilder b(CheckKind::Safety, spec, Polarity::ExpectUnsat);
  OpInstance inst = logic::instantiate(op, 1);
  b.add(invariant_at(*spec, 0));
  b.add(pre_at(inst, 0));
  b.add(logic::effector(*spec, inst, 0, 1).formula);
  ExprPtr inv_post = invariant_at(*spec, 1);
  b.add(Expr::not_(inv_post));
  b.task.failing = clause_from_expr(spec->invariant, inv_post);
  b.add_instance(std::move(inst));
  return b.finish();
}

VerificationTask vc_anomaly(const SpecPtr& spec, const Operation& op) {
  TaskBuilder b(CheckKind::Anomaly, spec, Polarity::ExpectSat);
  OpInstance inst = logic::instantiate(op, 1);
  b.add(invariant_at(*spec, 0));
  b.add(pre_at(inst, 0));
  b.add(logic::effector(*spec, inst, 0, 1).formula);
  // Failure means unsatisfiability: there is no model to replay, the clause
  // set itself is the report.
  FailingClause clause;
  clause.span = op.span;
  clause.text = cise::to_string(op.pre) + "  with  " + cise::to_string(op.post);
  b.task.failing = std::move(clause);
  b.add_instance(std::move(inst));
  return b.finish();
}

VerificationTask vc_completeness(const SpecPtr& spec, const Operation& op) {
  TaskBuilder b(CheckKind::Completeness, spec, Polarity::ExpectUnsat);
  OpInstance inst = logic::instantiate(op, 1);
  b.add(invariant_at(*spec, 0));
  b.add(pre_at(inst, 0));
  b.add(logic::effector(*spec, inst, 0, 1).formula);
  b.add(logic::effector(*spec, inst, 0, 2).formula);
  ExprPtr equal = logic::state_equal(*spec, 1, 2);
  b.add(Expr::not_(equal));
  FailingClause clause = clause_from_expr(op.post, equal);
  clause.span = op.post->span;
  clause.text = cise::to_string(op.post);
  b.task.failing = std::move(clause);
  b.add_instance(std::move(inst));
  return b.finish();
}

VerificationTask vc_opposition(const SpecPtr& spec, const Operation& op_i, const Operation& op_j) {
  TaskBuilder b(CheckKind::Opposition, spec, Polarity::ExpectSat);
  OpInstance a = logic::instantiate(op_i, 1);
  OpInstance c = logic::instantiate(op_j, 2);
  b.add(invariant_at(*spec, 0));
  b.add(pre_at(a, 0));
  b.add(pre_at(c, 0));
  b.add(token_compatibility(*spec, a, c));
  FailingClause clause;
  clause.span = op_i.span;
  clause.text = cise::to_string(op_i.pre) + "  against  " + cise::to_string(op_j.pre);
  b.task.failing = std::move(clause);
  b.add_instance(std::move(a));
  b.add_instance(std::move(c));
  return b.finish();
}

namespace {

ExprPtr restrictions_formula(const VerificationTask& task,
                             const std::vector<ParamDisequality>& restrictions) {
  std::vector<ExprPtr> conjuncts;
  for (const auto& r : restrictions) {
    const OpInstance* left = nullptr;
    const OpInstance* right = nullptr;
    for (const auto& inst : task.instances) {
      if (inst.id == r.left_instance) left = &inst;
      if (inst.id == r.right_instance) right = &inst;
    }
    conjuncts.push_back(
        Expr::ne(instance_param_var(*left, r.left_pos), instance_param_var(*right, r.right_pos)));
  }
  return Expr::conjoin(std::move(conjuncts));
}

}  // namespace

VerificationTask vc_stability(const SpecPtr& spec, const Operation& op_i, const Operation& op_j,
                              std::vector<ParamDisequality> restrictions) {
  TaskBuilder b(CheckKind::Stability, spec, Polarity::ExpectUnsat);
  OpInstance self = logic::instantiate(op_i, 1);
  OpInstance other = logic::instantiate(op_j, 2);
  b.task.instances.push_back(self);
  b.task.instances.push_back(other);
  b.task.restrictions = restrictions;

  b.add(invariant_at(*spec, 0));
  b.add(pre_at(self, 0));
  b.add(pre_at(other, 0));
  b.add(token_compatibility(*spec, self, other));
  b.add(restrictions_formula(b.task, restrictions));
  b.add(logic::effector(*spec, other, 0, 1).formula);
  ExprPtr pre_after = pre_at(self, 1);
  b.add(Expr::not_(pre_after));
  b.task.failing = clause_from_expr(op_i.pre, pre_after);
  return b.finish();
}

VerificationTask vc_commutativity(const SpecPtr& spec, const Operation& op_i,
                                  const Operation& op_j) {
  TaskBuilder b(CheckKind::Commutativity, spec, Polarity::ExpectUnsat);
  OpInstance a = logic::instantiate(op_i, 1);
  OpInstance c = logic::instantiate(op_j, 2);
  b.add(invariant_at(*spec, 0));
  b.add(pre_at(a, 0));
  b.add(pre_at(c, 0));
  b.add(token_compatibility(*spec, a, c));
  // Path 1: sigma0 -op_i-> sigma1 -op_j-> sigma2; path 2: sigma0 -op_j-> sigma3 -op_i-> sigma4.
  b.add(logic::effector(*spec, a, 0, 1).formula);
  b.add(logic::effector(*spec, c, 1, 2).formula);
  b.add(logic::effector(*spec, c, 0, 3).formula);
  b.add(logic::effector(*spec, a, 3, 4).formula);
  ExprPtr equal = logic::state_equal(*spec, 2, 4);
  b.add(Expr::not_(equal));
  FailingClause clause;
  clause.span = op_i.post->span;
  clause.text = cise::to_string(equal);
  clause.replay = equal;
  b.task.failing = std::move(clause);
  b.add_instance(std::move(a));
  b.add_instance(std::move(c));
  return b.finish();
}

Verdict judge(const VerificationTask& task, const SolverVerdict& result) {
  switch (result.kind) {
    case SolverVerdict::Kind::Unknown:
      return Verdict::Unknown;
    case SolverVerdict::Kind::Sat:
      return task.polarity == Polarity::ExpectUnsat ? Verdict::Fail : Verdict::Pass;
    case SolverVerdict::Kind::Unsat:
      if (task.polarity == Polarity::ExpectUnsat) return Verdict::Pass;
      // Anomaly: an unsatisfiable operation is a defect. Opposition: the pair
      // can never run concurrently, which passes and gates the pair's
      // remaining checks off.
      return task.kind == CheckKind::Anomaly ? Verdict::Fail : Verdict::Pass;
  }
  return Verdict::Unknown;
}

PlanResult plan(const SpecPtr& spec, const TaskChecker& checker, int stage_limit) {
  PlanResult result;

  // Returns the solver's answer; the full outcome is appended to the plan.
  auto run_task = [&](VerificationTask task) -> std::pair<Verdict, SolverVerdict::Kind> {
    PlannedOutcome outcome;
    outcome.solver = checker(task);
    outcome.verdict = judge(task, outcome.solver);
    if (!outcome.solver.qualifier.empty()) outcome.note = outcome.solver.qualifier;
    outcome.task = std::move(task);
    auto summary = std::make_pair(outcome.verdict, outcome.solver.kind);
    result.outcomes.push_back(std::move(outcome));
    return summary;
  };

  bool stage1_ok = true;
  for (const auto& op : spec->operations) {
    stage1_ok &= run_task(vc_safety(spec, op)).first == Verdict::Pass;
    stage1_ok &= run_task(vc_anomaly(spec, op)).first == Verdict::Pass;
    stage1_ok &= run_task(vc_completeness(spec, op)).first == Verdict::Pass;
  }
  result.stage1_passed = stage1_ok;
  if (!stage1_ok || stage_limit < 2) return result;

  result.stage2_run = true;
  const auto& ops = spec->operations;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (std::size_t j = i; j < ops.size(); ++j) {
      auto [opp_verdict, opp_kind] = run_task(vc_opposition(spec, ops[i], ops[j]));
      (void)opp_verdict;
      if (opp_kind == SolverVerdict::Kind::Unsat) {
        std::string& note = result.outcomes.back().note;
        std::string skip_note =
            "opposed preconditions; pair never runs concurrently; "
            "stability and commutativity skipped";
        note = note.empty() ? skip_note : note + "; " + skip_note;
        continue;
      }
      // Sat: the pair can run concurrently. Unknown: check the pair anyway,
      // which can only make the run more conservative.
      run_task(vc_stability(spec, ops[i], ops[j]));
      if (i != j) run_task(vc_stability(spec, ops[j], ops[i]));
      run_task(vc_commutativity(spec, ops[i], ops[j]));
    }
  }
  return result;
}

}  // namespace cise::vc
