#include "cise/logic.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace cise::logic {

std::string state_symbol(const std::string& base, int index) {
  return base + "@" + std::to_string(index);
}

std::string param_symbol(const std::string& base, int id) {
  return base + "#" + std::to_string(id);
}

namespace {

bool split_on(const std::string& symbol, char sep, std::string& base, int& num) {
  auto at = symbol.rfind(sep);
  if (at == std::string::npos || at + 1 >= symbol.size()) return false;
  for (std::size_t i = at + 1; i < symbol.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(symbol[i]))) return false;
  base = symbol.substr(0, at);
  num = std::stoi(symbol.substr(at + 1));
  return true;
}

}  // namespace

bool split_state_symbol(const std::string& symbol, std::string& base, int& index) {
  return split_on(symbol, '@', base, index);
}

bool split_param_symbol(const std::string& symbol, std::string& base, int& id) {
  return split_on(symbol, '#', base, id);
}

namespace {

/// Renames free variables of one kind. Quantifier binders shadow as usual.
ExprPtr rename_vars(const ExprPtr& e, VarKind kind,
                    const std::map<std::string, std::string>& renaming,
                    std::set<std::string>* shadowed = nullptr) {
  std::set<std::string> local;
  if (!shadowed) shadowed = &local;
  switch (e->kind) {
    case Expr::Kind::Var: {
      if (e->var_kind != kind || shadowed->count(e->name)) return e;
      auto it = renaming.find(e->name);
      if (it == renaming.end()) return e;
      return Expr::var(kind, it->second, e->sort, e->span);
    }
    case Expr::Kind::Forall: {
      bool added = shadowed->insert(e->name).second;
      ExprPtr body = rename_vars(e->args[0], kind, renaming, shadowed);
      if (added) shadowed->erase(e->name);
      if (body == e->args[0]) return e;
      return Expr::forall(e->name, e->binder_sort, body, e->span);
    }
    default:
      break;
  }
  std::vector<ExprPtr> args;
  args.reserve(e->args.size());
  bool changed = false;
  for (const auto& child : e->args) {
    args.push_back(rename_vars(child, kind, renaming, shadowed));
    changed = changed || args.back() != child;
  }
  if (!changed) return e;
  switch (e->kind) {
    case Expr::Kind::Unary: return Expr::unary(e->unary_op, args[0], e->span);
    case Expr::Kind::Binary: return Expr::binary(e->binary_op, args[0], args[1], e->span);
    case Expr::Kind::Select: return Expr::select(args[0], args[1], e->span);
    case Expr::Kind::Store: return Expr::store(args[0], args[1], args[2], e->span);
    case Expr::Kind::Old: return Expr::old(args[0], e->span);
    case Expr::Kind::Apply: return Expr::apply(e->name, std::move(args), e->sort, e->span);
    default: return e;
  }
}

}  // namespace

OpInstance instantiate(const Operation& op, int id) {
  OpInstance inst;
  inst.op_name = op.name;
  inst.id = id;
  inst.span = op.span;
  std::map<std::string, std::string> renaming;
  for (const auto& p : op.params) {
    std::string renamed = param_symbol(p.name, id);
    renaming.emplace(p.name, renamed);
    inst.params.push_back({renamed, p.sort, p.span});
    inst.original_param_names.push_back(p.name);
  }
  inst.pre = rename_vars(op.pre, VarKind::Param, renaming);
  inst.post = rename_vars(op.post, VarKind::Param, renaming);
  for (const auto& acq : op.acquires) {
    AcquireClause renamed = acq;
    for (auto& arg : renamed.args) arg = rename_vars(arg, VarKind::Param, renaming);
    inst.acquires.push_back(std::move(renamed));
  }
  return inst;
}

Operation strip_instance(const OpInstance& inst) {
  Operation op;
  op.name = inst.op_name;
  op.span = inst.span;
  std::map<std::string, std::string> back;
  for (std::size_t i = 0; i < inst.params.size(); ++i) {
    back.emplace(inst.params[i].name, inst.original_param_names[i]);
    op.params.push_back({inst.original_param_names[i], inst.params[i].sort, inst.params[i].span});
  }
  op.pre = rename_vars(inst.pre, VarKind::Param, back);
  op.post = rename_vars(inst.post, VarKind::Param, back);
  for (const auto& acq : inst.acquires) {
    AcquireClause stripped = acq;
    for (auto& arg : stripped.args) arg = rename_vars(arg, VarKind::Param, back);
    op.acquires.push_back(std::move(stripped));
  }
  return op;
}

namespace {

bool occurs_free(const ExprPtr& e, const std::string& name) {
  bool found = false;
  for_each_free_var(e, [&](const Expr& v) {
    if (v.name == name) found = true;
  });
  return found;
}

ExprPtr substitute_impl(const ExprPtr& e, const std::map<std::string, ExprPtr>& binding,
                        std::set<std::string>& shadowed, int& fresh_counter) {
  switch (e->kind) {
    case Expr::Kind::Var: {
      if (shadowed.count(e->name)) return e;
      auto it = binding.find(e->name);
      if (it == binding.end()) return e;
      if (it->second->sort != e->sort)
        throw SortError(e->span, it->second->sort.to_string(), e->sort.to_string());
      return it->second;
    }
    case Expr::Kind::Forall: {
      // Alpha-rename the binder when a substituted value would be captured.
      bool capture = false;
      for (const auto& [name, value] : binding) {
        if (name == e->name || shadowed.count(name)) continue;
        if (occurs_free(e->args[0], name) && occurs_free(value, e->name)) {
          capture = true;
          break;
        }
      }
      std::string binder = e->name;
      ExprPtr body = e->args[0];
      if (capture) {
        std::string fresh;
        do {
          fresh = e->name + "'" + std::to_string(fresh_counter++);
        } while (occurs_free(body, fresh));
        std::map<std::string, ExprPtr> rename{
            {e->name, Expr::var(VarKind::Bound, fresh, e->binder_sort)}};
        std::set<std::string> none;
        body = substitute_impl(body, rename, none, fresh_counter);
        binder = fresh;
      }
      bool added = shadowed.insert(binder).second;
      ExprPtr new_body = substitute_impl(body, binding, shadowed, fresh_counter);
      if (added) shadowed.erase(binder);
      if (new_body == e->args[0] && binder == e->name) return e;
      return Expr::forall(binder, e->binder_sort, new_body, e->span);
    }
    default:
      break;
  }
  std::vector<ExprPtr> args;
  args.reserve(e->args.size());
  bool changed = false;
  for (const auto& child : e->args) {
    args.push_back(substitute_impl(child, binding, shadowed, fresh_counter));
    changed = changed || args.back() != child;
  }
  if (!changed) return e;
  switch (e->kind) {
    case Expr::Kind::Unary: return Expr::unary(e->unary_op, args[0], e->span);
    case Expr::Kind::Binary: return Expr::binary(e->binary_op, args[0], args[1], e->span);
    case Expr::Kind::Select: return Expr::select(args[0], args[1], e->span);
    case Expr::Kind::Store: return Expr::store(args[0], args[1], args[2], e->span);
    case Expr::Kind::Old: return Expr::old(args[0], e->span);
    case Expr::Kind::Apply: return Expr::apply(e->name, std::move(args), e->sort, e->span);
    default: return e;
  }
}

}  // namespace

ExprPtr substitute(const ExprPtr& e, const std::map<std::string, ExprPtr>& binding) {
  std::set<std::string> shadowed;
  int fresh_counter = 0;
  return substitute_impl(e, binding, shadowed, fresh_counter);
}

namespace {

ExprPtr index_states(const ExprPtr& e, int bare_index, int old_index, bool allow_old) {
  switch (e->kind) {
    case Expr::Kind::Var:
      if (e->var_kind == VarKind::State)
        return Expr::var(VarKind::State, state_symbol(e->name, bare_index), e->sort, e->span);
      return e;
    case Expr::Kind::Old: {
      if (!allow_old) throw std::logic_error("old() outside of an ensures rewrite");
      return index_states(e->args[0], old_index, old_index, false);
    }
    default:
      break;
  }
  std::vector<ExprPtr> args;
  args.reserve(e->args.size());
  bool changed = false;
  for (const auto& child : e->args) {
    args.push_back(index_states(child, bare_index, old_index, allow_old));
    changed = changed || args.back() != child;
  }
  if (!changed) return e;
  switch (e->kind) {
    case Expr::Kind::Unary: return Expr::unary(e->unary_op, args[0], e->span);
    case Expr::Kind::Binary: return Expr::binary(e->binary_op, args[0], args[1], e->span);
    case Expr::Kind::Select: return Expr::select(args[0], args[1], e->span);
    case Expr::Kind::Store: return Expr::store(args[0], args[1], args[2], e->span);
    case Expr::Kind::Apply: return Expr::apply(e->name, std::move(args), e->sort, e->span);
    case Expr::Kind::Forall: return Expr::forall(e->name, e->binder_sort, args[0], e->span);
    default: return e;
  }
}

}  // namespace

ExprPtr at_state(const ExprPtr& e, int index) { return index_states(e, index, index, false); }

EffectorRelation effector(const Specification& spec, const OpInstance& inst, int from, int to) {
  EffectorRelation rel;
  rel.from = from;
  rel.to = to;

  std::vector<ExprPtr> conjuncts;
  conjuncts.push_back(index_states(inst.post, to, from, true));

  Operation ensures_holder;
  ensures_holder.post = inst.post;
  std::vector<std::string> modified_list = modified_vars(ensures_holder);
  std::set<std::string> modified(modified_list.begin(), modified_list.end());

  for (const auto& v : spec.variables) {
    if (modified.count(v.name)) continue;
    conjuncts.push_back(Expr::eq(Expr::var(VarKind::State, state_symbol(v.name, to), v.sort),
                                 Expr::var(VarKind::State, state_symbol(v.name, from), v.sort)));
  }
  rel.formula = Expr::conjoin(std::move(conjuncts));
  return rel;
}

ExprPtr state_equal(const Specification& spec, int index_a, int index_b) {
  std::vector<ExprPtr> conjuncts;
  for (const auto& v : spec.variables) {
    ExprPtr lhs = Expr::var(VarKind::State, state_symbol(v.name, index_a), v.sort);
    ExprPtr rhs = Expr::var(VarKind::State, state_symbol(v.name, index_b), v.sort);
    if (const EqualsDef* def = spec.equals_for(v.sort)) {
      conjuncts.push_back(substitute(def->body, {{def->lhs_name, lhs}, {def->rhs_name, rhs}}));
    } else if (v.sort.is_map()) {
      // Default pointwise equality over the key sort.
      std::string binder = "k_";
      ExprPtr key = Expr::var(VarKind::Bound, binder, v.sort.key());
      conjuncts.push_back(Expr::forall(
          binder, v.sort.key(), Expr::eq(Expr::select(lhs, key), Expr::select(rhs, key))));
    } else {
      conjuncts.push_back(Expr::eq(std::move(lhs), std::move(rhs)));
    }
  }
  return Expr::conjoin(std::move(conjuncts));
}

}  // namespace cise::logic
