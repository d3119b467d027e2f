#include "cise/expr.hpp"

#include <stdexcept>

namespace cise {

namespace {

[[noreturn]] void bad_construction(const std::string& what) {
  throw std::logic_error("ill-sorted expression construction: " + what);
}

std::shared_ptr<Expr> make_node(Expr::Kind kind, Sort sort, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->sort = std::move(sort);
  e->span = span;
  return e;
}

}  // namespace

ExprPtr Expr::int_lit(long long v, SourceSpan span) {
  auto e = make_node(Kind::IntLit, Sort::int_sort(), span);
  e->int_value = v;
  return e;
}

ExprPtr Expr::bool_lit(bool v, SourceSpan span) {
  auto e = make_node(Kind::BoolLit, Sort::bool_sort(), span);
  e->bool_value = v;
  return e;
}

ExprPtr Expr::var(VarKind k, std::string name, Sort sort, SourceSpan span) {
  auto e = make_node(Kind::Var, std::move(sort), span);
  e->var_kind = k;
  e->name = std::move(name);
  return e;
}

ExprPtr Expr::unary(UnaryOp op, ExprPtr a, SourceSpan span) {
  if (op == UnaryOp::Neg && !a->sort.is_int()) bad_construction("unary - on " + a->sort.to_string());
  if (op == UnaryOp::Not && !a->sort.is_bool()) bad_construction("! on " + a->sort.to_string());
  auto e = make_node(Kind::Unary, op == UnaryOp::Neg ? Sort::int_sort() : Sort::bool_sort(), span);
  e->unary_op = op;
  e->args = {std::move(a)};
  return e;
}

ExprPtr Expr::binary(BinaryOp op, ExprPtr a, ExprPtr b, SourceSpan span) {
  Sort result;
  switch (op) {
    case BinaryOp::Add:
    case BinaryOp::Sub:
    case BinaryOp::Mul:
      if (!a->sort.is_int() || !b->sort.is_int())
        bad_construction(to_string(op) + " on " + a->sort.to_string() + ", " + b->sort.to_string());
      result = Sort::int_sort();
      break;
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge:
      if (!a->sort.is_int() || !b->sort.is_int())
        bad_construction(to_string(op) + " on " + a->sort.to_string() + ", " + b->sort.to_string());
      result = Sort::bool_sort();
      break;
    case BinaryOp::Eq:
    case BinaryOp::Ne:
      if (a->sort != b->sort)
        bad_construction("equality between " + a->sort.to_string() + " and " + b->sort.to_string());
      result = Sort::bool_sort();
      break;
    case BinaryOp::And:
    case BinaryOp::Or:
    case BinaryOp::Implies:
      if (!a->sort.is_bool() || !b->sort.is_bool())
        bad_construction(to_string(op) + " on " + a->sort.to_string() + ", " + b->sort.to_string());
      result = Sort::bool_sort();
      break;
  }
  auto e = make_node(Kind::Binary, result, span);
  e->binary_op = op;
  e->args = {std::move(a), std::move(b)};
  return e;
}

ExprPtr Expr::select(ExprPtr map, ExprPtr key, SourceSpan span) {
  if (!map->sort.is_map()) bad_construction("select on " + map->sort.to_string());
  if (key->sort != map->sort.key())
    bad_construction("select key " + key->sort.to_string() + " on " + map->sort.to_string());
  auto e = make_node(Kind::Select, map->sort.value(), span);
  e->args = {std::move(map), std::move(key)};
  return e;
}

ExprPtr Expr::store(ExprPtr map, ExprPtr key, ExprPtr value, SourceSpan span) {
  if (!map->sort.is_map()) bad_construction("store on " + map->sort.to_string());
  if (key->sort != map->sort.key() || value->sort != map->sort.value())
    bad_construction("store of " + value->sort.to_string() + " at " + key->sort.to_string() +
                     " into " + map->sort.to_string());
  auto e = make_node(Kind::Store, map->sort, span);
  e->args = {std::move(map), std::move(key), std::move(value)};
  return e;
}

ExprPtr Expr::old(ExprPtr inner, SourceSpan span) {
  auto e = make_node(Kind::Old, inner->sort, span);
  e->args = {std::move(inner)};
  return e;
}

ExprPtr Expr::apply(std::string fn, std::vector<ExprPtr> args, Sort result, SourceSpan span) {
  auto e = make_node(Kind::Apply, std::move(result), span);
  e->name = std::move(fn);
  e->args = std::move(args);
  return e;
}

ExprPtr Expr::forall(std::string binder, Sort binder_sort, ExprPtr body, SourceSpan span) {
  if (!body->sort.is_bool()) bad_construction("forall body of sort " + body->sort.to_string());
  auto e = make_node(Kind::Forall, Sort::bool_sort(), span);
  e->name = std::move(binder);
  e->binder_sort = std::move(binder_sort);
  e->args = {std::move(body)};
  return e;
}

ExprPtr Expr::conjoin(std::vector<ExprPtr> conjuncts) {
  if (conjuncts.empty()) return bool_lit(true);
  ExprPtr acc = conjuncts.front();
  for (std::size_t i = 1; i < conjuncts.size(); ++i)
    acc = binary(BinaryOp::And, acc, conjuncts[i],
                 SourceSpan::join(acc->span, conjuncts[i]->span));
  return acc;
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->sort != b->sort) return false;
  switch (a->kind) {
    case Expr::Kind::IntLit:
      if (a->int_value != b->int_value) return false;
      break;
    case Expr::Kind::BoolLit:
      if (a->bool_value != b->bool_value) return false;
      break;
    case Expr::Kind::Var:
      if (a->var_kind != b->var_kind || a->name != b->name) return false;
      break;
    case Expr::Kind::Unary:
      if (a->unary_op != b->unary_op) return false;
      break;
    case Expr::Kind::Binary:
      if (a->binary_op != b->binary_op) return false;
      break;
    case Expr::Kind::Apply:
      if (a->name != b->name) return false;
      break;
    case Expr::Kind::Forall:
      if (a->name != b->name || a->binder_sort != b->binder_sort) return false;
      break;
    default:
      break;
  }
  if (a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!structurally_equal(a->args[i], b->args[i])) return false;
  return true;
}

namespace {

void walk_free(const ExprPtr& e, std::vector<std::string>& bound,
               const std::function<void(const Expr&)>& visit_var,
               const std::function<void(const Expr&)>& visit_apply) {
  switch (e->kind) {
    case Expr::Kind::Var: {
      for (const auto& name : bound)
        if (name == e->name) return;
      visit_var(*e);
      return;
    }
    case Expr::Kind::Forall: {
      bound.push_back(e->name);
      walk_free(e->args[0], bound, visit_var, visit_apply);
      bound.pop_back();
      return;
    }
    case Expr::Kind::Apply:
      if (visit_apply) visit_apply(*e);
      break;
    default:
      break;
  }
  for (const auto& child : e->args) walk_free(child, bound, visit_var, visit_apply);
}

}  // namespace

void for_each_free_var(const ExprPtr& e,
                       const std::function<void(const Expr&)>& visit_var,
                       const std::function<void(const Expr&)>& visit_apply) {
  std::vector<std::string> bound;
  walk_free(e, bound, visit_var, visit_apply);
}

void flatten_conjuncts(const ExprPtr& e, std::vector<ExprPtr>& out) {
  if (e->kind == Expr::Kind::Binary && e->binary_op == BinaryOp::And) {
    flatten_conjuncts(e->args[0], out);
    flatten_conjuncts(e->args[1], out);
  } else {
    out.push_back(e);
  }
}

std::string to_string(UnaryOp op) { return op == UnaryOp::Neg ? "-" : "!"; }

std::string to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
    case BinaryOp::Implies: return "==>";
  }
  return "?";
}

}  // namespace cise
