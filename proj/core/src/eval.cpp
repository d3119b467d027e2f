#include "cise/eval.hpp"

#include <map>

namespace cise {

namespace {

constexpr unsigned long long kDomainBudget = 1u << 20;

}  // namespace

unsigned long long domain_size(const Sort& sort, const DomainBounds& bounds) {
  switch (sort.kind()) {
    case Sort::Kind::Int: {
      unsigned long long n =
          static_cast<unsigned long long>(bounds.int_hi - bounds.int_lo + 1);
      return n;
    }
    case Sort::Kind::Bool:
      return 2;
    case Sort::Kind::Uninterpreted:
      return static_cast<unsigned long long>(bounds.cardinality_of(sort.name()));
    case Sort::Kind::Map: {
      unsigned long long keys = domain_size(sort.key(), bounds);
      unsigned long long values = domain_size(sort.value(), bounds);
      unsigned long long total = 1;
      for (unsigned long long i = 0; i < keys; ++i) {
        if (values != 0 && total > kDomainBudget / values)
          throw DomainTooLarge(sort.to_string());
        total *= values;
      }
      return total;
    }
  }
  return 0;
}

Value canonical_default(const Sort& sort, const DomainBounds& bounds) {
  switch (sort.kind()) {
    case Sort::Kind::Int:
      return Value::int_value(bounds.int_lo <= 0 && 0 <= bounds.int_hi ? 0 : bounds.int_lo);
    case Sort::Kind::Bool:
      return Value::bool_value(false);
    case Sort::Kind::Uninterpreted:
      return Value::elem(sort.name(), 0);
    case Sort::Kind::Map:
      return Value::map(canonical_default(sort.value(), bounds), {});
  }
  return Value::int_value(0);
}

std::vector<Value> enumerate_domain(const Sort& sort, const DomainBounds& bounds) {
  unsigned long long size = domain_size(sort, bounds);
  if (size > kDomainBudget) throw DomainTooLarge(sort.to_string());

  std::vector<Value> out;
  out.reserve(static_cast<std::size_t>(size));
  switch (sort.kind()) {
    case Sort::Kind::Int:
      for (long long v = bounds.int_lo; v <= bounds.int_hi; ++v)
        out.push_back(Value::int_value(v));
      break;
    case Sort::Kind::Bool:
      out.push_back(Value::bool_value(false));
      out.push_back(Value::bool_value(true));
      break;
    case Sort::Kind::Uninterpreted: {
      int card = bounds.cardinality_of(sort.name());
      for (int i = 0; i < card; ++i) out.push_back(Value::elem(sort.name(), i));
      break;
    }
    case Sort::Kind::Map: {
      std::vector<Value> keys = enumerate_domain(sort.key(), bounds);
      std::vector<Value> values = enumerate_domain(sort.value(), bounds);
      Value def = canonical_default(sort.value(), bounds);
      std::vector<std::size_t> odometer(keys.size(), 0);
      while (true) {
        std::vector<std::pair<Value, Value>> overrides;
        for (std::size_t i = 0; i < keys.size(); ++i)
          overrides.emplace_back(keys[i], values[odometer[i]]);
        out.push_back(Value::map(def, std::move(overrides)));
        // Advance with the last key fastest (first key most significant).
        std::size_t i = keys.size();
        while (i > 0) {
          --i;
          if (++odometer[i] < values.size()) break;
          odometer[i] = 0;
          if (i == 0) return out;
        }
        if (keys.empty()) break;  // single constant map
      }
      break;
    }
  }
  return out;
}

namespace {

struct Evaluator {
  const Model& model;
  const DomainBounds& bounds;
  std::map<std::string, Value> env;  // quantifier binders

  Value run(const ExprPtr& e) {
    switch (e->kind) {
      case Expr::Kind::IntLit:
        return Value::int_value(e->int_value);
      case Expr::Kind::BoolLit:
        return Value::bool_value(e->bool_value);
      case Expr::Kind::Var: {
        auto bound = env.find(e->name);
        if (bound != env.end()) return bound->second;
        auto it = model.assignments.find(e->name);
        if (it == model.assignments.end()) throw UnassignedSymbol(e->span, e->name);
        return it->second;
      }
      case Expr::Kind::Unary: {
        Value a = run(e->args[0]);
        return e->unary_op == UnaryOp::Neg ? Value::int_value(-a.as_int())
                                           : Value::bool_value(!a.as_bool());
      }
      case Expr::Kind::Binary:
        return run_binary(e);
      case Expr::Kind::Select:
        return run(e->args[0]).select(run(e->args[1]));
      case Expr::Kind::Store:
        return run(e->args[0]).store(run(e->args[1]), run(e->args[2]));
      case Expr::Kind::Old:
        throw std::logic_error("old() reached evaluation; effector rewriting missed it");
      case Expr::Kind::Apply: {
        if (e->args.empty()) {
          auto it = model.assignments.find(e->name);
          if (it == model.assignments.end()) throw UnassignedSymbol(e->span, e->name);
          return it->second;
        }
        auto fn = model.functions.find(e->name);
        if (fn == model.functions.end()) throw UnassignedSymbol(e->span, e->name);
        std::vector<Value> args;
        args.reserve(e->args.size());
        for (const auto& a : e->args) args.push_back(run(a));
        return fn->second.lookup(args);
      }
      case Expr::Kind::Forall: {
        std::vector<Value> domain = enumerate_domain(e->binder_sort, bounds);
        auto saved = env.find(e->name);
        Value saved_value;
        bool had = saved != env.end();
        if (had) saved_value = saved->second;
        bool all = true;
        for (const auto& v : domain) {
          env[e->name] = v;
          if (!run(e->args[0]).as_bool()) {
            all = false;
            break;
          }
        }
        if (had)
          env[e->name] = saved_value;
        else
          env.erase(e->name);
        return Value::bool_value(all);
      }
    }
    throw std::logic_error("unhandled expression kind in eval");
  }

  Value run_binary(const ExprPtr& e) {
    // Short-circuit the boolean connectives.
    switch (e->binary_op) {
      case BinaryOp::And: {
        if (!run(e->args[0]).as_bool()) return Value::bool_value(false);
        return Value::bool_value(run(e->args[1]).as_bool());
      }
      case BinaryOp::Or: {
        if (run(e->args[0]).as_bool()) return Value::bool_value(true);
        return Value::bool_value(run(e->args[1]).as_bool());
      }
      case BinaryOp::Implies: {
        if (!run(e->args[0]).as_bool()) return Value::bool_value(true);
        return Value::bool_value(run(e->args[1]).as_bool());
      }
      default:
        break;
    }
    Value a = run(e->args[0]);
    Value b = run(e->args[1]);
    switch (e->binary_op) {
      case BinaryOp::Add: return Value::int_value(a.as_int() + b.as_int());
      case BinaryOp::Sub: return Value::int_value(a.as_int() - b.as_int());
      case BinaryOp::Mul: return Value::int_value(a.as_int() * b.as_int());
      case BinaryOp::Eq: return Value::bool_value(a == b);
      case BinaryOp::Ne: return Value::bool_value(a != b);
      case BinaryOp::Lt: return Value::bool_value(a.as_int() < b.as_int());
      case BinaryOp::Le: return Value::bool_value(a.as_int() <= b.as_int());
      case BinaryOp::Gt: return Value::bool_value(a.as_int() > b.as_int());
      case BinaryOp::Ge: return Value::bool_value(a.as_int() >= b.as_int());
      default:
        throw std::logic_error("unhandled binary operator in eval");
    }
  }
};

}  // namespace

Value eval(const Model& model, const ExprPtr& e, const DomainBounds& bounds) {
  Evaluator ev{model, bounds, {}};
  return ev.run(e);
}

}  // namespace cise
