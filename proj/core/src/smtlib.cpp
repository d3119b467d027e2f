#include "cise/smtlib.hpp"

#include <map>
#include <set>
#include <sstream>

namespace cise::solve {

namespace {

std::string quoted(const std::string& name) { return "|" + name + "|"; }

void emit(const ExprPtr& e, std::ostream& os) {
  switch (e->kind) {
    case Expr::Kind::IntLit:
      if (e->int_value < 0)
        os << "(- " << -e->int_value << ")";
      else
        os << e->int_value;
      return;
    case Expr::Kind::BoolLit:
      os << (e->bool_value ? "true" : "false");
      return;
    case Expr::Kind::Var:
      os << quoted(e->name);
      return;
    case Expr::Kind::Unary:
      os << (e->unary_op == UnaryOp::Neg ? "(- " : "(not ");
      emit(e->args[0], os);
      os << ")";
      return;
    case Expr::Kind::Binary: {
      const char* op = nullptr;
      switch (e->binary_op) {
        case BinaryOp::Add: op = "+"; break;
        case BinaryOp::Sub: op = "-"; break;
        case BinaryOp::Mul: op = "*"; break;
        case BinaryOp::Eq: op = "="; break;
        case BinaryOp::Ne: op = nullptr; break;
        case BinaryOp::Lt: op = "<"; break;
        case BinaryOp::Le: op = "<="; break;
        case BinaryOp::Gt: op = ">"; break;
        case BinaryOp::Ge: op = ">="; break;
        case BinaryOp::And: op = "and"; break;
        case BinaryOp::Or: op = "or"; break;
        case BinaryOp::Implies: op = "=>"; break;
      }
      if (e->binary_op == BinaryOp::Ne) {
        os << "(not (= ";
        emit(e->args[0], os);
        os << " ";
        emit(e->args[1], os);
        os << "))";
        return;
      }
      os << "(" << op << " ";
      emit(e->args[0], os);
      os << " ";
      emit(e->args[1], os);
      os << ")";
      return;
    }
    case Expr::Kind::Select:
      os << "(select ";
      emit(e->args[0], os);
      os << " ";
      emit(e->args[1], os);
      os << ")";
      return;
    case Expr::Kind::Store:
      os << "(store ";
      emit(e->args[0], os);
      os << " ";
      emit(e->args[1], os);
      os << " ";
      emit(e->args[2], os);
      os << ")";
      return;
    case Expr::Kind::Old:
      throw std::logic_error("old() reached SMT emission; effector rewriting missed it");
    case Expr::Kind::Apply:
      if (e->args.empty()) {
        os << quoted(e->name);
        return;
      }
      os << "(" << quoted(e->name);
      for (const auto& a : e->args) {
        os << " ";
        emit(a, os);
      }
      os << ")";
      return;
    case Expr::Kind::Forall:
      os << "(forall ((" << quoted(e->name) << " " << smt_sort(e->binder_sort) << ")) ";
      emit(e->args[0], os);
      os << ")";
      return;
  }
}

}  // namespace

std::string smt_sort(const Sort& sort) {
  switch (sort.kind()) {
    case Sort::Kind::Int: return "Int";
    case Sort::Kind::Bool: return "Bool";
    case Sort::Kind::Uninterpreted: return quoted(sort.name());
    case Sort::Kind::Map:
      return "(Array " + smt_sort(sort.key()) + " " + smt_sort(sort.value()) + ")";
  }
  return "Int";
}

std::string smt_term(const ExprPtr& e) {
  std::ostringstream os;
  emit(e, os);
  return os.str();
}

std::string to_smtlib(const vc::VerificationTask& task) {
  std::ostringstream os;
  os << "(set-option :produce-models true)\n";
  os << "(set-logic ALL)\n";
  for (const auto& sort : task.spec->uninterpreted_sorts)
    os << "(declare-sort " << quoted(sort) << " 0)\n";

  // Functions are declared from the specification; every other free symbol
  // (state copies, renamed parameters) comes from the decode map.
  std::set<std::string> declared;
  for (const auto& fn : task.spec->functions) {
    os << "(declare-fun " << quoted(fn.name) << " (";
    for (std::size_t i = 0; i < fn.param_sorts.size(); ++i) {
      if (i) os << " ";
      os << smt_sort(fn.param_sorts[i]);
    }
    os << ") " << smt_sort(fn.result) << ")\n";
    declared.insert(fn.name);
  }
  for (const auto& [name, info] : task.decode) {
    if (declared.count(name)) continue;
    os << "(declare-fun " << quoted(name) << " () " << smt_sort(info.sort) << ")\n";
  }
  os << "(assert " << smt_term(task.query) << ")\n";
  os << "(check-sat)\n";
  return os.str();
}

}  // namespace cise::solve
