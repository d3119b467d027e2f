#include "cise/printer.hpp"

#include <sstream>

namespace cise {

namespace {

// Binding strength, matching the parser's precedence chain.
enum Level {
  kImplies = 1,
  kOr = 2,
  kAnd = 3,
  kNot = 4,
  kCompare = 5,
  kAdditive = 6,
  kMultiplicative = 7,
  kUnary = 8,
  kPostfix = 9,
  kAtom = 10,
};

int level_of(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Unary:
      return e.unary_op == UnaryOp::Not ? kNot : kUnary;
    case Expr::Kind::Binary:
      switch (e.binary_op) {
        case BinaryOp::Implies: return kImplies;
        case BinaryOp::Or: return kOr;
        case BinaryOp::And: return kAnd;
        case BinaryOp::Eq:
        case BinaryOp::Ne:
        case BinaryOp::Lt:
        case BinaryOp::Le:
        case BinaryOp::Gt:
        case BinaryOp::Ge: return kCompare;
        case BinaryOp::Add:
        case BinaryOp::Sub: return kAdditive;
        case BinaryOp::Mul: return kMultiplicative;
      }
      return kAtom;
    case Expr::Kind::Select:
    case Expr::Kind::Store:
      return kPostfix;
    default:
      return kAtom;  // literals, vars, old(...), f(...), (forall ...)
  }
}

void render(const ExprPtr& e, int min_level, std::ostream& os);

void render_child(const ExprPtr& child, int min_level, std::ostream& os) {
  if (level_of(*child) < min_level) {
    os << "(";
    render(child, kImplies, os);
    os << ")";
  } else {
    render(child, min_level, os);
  }
}

void render(const ExprPtr& e, int /*min_level*/, std::ostream& os) {
  switch (e->kind) {
    case Expr::Kind::IntLit:
      os << e->int_value;
      return;
    case Expr::Kind::BoolLit:
      os << (e->bool_value ? "true" : "false");
      return;
    case Expr::Kind::Var:
      os << e->name;
      return;
    case Expr::Kind::Unary:
      os << to_string(e->unary_op);
      // operand must bind at least as tightly as the operator itself
      render_child(e->args[0], level_of(*e), os);
      return;
    case Expr::Kind::Binary: {
      int lvl = level_of(*e);
      bool right_assoc = e->binary_op == BinaryOp::Implies;
      bool non_assoc = lvl == kCompare;
      render_child(e->args[0], right_assoc || non_assoc ? lvl + 1 : lvl, os);
      os << " " << to_string(e->binary_op) << " ";
      render_child(e->args[1], right_assoc ? lvl : lvl + 1, os);
      return;
    }
    case Expr::Kind::Select:
      render_child(e->args[0], kPostfix, os);
      os << "[";
      render_child(e->args[1], kImplies, os);
      os << "]";
      return;
    case Expr::Kind::Store:
      render_child(e->args[0], kPostfix, os);
      os << "[";
      render_child(e->args[1], kImplies, os);
      os << " := ";
      render_child(e->args[2], kImplies, os);
      os << "]";
      return;
    case Expr::Kind::Old:
      os << "old(";
      render_child(e->args[0], kImplies, os);
      os << ")";
      return;
    case Expr::Kind::Apply: {
      os << e->name << "(";
      for (std::size_t i = 0; i < e->args.size(); ++i) {
        if (i) os << ", ";
        render_child(e->args[i], kImplies, os);
      }
      os << ")";
      return;
    }
    case Expr::Kind::Forall:
      os << "(forall " << e->name << ": " << e->binder_sort.to_string() << " :: ";
      render_child(e->args[0], kImplies, os);
      os << ")";
      return;
  }
}

}  // namespace

std::string to_string(const ExprPtr& e) {
  std::ostringstream os;
  render(e, kImplies, os);
  return os.str();
}

std::string to_source(const Specification& spec) {
  std::ostringstream os;

  os << "@init\n";
  for (const auto& s : spec.uninterpreted_sorts) os << "type " << s << ";\n";
  for (const auto& f : spec.functions) {
    os << "function " << f.name << "(";
    for (std::size_t i = 0; i < f.param_sorts.size(); ++i) {
      if (i) os << ", ";
      os << f.param_sorts[i].to_string();
    }
    os << "): " << f.result.to_string() << ";\n";
  }
  for (const auto& a : spec.axioms) os << "axiom " << to_string(a) << ";\n";

  os << "\n@variable\n";
  for (const auto& v : spec.variables)
    os << "var " << v.name << ": " << v.sort.to_string() << ";\n";

  os << "\n@equals\n";
  for (const auto& def : spec.equals_defs)
    os << "equals (" << def.lhs_name << ": " << def.sort.to_string() << ", " << def.rhs_name
       << ": " << def.sort.to_string() << ") := " << to_string(def.body) << ";\n";

  if (spec.has_tokens_section || !spec.tokens.empty()) {
    os << "\n@tokens\n";
    for (const auto& t : spec.tokens) {
      os << "token " << t.name << "(";
      for (std::size_t i = 0; i < t.params.size(); ++i) {
        if (i) os << ", ";
        os << t.params[i].name << ": " << t.params[i].sort.to_string();
      }
      os << ");\n";
    }
    for (const auto& c : spec.conflicts) os << "conflict " << c.first << " " << c.second << ";\n";
  }

  os << "\n@invariant\n" << to_string(spec.invariant) << ";\n";

  os << "\n@operations\n";
  for (const auto& op : spec.operations) {
    os << "\noperation " << op.name << "(";
    for (std::size_t i = 0; i < op.params.size(); ++i) {
      if (i) os << ", ";
      os << op.params[i].name << ": " << op.params[i].sort.to_string();
    }
    os << ")\n";
    bool pre_trivial = op.pre->kind == Expr::Kind::BoolLit && op.pre->bool_value;
    if (!pre_trivial) os << "  requires " << to_string(op.pre) << ";\n";
    os << "  ensures " << to_string(op.post) << ";\n";
    for (const auto& a : op.acquires) {
      os << "  acquires " << a.token << "(";
      for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) os << ", ";
        os << to_string(a.args[i]);
      }
      os << ");\n";
    }
  }
  return os.str();
}

}  // namespace cise
