#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cise/sort.hpp"
#include "cise/source.hpp"

namespace cise {

enum class UnaryOp { Neg, Not };
enum class BinaryOp { Add, Sub, Mul, Eq, Ne, Lt, Le, Gt, Ge, And, Or, Implies };

/// What a Var node refers to. State variables and parameters keep their kind
/// through verification-time renaming (balance -> balance@1, amount -> amount#2),
/// which the decode maps rely on. Bound covers quantifier binders.
enum class VarKind { State, Param, Bound };

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable, fully sorted expression tree shared between the surface DSL and
/// verification-condition formulas. Nodes are created through the factories,
/// which compute result sorts and reject ill-sorted construction.
class Expr {
public:
  enum class Kind { IntLit, BoolLit, Var, Unary, Binary, Select, Store, Old, Apply, Forall };

  Kind kind;
  Sort sort;
  SourceSpan span;

  long long int_value = 0;  // IntLit
  bool bool_value = false;  // BoolLit
  VarKind var_kind = VarKind::State;
  std::string name;              // Var: symbol; Apply: function; Forall: binder
  UnaryOp unary_op = UnaryOp::Neg;
  BinaryOp binary_op = BinaryOp::Add;
  Sort binder_sort;              // Forall
  std::vector<ExprPtr> args;     // children

  static ExprPtr int_lit(long long v, SourceSpan span = {});
  static ExprPtr bool_lit(bool v, SourceSpan span = {});
  static ExprPtr var(VarKind k, std::string name, Sort sort, SourceSpan span = {});
  static ExprPtr unary(UnaryOp op, ExprPtr a, SourceSpan span = {});
  static ExprPtr binary(BinaryOp op, ExprPtr a, ExprPtr b, SourceSpan span = {});
  static ExprPtr select(ExprPtr map, ExprPtr key, SourceSpan span = {});
  static ExprPtr store(ExprPtr map, ExprPtr key, ExprPtr value, SourceSpan span = {});
  static ExprPtr old(ExprPtr e, SourceSpan span = {});
  static ExprPtr apply(std::string fn, std::vector<ExprPtr> args, Sort result,
                       SourceSpan span = {});
  static ExprPtr forall(std::string binder, Sort binder_sort, ExprPtr body,
                        SourceSpan span = {});

  static ExprPtr not_(ExprPtr a) { return unary(UnaryOp::Not, std::move(a)); }
  static ExprPtr eq(ExprPtr a, ExprPtr b) { return binary(BinaryOp::Eq, std::move(a), std::move(b)); }
  static ExprPtr ne(ExprPtr a, ExprPtr b) { return binary(BinaryOp::Ne, std::move(a), std::move(b)); }

  /// Conjunction; true for an empty list, the sole element for a singleton.
  static ExprPtr conjoin(std::vector<ExprPtr> conjuncts);

  Expr() = default;  // construct through the factories
};

/// Structural equality ignoring spans.
bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

/// Visits every free (non-bound) Var occurrence; bound names are tracked
/// through quantifiers. Also visits Apply nodes (for function symbols) when
/// `visit_apply` is set.
void for_each_free_var(const ExprPtr& e,
                       const std::function<void(const Expr&)>& visit_var,
                       const std::function<void(const Expr&)>& visit_apply = nullptr);

/// Flattens nested top-level conjunctions into a list.
void flatten_conjuncts(const ExprPtr& e, std::vector<ExprPtr>& out);

std::string to_string(UnaryOp op);
std::string to_string(BinaryOp op);

}  // namespace cise
