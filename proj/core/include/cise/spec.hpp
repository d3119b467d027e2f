#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cise/expr.hpp"

namespace cise {

/// A named, sorted binder: operation parameter, state variable declaration,
/// or token template parameter.
struct Param {
  std::string name;
  Sort sort;
  SourceSpan span;
};

struct FunctionDecl {
  std::string name;
  std::vector<Sort> param_sorts;
  Sort result;
  SourceSpan span;
};

struct EqualsDef {
  Sort sort;
  std::string lhs_name;
  std::string rhs_name;
  ExprPtr body;
  SourceSpan span;
};

struct AcquireClause {
  std::string token;
  std::vector<ExprPtr> args;
  SourceSpan span;
};

struct Operation {
  std::string name;
  SourceSpan span;  // of the operation header
  std::vector<Param> params;
  ExprPtr pre;   // conjunction of the requires clauses; literal true when absent
  ExprPtr post;  // conjunction of the ensures clauses; literal true when absent
  std::vector<AcquireClause> acquires;
};

struct TokenDecl {
  std::string name;
  std::vector<Param> params;
  SourceSpan span;
};

/// Parsed, resolved, and sort-checked model of one .spec file. Immutable
/// after parse_spec returns; safe to share read-only across workers.
struct Specification {
  std::string source_name;

  std::vector<std::string> uninterpreted_sorts;  // declaration order
  std::vector<FunctionDecl> functions;
  std::vector<ExprPtr> axioms;
  std::vector<Param> variables;  // state variables, declaration order
  std::vector<EqualsDef> equals_defs;
  ExprPtr invariant;
  std::vector<Operation> operations;
  std::vector<TokenDecl> tokens;
  std::vector<std::pair<std::string, std::string>> conflicts;  // normalized a <= b
  bool has_tokens_section = false;

  const Operation* find_operation(const std::string& name) const;
  const FunctionDecl* find_function(const std::string& name) const;
  const TokenDecl* find_token(const std::string& name) const;
  const Param* find_variable(const std::string& name) const;

  /// User @equals body for the given sort, or nullptr (default equality applies).
  const EqualsDef* equals_for(const Sort& sort) const;

  bool conflicting(const std::string& a, const std::string& b) const;
};

/// State variables occurring in the operation's ensures outside old(...),
/// sorted and deduplicated. These are the variables the effector assigns;
/// everything else is framed.
std::vector<std::string> modified_vars(const Operation& op);

}  // namespace cise
