#pragma once

#include "cise/expr.hpp"
#include "cise/value.hpp"

namespace cise {

/// A free symbol of the expression has no assignment in the model.
class UnassignedSymbol : public Error {
public:
  UnassignedSymbol(SourceSpan span, std::string name)
      : Error(span, "no value for symbol '" + name + "'"), name(std::move(name)) {}
  std::string name;
};

/// A finite domain (or a quantifier instantiation) exceeded the enumeration
/// budget; callers surface this as Unknown(incompleteness).
class DomainTooLarge : public Error {
public:
  explicit DomainTooLarge(const std::string& what)
      : Error(SourceSpan{}, "finite domain too large: " + what) {}
};

/// All values of `sort` within the bounds, in canonical enumeration order:
/// ints ascending, bools false/true, elements by index, maps by value tuple
/// (keys in ascending order, first key most significant).
std::vector<Value> enumerate_domain(const Sort& sort, const DomainBounds& bounds);

/// Number of values enumerate_domain would return; throws DomainTooLarge
/// beyond the budget.
unsigned long long domain_size(const Sort& sort, const DomainBounds& bounds);

/// Canonical default used for map construction: 0 when in range, else the
/// low bound (and recursively for nested sorts).
Value canonical_default(const Sort& sort, const DomainBounds& bounds);

/// Standard semantics over a model. Quantifiers range over the bounded
/// domains. Throws UnassignedSymbol for symbols the model lacks and
/// DomainTooLarge when a quantified domain exceeds the budget. old() nodes
/// must have been rewritten away before evaluation.
Value eval(const Model& model, const ExprPtr& e, const DomainBounds& bounds);

}  // namespace cise
