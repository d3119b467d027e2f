#pragma once

#include <map>
#include <string>

#include "cise/spec.hpp"

namespace cise::logic {

/// Mangled symbol for state variable `base` at state index `index`
/// ("balance@1"). '@' cannot occur in source identifiers, so these never
/// collide with user names.
std::string state_symbol(const std::string& base, int index);

/// Mangled symbol for parameter `base` of operation instance `id`
/// ("amount#2").
std::string param_symbol(const std::string& base, int id);

/// Splits "balance@1" into ("balance", 1); returns false for unindexed names.
bool split_state_symbol(const std::string& symbol, std::string& base, int& index);
bool split_param_symbol(const std::string& symbol, std::string& base, int& id);

/// One operation occurrence inside a pairwise check. Parameters are renamed
/// name -> name#id so two instances never share symbols; pre/post/acquire
/// arguments are rewritten accordingly.
struct OpInstance {
  std::string op_name;
  int id = 1;
  SourceSpan span;
  std::vector<Param> params;           // renamed
  std::vector<std::string> original_param_names;
  ExprPtr pre;                         // renamed parameters, unindexed state
  ExprPtr post;
  std::vector<AcquireClause> acquires; // args renamed
};

OpInstance instantiate(const Operation& op, int id);

/// Undoes the #id renaming; used to state the round-trip property.
Operation strip_instance(const OpInstance& inst);

/// Capture-avoiding simultaneous substitution of free variables by name.
/// Throws SortError when a binding is not sort-preserving.
ExprPtr substitute(const ExprPtr& e, const std::map<std::string, ExprPtr>& binding);

/// Rewrites every state variable v to v@index. The expression must be
/// old-free (preconditions, invariants, already-rewritten terms).
ExprPtr at_state(const ExprPtr& e, int index);

/// The instance's transition relation from state `from` to state `to`:
/// ensures with old(v) -> v@from and bare v -> v@to, conjoined with frame
/// equalities v@to == v@from for every state variable the ensures does not
/// constrain.
struct EffectorRelation {
  int from = 0;
  int to = 1;
  ExprPtr formula;
};
EffectorRelation effector(const Specification& spec, const OpInstance& inst, int from, int to);
inline EffectorRelation effector(const Specification& spec, const OpInstance& inst, int from) {
  return effector(spec, inst, from, from + 1);
}

/// Conjunction over all state variables of the @equals body (or the default
/// equality: == for scalars, pointwise forall for maps) applied to
/// (v@index_a, v@index_b). Literal true when there are no state variables.
ExprPtr state_equal(const Specification& spec, int index_a, int index_b);

}  // namespace cise::logic
