#include "cise/spec.hpp"

#include <algorithm>
#include <set>

namespace cise {

const Operation* Specification::find_operation(const std::string& name) const {
  for (const auto& op : operations)
    if (op.name == name) return &op;
  return nullptr;
}

const FunctionDecl* Specification::find_function(const std::string& name) const {
  for (const auto& f : functions)
    if (f.name == name) return &f;
  return nullptr;
}

const TokenDecl* Specification::find_token(const std::string& name) const {
  for (const auto& t : tokens)
    if (t.name == name) return &t;
  return nullptr;
}

const Param* Specification::find_variable(const std::string& name) const {
  for (const auto& v : variables)
    if (v.name == name) return &v;
  return nullptr;
}

const EqualsDef* Specification::equals_for(const Sort& sort) const {
  for (const auto& def : equals_defs)
    if (def.sort == sort) return &def;
  return nullptr;
}

bool Specification::conflicting(const std::string& a, const std::string& b) const {
  const auto& lo = a <= b ? a : b;
  const auto& hi = a <= b ? b : a;
  for (const auto& c : conflicts)
    if (c.first == lo && c.second == hi) return true;
  return false;
}

namespace {

void collect_modified(const ExprPtr& e, bool under_old, std::set<std::string>& out) {
  if (e->kind == Expr::Kind::Old) {
    collect_modified(e->args[0], true, out);
    return;
  }
  if (e->kind == Expr::Kind::Var && e->var_kind == VarKind::State && !under_old) {
    out.insert(e->name);
    return;
  }
  for (const auto& child : e->args) collect_modified(child, under_old, out);
}

}  // namespace

std::vector<std::string> modified_vars(const Operation& op) {
  std::set<std::string> names;
  collect_modified(op.post, false, names);
  return {names.begin(), names.end()};
}

}  // namespace cise
