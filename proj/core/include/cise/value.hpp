#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cise/sort.hpp"

namespace cise {

/// Ground value of some Sort: integers, booleans, canonical elements of
/// uninterpreted sorts (elem_<sort>_<k>), and maps as default + finitely many
/// overrides. Map values are kept normalized (overrides sorted by key, no
/// entry equal to the default), so operator== is extensional equality.
class Value {
public:
  enum class Kind { Int, Bool, Elem, Map };

  Value() : kind_(Kind::Int) {}

  static Value int_value(long long v) {
    Value val;
    val.kind_ = Kind::Int;
    val.int_ = v;
    return val;
  }
  static Value bool_value(bool v) {
    Value val;
    val.kind_ = Kind::Bool;
    val.bool_ = v;
    return val;
  }
  static Value elem(std::string sort_name, int index) {
    Value val;
    val.kind_ = Kind::Elem;
    val.sort_name_ = std::move(sort_name);
    val.int_ = index;
    return val;
  }
  static Value map(Value default_value, std::vector<std::pair<Value, Value>> overrides);

  Kind kind() const { return kind_; }
  long long as_int() const { return int_; }
  bool as_bool() const { return bool_; }
  int elem_index() const { return static_cast<int>(int_); }
  const std::string& elem_sort() const { return sort_name_; }
  const Value& map_default() const;
  const std::vector<std::pair<Value, Value>>& map_overrides() const;

  Value select(const Value& key) const;
  Value store(const Value& key, const Value& value) const;

  bool operator==(const Value& o) const;
  bool operator!=(const Value& o) const { return !(*this == o); }
  bool operator<(const Value& o) const;  // canonical order for keys/enumeration

  std::string to_string() const;

private:
  struct MapData;
  Kind kind_;
  long long int_ = 0;
  bool bool_ = false;
  std::string sort_name_;
  std::shared_ptr<const MapData> map_;
};

struct Value::MapData {
  Value default_value;
  std::vector<std::pair<Value, Value>> overrides;
};

inline const Value& Value::map_default() const { return map_->default_value; }
inline const std::vector<std::pair<Value, Value>>& Value::map_overrides() const {
  return map_->overrides;
}

/// Table for an n-ary uninterpreted function (finite backend only).
struct FuncTable {
  std::vector<std::pair<std::vector<Value>, Value>> entries;
  Value fallback;

  const Value& lookup(const std::vector<Value>& args) const {
    for (const auto& [key, value] : entries)
      if (key == args) return value;
    return fallback;
  }
};

/// Satisfying assignment: every decode-map symbol of the task maps to a
/// value. `functions` carries interpretations of non-nullary uninterpreted
/// functions when the finite backend produced the model.
struct Model {
  std::map<std::string, Value> assignments;
  std::map<std::string, FuncTable> functions;
};

/// Finite-domain configuration: cardinalities for uninterpreted sorts and an
/// inclusive integer range.
struct DomainBounds {
  long long int_lo = -4;
  long long int_hi = 4;
  int default_cardinality = 2;
  std::map<std::string, int> sort_cardinality;

  int cardinality_of(const std::string& sort_name) const {
    auto it = sort_cardinality.find(sort_name);
    return it != sort_cardinality.end() ? it->second : default_cardinality;
  }
};

struct SolverVerdict {
  enum class Kind { Unsat, Sat, Unknown };
  enum class UnknownReason { Timeout, Incompleteness };

  Kind kind = Kind::Unsat;
  Model model;                 // populated for Sat
  UnknownReason reason = UnknownReason::Timeout;
  std::string qualifier;       // e.g. "bounded" when a finite fallback answered

  static SolverVerdict unsat() { return {}; }
  static SolverVerdict sat(Model m) {
    SolverVerdict v;
    v.kind = Kind::Sat;
    v.model = std::move(m);
    return v;
  }
  static SolverVerdict unknown(UnknownReason r) {
    SolverVerdict v;
    v.kind = Kind::Unknown;
    v.reason = r;
    return v;
  }

  bool is_sat() const { return kind == Kind::Sat; }
  bool is_unsat() const { return kind == Kind::Unsat; }
  bool is_definite() const { return kind != Kind::Unknown; }
};

}  // namespace cise
