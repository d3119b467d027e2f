#pragma once

#include <memory>
#include <string>

namespace cise {

/// Value type for the DSL's sorts: int, bool, declared uninterpreted sorts,
/// and map sorts [key]value. Map keys are int or uninterpreted only.
class Sort {
public:
  enum class Kind { Int, Bool, Uninterpreted, Map };

  Sort() : kind_(Kind::Int) {}

  static Sort int_sort() { return Sort(); }
  static Sort bool_sort() {
    Sort s;
    s.kind_ = Kind::Bool;
    return s;
  }
  static Sort uninterpreted(std::string name) {
    Sort s;
    s.kind_ = Kind::Uninterpreted;
    s.name_ = std::move(name);
    return s;
  }
  static Sort map(Sort key, Sort value) {
    Sort s;
    s.kind_ = Kind::Map;
    s.key_ = std::make_shared<Sort>(std::move(key));
    s.value_ = std::make_shared<Sort>(std::move(value));
    return s;
  }

  Kind kind() const { return kind_; }
  bool is_int() const { return kind_ == Kind::Int; }
  bool is_bool() const { return kind_ == Kind::Bool; }
  bool is_uninterpreted() const { return kind_ == Kind::Uninterpreted; }
  bool is_map() const { return kind_ == Kind::Map; }

  /// Int and uninterpreted sorts are the only legal map keys.
  bool is_map_key() const { return is_int() || is_uninterpreted(); }

  const std::string& name() const { return name_; }
  const Sort& key() const { return *key_; }
  const Sort& value() const { return *value_; }

  bool operator==(const Sort& o) const {
    if (kind_ != o.kind_) return false;
    switch (kind_) {
      case Kind::Int:
      case Kind::Bool: return true;
      case Kind::Uninterpreted: return name_ == o.name_;
      case Kind::Map: return key() == o.key() && value() == o.value();
    }
    return false;
  }
  bool operator!=(const Sort& o) const { return !(*this == o); }

  /// Total order so sorts can key ordered maps (e.g. the @equals table).
  bool operator<(const Sort& o) const {
    if (kind_ != o.kind_) return static_cast<int>(kind_) < static_cast<int>(o.kind_);
    switch (kind_) {
      case Kind::Int:
      case Kind::Bool: return false;
      case Kind::Uninterpreted: return name_ < o.name_;
      case Kind::Map:
        if (key() < o.key()) return true;
        if (o.key() < key()) return false;
        return value() < o.value();
    }
    return false;
  }

  std::string to_string() const {
    switch (kind_) {
      case Kind::Int: return "int";
      case Kind::Bool: return "bool";
      case Kind::Uninterpreted: return name_;
      case Kind::Map: return "[" + key().to_string() + "]" + value().to_string();
    }
    return "?";
  }

private:
  Kind kind_;
  std::string name_;
  std::shared_ptr<const Sort> key_;
  std::shared_ptr<const Sort> value_;
};

}  // namespace cise
