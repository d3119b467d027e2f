#include "cise/value.hpp"

#include <algorithm>
#include <sstream>

namespace cise {

Value Value::map(Value default_value, std::vector<std::pair<Value, Value>> overrides) {
  // Normalize: drop entries equal to the default, sort by key, and let later
  // entries win over earlier duplicates (store semantics).
  std::vector<std::pair<Value, Value>> kept;
  for (auto& entry : overrides) {
    bool replaced = false;
    for (auto& existing : kept) {
      if (existing.first == entry.first) {
        existing.second = entry.second;
        replaced = true;
        break;
      }
    }
    if (!replaced) kept.push_back(std::move(entry));
  }
  kept.erase(std::remove_if(kept.begin(), kept.end(),
                            [&](const auto& e) { return e.second == default_value; }),
             kept.end());
  std::sort(kept.begin(), kept.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  Value val;
  val.kind_ = Kind::Map;
  auto data = std::make_shared<MapData>();
  data->default_value = std::move(default_value);
  data->overrides = std::move(kept);
  val.map_ = std::move(data);
  return val;
}

Value Value::select(const Value& key) const {
  for (const auto& [k, v] : map_->overrides)
    if (k == key) return v;
  return map_->default_value;
}

Value Value::store(const Value& key, const Value& value) const {
  auto overrides = map_->overrides;
  overrides.emplace_back(key, value);
  return map(map_->default_value, std::move(overrides));
}

bool Value::operator==(const Value& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case Kind::Int: return int_ == o.int_;
    case Kind::Bool: return bool_ == o.bool_;
    case Kind::Elem: return sort_name_ == o.sort_name_ && int_ == o.int_;
    case Kind::Map: {
      if (!(map_->default_value == o.map_->default_value)) return false;
      // Normalized representation: extensional equality is structural.
      if (map_->overrides.size() != o.map_->overrides.size()) return false;
      for (std::size_t i = 0; i < map_->overrides.size(); ++i) {
        if (!(map_->overrides[i].first == o.map_->overrides[i].first)) return false;
        if (!(map_->overrides[i].second == o.map_->overrides[i].second)) return false;
      }
      return true;
    }
  }
  return false;
}

bool Value::operator<(const Value& o) const {
  if (kind_ != o.kind_) return static_cast<int>(kind_) < static_cast<int>(o.kind_);
  switch (kind_) {
    case Kind::Int: return int_ < o.int_;
    case Kind::Bool: return bool_ < o.bool_;
    case Kind::Elem:
      if (sort_name_ != o.sort_name_) return sort_name_ < o.sort_name_;
      return int_ < o.int_;
    case Kind::Map: {
      if (map_->default_value < o.map_->default_value) return true;
      if (o.map_->default_value < map_->default_value) return false;
      return std::lexicographical_compare(
          map_->overrides.begin(), map_->overrides.end(), o.map_->overrides.begin(),
          o.map_->overrides.end(), [](const auto& a, const auto& b) {
            if (a.first < b.first) return true;
            if (b.first < a.first) return false;
            return a.second < b.second;
          });
    }
  }
  return false;
}

std::string Value::to_string() const {
  switch (kind_) {
    case Kind::Int: return std::to_string(int_);
    case Kind::Bool: return bool_ ? "true" : "false";
    case Kind::Elem: return "elem_" + sort_name_ + "_" + std::to_string(int_);
    case Kind::Map: {
      std::ostringstream os;
      os << "{";
      for (const auto& [k, v] : map_->overrides)
        os << "[" << k.to_string() << "] = " << v.to_string() << ", ";
      os << "default = " << map_->default_value.to_string() << "}";
      return os.str();
    }
  }
  return "?";
}

}  // namespace cise
