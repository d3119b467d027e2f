// cise-smt-shim: a bounded SMT-LIB2 solver speaking the protocol subset the
// verifier emits (declare-sort/declare-fun/assert/check-sat/get-value), built
// on exhaustive enumeration over finite domains. Uninterpreted sorts get a
// configurable cardinality, integers a configurable range; quantifiers are
// expanded by instantiation. Intended as a drop-in solver executable for
// environments without z3; also handy for deterministic testing.
//
// Deliberately self-contained: it shares no code with the verifier so the
// emitted SMT-LIB2 is checked by an independent reader.

#include <unistd.h>

#include <cerrno>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

// --- s-expressions -----------------------------------------------------------

struct Sexp {
  bool is_atom = true;
  std::string atom;
  std::vector<Sexp> items;

  const Sexp& operator[](std::size_t i) const { return items[i]; }
  std::size_t size() const { return items.size(); }
  bool head_is(const std::string& word) const {
    return !is_atom && !items.empty() && items[0].is_atom && items[0].atom == word;
  }
};

struct ParseFailure {
  std::string message;
};

Sexp parse_sexp(const std::string& text, std::size_t& pos) {
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos >= text.size()) throw ParseFailure{"unexpected end of input"};
  Sexp node;
  if (text[pos] == '(') {
    ++pos;
    node.is_atom = false;
    while (true) {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos >= text.size()) throw ParseFailure{"unbalanced parentheses"};
      if (text[pos] == ')') {
        ++pos;
        return node;
      }
      node.items.push_back(parse_sexp(text, pos));
    }
  }
  if (text[pos] == '|') {
    std::size_t end = text.find('|', pos + 1);
    if (end == std::string::npos) throw ParseFailure{"unterminated |symbol|"};
    node.atom = text.substr(pos + 1, end - pos - 1);
    pos = end + 1;
    return node;
  }
  std::size_t start = pos;
  while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
         text[pos] != '(' && text[pos] != ')')
    ++pos;
  node.atom = text.substr(start, pos - start);
  return node;
}

// --- sorts and values --------------------------------------------------------

struct SortNode;
using SortRef = std::shared_ptr<const SortNode>;

struct SortNode {
  enum class Kind { Int, Bool, Scalar, Array } kind = Kind::Int;
  std::string name;  // Scalar
  SortRef key, value;
};

SortRef make_int() {
  auto s = std::make_shared<SortNode>();
  s->kind = SortNode::Kind::Int;
  return s;
}
SortRef make_bool() {
  auto s = std::make_shared<SortNode>();
  s->kind = SortNode::Kind::Bool;
  return s;
}
SortRef make_scalar(std::string name) {
  auto s = std::make_shared<SortNode>();
  s->kind = SortNode::Kind::Scalar;
  s->name = std::move(name);
  return s;
}
SortRef make_array(SortRef key, SortRef value) {
  auto s = std::make_shared<SortNode>();
  s->kind = SortNode::Kind::Array;
  s->key = std::move(key);
  s->value = std::move(value);
  return s;
}

std::string sort_text(const SortRef& s) {
  switch (s->kind) {
    case SortNode::Kind::Int: return "Int";
    case SortNode::Kind::Bool: return "Bool";
    case SortNode::Kind::Scalar: return "|" + s->name + "|";
    case SortNode::Kind::Array:
      return "(Array " + sort_text(s->key) + " " + sort_text(s->value) + ")";
  }
  return "Int";
}

struct Val {
  enum class Kind { Int, Bool, Elem, Array } kind = Kind::Int;
  long long num = 0;
  bool flag = false;
  std::string sort;  // Elem
  int index = 0;     // Elem
  std::shared_ptr<const struct ArrayData> array;
};

struct ArrayData {
  Val def;
  std::vector<std::pair<Val, Val>> entries;  // sorted by key, no def-valued entries
};

bool val_eq(const Val& a, const Val& b);
bool val_lt(const Val& a, const Val& b);

bool entries_lt(const std::pair<Val, Val>& a, const std::pair<Val, Val>& b) {
  return val_lt(a.first, b.first);
}

Val make_array_val(Val def, std::vector<std::pair<Val, Val>> entries) {
  std::vector<std::pair<Val, Val>> kept;
  for (auto& e : entries) {
    bool replaced = false;
    for (auto& existing : kept)
      if (val_eq(existing.first, e.first)) {
        existing.second = e.second;
        replaced = true;
        break;
      }
    if (!replaced) kept.push_back(std::move(e));
  }
  kept.erase(std::remove_if(kept.begin(), kept.end(),
                            [&](const auto& e) { return val_eq(e.second, def); }),
             kept.end());
  std::sort(kept.begin(), kept.end(), entries_lt);
  Val v;
  v.kind = Val::Kind::Array;
  auto data = std::make_shared<ArrayData>();
  data->def = std::move(def);
  data->entries = std::move(kept);
  v.array = std::move(data);
  return v;
}

bool val_eq(const Val& a, const Val& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Val::Kind::Int: return a.num == b.num;
    case Val::Kind::Bool: return a.flag == b.flag;
    case Val::Kind::Elem: return a.sort == b.sort && a.index == b.index;
    case Val::Kind::Array: {
      if (!val_eq(a.array->def, b.array->def)) return false;
      if (a.array->entries.size() != b.array->entries.size()) return false;
      for (std::size_t i = 0; i < a.array->entries.size(); ++i) {
        if (!val_eq(a.array->entries[i].first, b.array->entries[i].first)) return false;
        if (!val_eq(a.array->entries[i].second, b.array->entries[i].second)) return false;
      }
      return true;
    }
  }
  return false;
}

bool val_lt(const Val& a, const Val& b) {
  if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
  switch (a.kind) {
    case Val::Kind::Int: return a.num < b.num;
    case Val::Kind::Bool: return a.flag < b.flag;
    case Val::Kind::Elem:
      if (a.sort != b.sort) return a.sort < b.sort;
      return a.index < b.index;
    case Val::Kind::Array: {
      if (val_lt(a.array->def, b.array->def)) return true;
      if (val_lt(b.array->def, a.array->def)) return false;
      return std::lexicographical_compare(
          a.array->entries.begin(), a.array->entries.end(), b.array->entries.begin(),
          b.array->entries.end(), [](const auto& x, const auto& y) {
            if (val_lt(x.first, y.first)) return true;
            if (val_lt(y.first, x.first)) return false;
            return val_lt(x.second, y.second);
          });
    }
  }
  return false;
}

// --- the solver state --------------------------------------------------------

struct Bounds {
  long long lo = -4;
  long long hi = 4;
  int default_card = 2;
  std::map<std::string, int> cards;
  int card_of(const std::string& name) const {
    auto it = cards.find(name);
    return it != cards.end() ? it->second : default_card;
  }
};

constexpr std::uint64_t kSpaceBudget = 200'000'000ULL;
constexpr std::uint64_t kDomainBudget = 1u << 20;

struct Unsupported {
  std::string what;
};

struct Solver {
  Bounds bounds;
  std::set<std::string> sorts;
  struct Decl {
    std::vector<SortRef> args;
    SortRef result;
  };
  std::map<std::string, Decl> funs;
  std::vector<Sexp> asserts;
  std::optional<std::map<std::string, Val>> model;

  SortRef parse_sort(const Sexp& s) const {
    if (s.is_atom) {
      if (s.atom == "Int") return make_int();
      if (s.atom == "Bool") return make_bool();
      if (sorts.count(s.atom)) return make_scalar(s.atom);
      throw ParseFailure{"unknown sort " + s.atom};
    }
    if (s.head_is("Array") && s.size() == 3)
      return make_array(parse_sort(s[1]), parse_sort(s[2]));
    throw ParseFailure{"unsupported sort expression"};
  }

  std::uint64_t domain_size(const SortRef& s) const {
    switch (s->kind) {
      case SortNode::Kind::Int:
        return static_cast<std::uint64_t>(bounds.hi - bounds.lo + 1);
      case SortNode::Kind::Bool:
        return 2;
      case SortNode::Kind::Scalar:
        return static_cast<std::uint64_t>(bounds.card_of(s->name));
      case SortNode::Kind::Array: {
        std::uint64_t keys = domain_size(s->key);
        std::uint64_t values = domain_size(s->value);
        std::uint64_t total = 1;
        for (std::uint64_t i = 0; i < keys; ++i) {
          if (values == 0 || total > kDomainBudget / values) throw Unsupported{"array domain"};
          total *= values;
        }
        return total;
      }
    }
    return 1;
  }

  Val default_of(const SortRef& s) const {
    Val v;
    switch (s->kind) {
      case SortNode::Kind::Int:
        v.kind = Val::Kind::Int;
        v.num = bounds.lo <= 0 && 0 <= bounds.hi ? 0 : bounds.lo;
        return v;
      case SortNode::Kind::Bool:
        v.kind = Val::Kind::Bool;
        return v;
      case SortNode::Kind::Scalar:
        v.kind = Val::Kind::Elem;
        v.sort = s->name;
        return v;
      case SortNode::Kind::Array:
        return make_array_val(default_of(s->value), {});
    }
    return v;
  }

  std::vector<Val> enumerate(const SortRef& s) const {
    std::uint64_t size = domain_size(s);
    if (size > kDomainBudget) throw Unsupported{"domain too large"};
    std::vector<Val> out;
    out.reserve(size);
    switch (s->kind) {
      case SortNode::Kind::Int:
        for (long long n = bounds.lo; n <= bounds.hi; ++n) {
          Val v;
          v.kind = Val::Kind::Int;
          v.num = n;
          out.push_back(v);
        }
        break;
      case SortNode::Kind::Bool:
        for (bool b : {false, true}) {
          Val v;
          v.kind = Val::Kind::Bool;
          v.flag = b;
          out.push_back(v);
        }
        break;
      case SortNode::Kind::Scalar:
        for (int i = 0; i < bounds.card_of(s->name); ++i) {
          Val v;
          v.kind = Val::Kind::Elem;
          v.sort = s->name;
          v.index = i;
          out.push_back(v);
        }
        break;
      case SortNode::Kind::Array: {
        std::vector<Val> keys = enumerate(s->key);
        std::vector<Val> values = enumerate(s->value);
        Val def = default_of(s->value);
        std::vector<std::size_t> odo(keys.size(), 0);
        while (true) {
          std::vector<std::pair<Val, Val>> entries;
          for (std::size_t i = 0; i < keys.size(); ++i)
            entries.emplace_back(keys[i], values[odo[i]]);
          out.push_back(make_array_val(def, std::move(entries)));
          std::size_t i = keys.size();
          bool advanced = false;
          while (i > 0) {
            --i;
            if (++odo[i] < values.size()) {
              advanced = true;
              break;
            }
            odo[i] = 0;
          }
          if (!advanced) break;
        }
        break;
      }
    }
    return out;
  }

  // --- compiled terms --------------------------------------------------------
  // Terms are compiled once per check-sat: symbols resolve to value slots,
  // numerals to constants, quantifier domains are enumerated up front. The
  // enumeration loop then never touches strings.

  struct Compiled {
    enum class Op {
      Const, Slot, And, Or, Not, Implies, Eq, Lt, Le, Gt, Ge,
      AddChain, SubChain, Mul, Neg, Select, Store, Forall
    };
    Op op = Op::Const;
    Val constant;
    const Val* slot = nullptr;
    std::vector<Compiled> args;
    Val* binder_slot = nullptr;     // Forall
    std::vector<Val> domain;        // Forall
  };

  // Stable storage for quantifier binder values across a compiled tree.
  mutable std::vector<std::unique_ptr<Val>> binder_storage;

  Compiled compile(const Sexp& t, const std::map<std::string, Val>& consts,
                   std::vector<std::pair<std::string, Val*>>& scope) const {
    Compiled node;
    if (t.is_atom) {
      if (t.atom == "true" || t.atom == "false") {
        node.constant.kind = Val::Kind::Bool;
        node.constant.flag = t.atom == "true";
        return node;
      }
      if (!t.atom.empty() && (std::isdigit(static_cast<unsigned char>(t.atom[0])) ||
                              (t.atom[0] == '-' && t.atom.size() > 1))) {
        node.constant.kind = Val::Kind::Int;
        node.constant.num = std::stoll(t.atom);
        return node;
      }
      for (auto it = scope.rbegin(); it != scope.rend(); ++it)
        if (it->first == t.atom) {
          node.op = Compiled::Op::Slot;
          node.slot = it->second;
          return node;
        }
      auto it = consts.find(t.atom);
      if (it == consts.end()) throw ParseFailure{"unknown constant " + t.atom};
      node.op = Compiled::Op::Slot;
      node.slot = &it->second;
      return node;
    }

    if (t.items.empty() || !t[0].is_atom) throw Unsupported{"term head"};
    const std::string& op = t[0].atom;

    if (op == "forall") {
      std::vector<std::pair<std::string, Val*>> extended = scope;
      Compiled* current = &node;
      for (std::size_t b = 0; b < t[1].size(); ++b) {
        const Sexp& binder = t[1][b];
        binder_storage.push_back(std::make_unique<Val>());
        Val* slot = binder_storage.back().get();
        extended.emplace_back(binder[0].atom, slot);
        current->op = Compiled::Op::Forall;
        current->binder_slot = slot;
        current->domain = enumerate(parse_sort(binder[1]));
        current->args.resize(1);
        if (b + 1 < t[1].size()) current = &current->args[0];
      }
      current->args[0] = compile(t[2], consts, extended);
      return node;
    }

    for (std::size_t i = 1; i < t.size(); ++i)
      node.args.push_back(compile(t[i], consts, scope));

    if (op == "and") node.op = Compiled::Op::And;
    else if (op == "or") node.op = Compiled::Op::Or;
    else if (op == "not") node.op = Compiled::Op::Not;
    else if (op == "=>") node.op = Compiled::Op::Implies;
    else if (op == "=") node.op = Compiled::Op::Eq;
    else if (op == "<") node.op = Compiled::Op::Lt;
    else if (op == "<=") node.op = Compiled::Op::Le;
    else if (op == ">") node.op = Compiled::Op::Gt;
    else if (op == ">=") node.op = Compiled::Op::Ge;
    else if (op == "+") node.op = Compiled::Op::AddChain;
    else if (op == "*") node.op = Compiled::Op::Mul;
    else if (op == "-") node.op = node.args.size() == 1 ? Compiled::Op::Neg
                                                        : Compiled::Op::SubChain;
    else if (op == "select") node.op = Compiled::Op::Select;
    else if (op == "store") node.op = Compiled::Op::Store;
    else throw Unsupported{"operator " + op};
    return node;
  }

  Val eval(const Compiled& t) const {
    switch (t.op) {
      case Compiled::Op::Const: return t.constant;
      case Compiled::Op::Slot: return *t.slot;
      case Compiled::Op::And: {
        Val v;
        v.kind = Val::Kind::Bool;
        v.flag = true;
        for (const auto& a : t.args)
          if (!eval(a).flag) {
            v.flag = false;
            break;
          }
        return v;
      }
      case Compiled::Op::Or: {
        Val v;
        v.kind = Val::Kind::Bool;
        for (const auto& a : t.args)
          if (eval(a).flag) {
            v.flag = true;
            break;
          }
        return v;
      }
      case Compiled::Op::Not: {
        Val v = eval(t.args[0]);
        v.flag = !v.flag;
        return v;
      }
      case Compiled::Op::Implies: {
        Val v;
        v.kind = Val::Kind::Bool;
        v.flag = !eval(t.args[0]).flag || eval(t.args[1]).flag;
        return v;
      }
      case Compiled::Op::Eq: {
        Val v;
        v.kind = Val::Kind::Bool;
        v.flag = val_eq(eval(t.args[0]), eval(t.args[1]));
        return v;
      }
      case Compiled::Op::Lt:
      case Compiled::Op::Le:
      case Compiled::Op::Gt:
      case Compiled::Op::Ge: {
        long long a = eval(t.args[0]).num;
        long long b = eval(t.args[1]).num;
        Val v;
        v.kind = Val::Kind::Bool;
        v.flag = t.op == Compiled::Op::Lt   ? a < b
                 : t.op == Compiled::Op::Le ? a <= b
                 : t.op == Compiled::Op::Gt ? a > b
                                            : a >= b;
        return v;
      }
      case Compiled::Op::AddChain:
      case Compiled::Op::SubChain:
      case Compiled::Op::Mul: {
        long long acc = eval(t.args[0]).num;
        for (std::size_t i = 1; i < t.args.size(); ++i) {
          long long x = eval(t.args[i]).num;
          acc = t.op == Compiled::Op::AddChain ? acc + x
                : t.op == Compiled::Op::SubChain ? acc - x
                                                 : acc * x;
        }
        Val v;
        v.kind = Val::Kind::Int;
        v.num = acc;
        return v;
      }
      case Compiled::Op::Neg: {
        Val v = eval(t.args[0]);
        v.num = -v.num;
        return v;
      }
      case Compiled::Op::Select: {
        Val m = eval(t.args[0]);
        Val k = eval(t.args[1]);
        for (const auto& [key, value] : m.array->entries)
          if (val_eq(key, k)) return value;
        return m.array->def;
      }
      case Compiled::Op::Store: {
        Val m = eval(t.args[0]);
        auto entries = m.array->entries;
        entries.emplace_back(eval(t.args[1]), eval(t.args[2]));
        return make_array_val(m.array->def, std::move(entries));
      }
      case Compiled::Op::Forall: {
        Val v;
        v.kind = Val::Kind::Bool;
        v.flag = true;
        for (const auto& value : t.domain) {
          *t.binder_slot = value;
          if (!eval(t.args[0]).flag) {
            v.flag = false;
            break;
          }
        }
        return v;
      }
    }
    Val v;
    return v;
  }

  // --- solving ---------------------------------------------------------------

  void flatten(const Sexp& t, std::vector<const Sexp*>& out) const {
    if (t.head_is("and")) {
      for (std::size_t i = 1; i < t.size(); ++i) flatten(t[i], out);
    } else {
      out.push_back(&t);
    }
  }

  std::set<std::string> symbols_in(const Sexp& t) const {
    std::set<std::string> out;
    collect_symbols(t, out);
    return out;
  }

  void collect_symbols(const Sexp& t, std::set<std::string>& out) const {
    if (t.is_atom) {
      if (funs.count(t.atom)) out.insert(t.atom);
      return;
    }
    for (const auto& item : t.items) collect_symbols(item, out);
  }

  std::string check_sat() {
    model.reset();
    try {
      // Reject features we cannot solve (n-ary uninterpreted functions).
      for (const auto& [name, decl] : funs)
        if (!decl.args.empty() && applied_anywhere(name)) return "unknown";

      std::vector<const Sexp*> conjuncts;
      for (const auto& a : asserts) flatten(a, conjuncts);

      // One-point rule: conjuncts (= sym term) define sym by evaluation.
      std::vector<std::pair<std::string, const Sexp*>> derived;
      std::set<std::string> derived_names;
      for (const Sexp* c : conjuncts) {
        if (!c->head_is("=") || c->size() != 3) continue;
        for (int side = 1; side <= 2; ++side) {
          const Sexp& sym = (*c)[static_cast<std::size_t>(side)];
          const Sexp& term = (*c)[static_cast<std::size_t>(3 - side)];
          if (!sym.is_atom || !funs.count(sym.atom) || derived_names.count(sym.atom)) continue;
          if (symbols_in(term).count(sym.atom)) continue;
          derived.emplace_back(sym.atom, &term);
          derived_names.insert(sym.atom);
          break;
        }
      }
      // Keep only derivations evaluatable front to back.
      bool changed = true;
      while (changed) {
        changed = false;
        std::set<std::string> seen;
        for (std::size_t i = 0; i < derived.size(); ++i) {
          bool ok = true;
          for (const auto& s : symbols_in(*derived[i].second))
            if (derived_names.count(s) && !seen.count(s)) {
              ok = false;
              break;
            }
          if (!ok) {
            derived_names.erase(derived[i].first);
            derived.erase(derived.begin() + static_cast<std::ptrdiff_t>(i));
            changed = true;
            break;
          }
          seen.insert(derived[i].first);
        }
      }

      std::vector<std::pair<std::string, std::vector<Val>>> free_syms;
      std::uint64_t space = 1;
      for (const auto& [name, decl] : funs) {
        if (!decl.args.empty() || derived_names.count(name)) continue;
        std::vector<Val> domain = enumerate(decl.result);
        if (domain.empty() || space > kSpaceBudget / domain.size()) return "unknown";
        space *= domain.size();
        free_syms.emplace_back(name, std::move(domain));
      }

      std::vector<std::size_t> odo(free_syms.size(), 0);
      std::map<std::string, Val> consts;
      std::vector<Val*> free_slots;
      for (const auto& [name, domain] : free_syms) {
        (void)domain;
        free_slots.push_back(&consts[name]);
      }
      std::vector<Val*> derived_slots;
      for (const auto& [name, term] : derived) {
        (void)term;
        derived_slots.push_back(&consts[name]);
      }

      binder_storage.clear();
      std::vector<std::pair<std::string, Val*>> scope;
      std::vector<Compiled> compiled_derived;
      for (const auto& [name, term] : derived)
        compiled_derived.push_back(compile(*term, consts, scope));
      std::vector<Compiled> compiled_asserts;
      for (const auto& a : asserts) compiled_asserts.push_back(compile(a, consts, scope));

      while (true) {
        for (std::size_t i = 0; i < free_syms.size(); ++i)
          *free_slots[i] = free_syms[i].second[odo[i]];
        for (std::size_t i = 0; i < compiled_derived.size(); ++i)
          *derived_slots[i] = eval(compiled_derived[i]);
        bool ok = true;
        for (const auto& a : compiled_asserts)
          if (!eval(a).flag) {
            ok = false;
            break;
          }
        if (ok) {
          model = consts;
          return "sat";
        }
        std::size_t i = odo.size();
        bool advanced = false;
        while (i > 0) {
          --i;
          if (++odo[i] < free_syms[i].second.size()) {
            advanced = true;
            break;
          }
          odo[i] = 0;
        }
        if (!advanced) break;
      }
      return "unsat";
    } catch (const Unsupported&) {
      return "unknown";
    }
  }

  bool applied_anywhere(const std::string& name) const {
    for (const auto& a : asserts)
      if (applied_in(a, name)) return true;
    return false;
  }
  bool applied_in(const Sexp& t, const std::string& name) const {
    if (t.is_atom) return false;
    if (!t.items.empty() && t[0].is_atom && t[0].atom == name) return true;
    for (const auto& item : t.items)
      if (applied_in(item, name)) return true;
    return false;
  }

  std::string print_value(const Val& v, const SortRef& sort) const {
    switch (v.kind) {
      case Val::Kind::Int:
        return v.num < 0 ? "(- " + std::to_string(-v.num) + ")" : std::to_string(v.num);
      case Val::Kind::Bool:
        return v.flag ? "true" : "false";
      case Val::Kind::Elem:
        return v.sort + "!val!" + std::to_string(v.index);
      case Val::Kind::Array: {
        std::string acc = "((as const " + sort_text(sort) + ") " +
                          print_value(v.array->def, sort->value) + ")";
        for (const auto& [k, value] : v.array->entries)
          acc = "(store " + acc + " " + print_value(k, sort->key) + " " +
                print_value(value, sort->value) + ")";
        return acc;
      }
    }
    return "0";
  }
};

std::optional<std::string> next_sexp_text(std::string& buffer) {
  auto try_extract = [&]() -> std::optional<std::string> {
    while (true) {
      std::size_t i = 0;
      while (i < buffer.size() && std::isspace(static_cast<unsigned char>(buffer[i]))) ++i;
      if (i >= buffer.size()) {
        buffer.clear();
        return std::nullopt;
      }
      if (buffer[i] != '(') {  // skip stray tokens
        buffer.erase(0, i + 1);
        continue;
      }
      int depth = 0;
      bool quoted = false;
      for (std::size_t j = i; j < buffer.size(); ++j) {
        char c = buffer[j];
        if (quoted) {
          if (c == '|') quoted = false;
          continue;
        }
        if (c == '|') quoted = true;
        if (c == '(') ++depth;
        if (c == ')' && --depth == 0) {
          std::string text = buffer.substr(i, j - i + 1);
          buffer.erase(0, j + 1);
          return text;
        }
      }
      return std::nullopt;
    }
  };
  while (true) {
    if (auto text = try_extract()) return text;
    char chunk[4096];
    ssize_t n = ::read(STDIN_FILENO, chunk, sizeof(chunk));
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return std::nullopt;
    buffer.append(chunk, static_cast<std::size_t>(n));
  }
}

}  // namespace

int main(int argc, char** argv) {
  Solver solver;
  int sleep_seconds = 0;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    auto next = [&]() -> std::string { return i + 1 < argc ? argv[++i] : ""; };
    if (arg == "--int-range") {
      std::string range = next();
      auto dots = range.find("..");
      if (dots != std::string::npos) {
        solver.bounds.lo = std::stoll(range.substr(0, dots));
        solver.bounds.hi = std::stoll(range.substr(dots + 2));
      }
    } else if (arg == "--card") {
      solver.bounds.default_card = std::stoi(next());
    } else if (arg == "--domain") {
      std::string d = next();
      auto eq = d.find('=');
      if (eq != std::string::npos)
        solver.bounds.cards[d.substr(0, eq)] = std::stoi(d.substr(eq + 1));
    } else if (arg == "--sleep") {
      sleep_seconds = std::stoi(next());
    }
  }

  std::string buffer;
  while (auto text = next_sexp_text(buffer)) {
    Sexp cmd;
    try {
      std::size_t pos = 0;
      cmd = parse_sexp(*text, pos);
    } catch (const ParseFailure& e) {
      std::cout << "(error \"" << e.message << "\")" << std::endl;
      continue;
    }
    if (cmd.is_atom || cmd.items.empty() || !cmd[0].is_atom) continue;
    const std::string& verb = cmd[0].atom;
    try {
      if (verb == "set-option" || verb == "set-logic" || verb == "set-info") {
        continue;
      } else if (verb == "declare-sort") {
        solver.sorts.insert(cmd[1].atom);
      } else if (verb == "declare-fun" || verb == "declare-const") {
        Solver::Decl decl;
        std::size_t sort_at = 2;
        if (verb == "declare-fun") {
          for (const auto& a : cmd[2].items) decl.args.push_back(solver.parse_sort(a));
          sort_at = 3;
        }
        decl.result = solver.parse_sort(cmd[sort_at]);
        solver.funs[cmd[1].atom] = std::move(decl);
      } else if (verb == "assert") {
        solver.asserts.push_back(cmd[1]);
      } else if (verb == "check-sat") {
        if (sleep_seconds > 0) ::sleep(static_cast<unsigned>(sleep_seconds));
        std::cout << solver.check_sat() << std::endl;
      } else if (verb == "get-value") {
        if (!solver.model) {
          std::cout << "(error \"no model available\")" << std::endl;
          continue;
        }
        std::ostringstream os;
        os << "(";
        for (std::size_t i = 0; i < cmd[1].size(); ++i) {
          const Sexp& term = cmd[1][i];
          if (i) os << " ";
          if (!term.is_atom || !solver.model->count(term.atom)) {
            os << "(|?| 0)";
            continue;
          }
          os << "(|" << term.atom << "| "
             << solver.print_value(solver.model->at(term.atom),
                                   solver.funs.at(term.atom).result)
             << ")";
        }
        os << ")";
        std::cout << os.str() << std::endl;
      } else if (verb == "exit") {
        return 0;
      } else {
        std::cout << "(error \"unsupported command " << verb << "\")" << std::endl;
      }
    } catch (const ParseFailure& e) {
      std::cout << "(error \"" << e.message << "\")" << std::endl;
    } catch (const Unsupported& e) {
      std::cout << "(error \"unsupported: " << e.what << "\")" << std::endl;
    }
  }
  return 0;
}
