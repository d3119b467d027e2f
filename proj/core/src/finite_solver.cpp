#include <algorithm>
#include <chrono>
#include <set>

#include "cise/eval.hpp"
#include "cise/solver.hpp"

namespace cise::solve {

namespace {

constexpr unsigned long long kAssignmentBudget = 200'000'000ULL;

using Clock = std::chrono::steady_clock;

struct Derived {
  std::string symbol;
  ExprPtr term;
};

struct EnumUnit {
  std::string name;
  bool is_function = false;            // n-ary uninterpreted function table
  std::vector<Value> domain;           // plain symbol domain
  // function-table data
  std::vector<std::vector<Value>> tuples;
  std::vector<Value> result_domain;
  Value fallback;
};

std::set<std::string> free_symbols_of(const ExprPtr& e) {
  std::set<std::string> out;
  for_each_free_var(
      e, [&](const Expr& v) { out.insert(v.name); },
      [&](const Expr& a) {
        if (a.args.empty()) out.insert(a.name);
      });
  return out;
}

/// Picks conjuncts of the form `sym == term` (either side) that can define
/// their symbol, keeping a dependency-consistent evaluation order.
std::vector<Derived> pick_derivations(const std::vector<ExprPtr>& conjuncts,
                                      const std::set<std::string>& symbols) {
  std::vector<Derived> derived;
  std::set<std::string> derived_names;
  for (const auto& c : conjuncts) {
    if (c->kind != Expr::Kind::Binary || c->binary_op != BinaryOp::Eq) continue;
    for (int side = 0; side < 2; ++side) {
      const ExprPtr& var = c->args[static_cast<std::size_t>(side)];
      const ExprPtr& term = c->args[static_cast<std::size_t>(1 - side)];
      if (var->kind != Expr::Kind::Var) continue;
      if (!symbols.count(var->name) || derived_names.count(var->name)) continue;
      if (free_symbols_of(term).count(var->name)) continue;
      derived.push_back({var->name, term});
      derived_names.insert(var->name);
      break;
    }
  }

  // Demote derivations whose terms depend on symbols derived later, until the
  // recorded order is evaluatable front to back.
  bool changed = true;
  while (changed) {
    changed = false;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < derived.size(); ++i) {
      bool ok = true;
      for (const auto& sym : free_symbols_of(derived[i].term)) {
        if (derived_names.count(sym) && !seen.count(sym)) {
          ok = false;
          break;
        }
      }
      if (!ok) {
        derived_names.erase(derived[i].symbol);
        derived.erase(derived.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
      seen.insert(derived[i].symbol);
    }
  }
  return derived;
}

struct NaryUse {
  std::string name;
  const FunctionDecl* decl = nullptr;
};

void collect_nary(const ExprPtr& e, const Specification& spec,
                  std::map<std::string, NaryUse>& out) {
  if (e->kind == Expr::Kind::Apply && !e->args.empty())
    out.emplace(e->name, NaryUse{e->name, spec.find_function(e->name)});
  for (const auto& child : e->args) collect_nary(child, spec, out);
}

std::vector<std::vector<Value>> cartesian(const std::vector<std::vector<Value>>& domains) {
  std::vector<std::vector<Value>> out{{}};
  for (const auto& domain : domains) {
    std::vector<std::vector<Value>> next;
    next.reserve(out.size() * domain.size());
    for (const auto& prefix : out)
      for (const auto& v : domain) {
        auto tuple = prefix;
        tuple.push_back(v);
        next.push_back(std::move(tuple));
      }
    out = std::move(next);
    if (out.size() > (1u << 16)) throw DomainTooLarge("function argument tuples");
  }
  return out;
}

}  // namespace

SolverVerdict check_finite(const vc::VerificationTask& task, const DomainBounds& bounds,
                           double timeout_seconds) {
  auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(timeout_seconds));
  try {
    std::vector<ExprPtr> conjuncts;
    flatten_conjuncts(task.query, conjuncts);

    std::set<std::string> symbols;
    for (const auto& [name, info] : task.decode) {
      (void)info;
      symbols.insert(name);
    }

    std::vector<Derived> derived = pick_derivations(conjuncts, symbols);
    std::set<std::string> derived_names;
    for (const auto& d : derived) derived_names.insert(d.symbol);

    // Enumerated units: undetermined decode symbols plus n-ary function
    // tables, all ordered by name.
    std::map<std::string, NaryUse> nary;
    collect_nary(task.query, *task.spec, nary);

    std::vector<EnumUnit> units;
    for (const auto& [name, info] : task.decode) {
      if (derived_names.count(name)) continue;
      EnumUnit unit;
      unit.name = name;
      unit.domain = enumerate_domain(info.sort, bounds);
      units.push_back(std::move(unit));
    }
    for (const auto& [name, use] : nary) {
      if (!use.decl) continue;
      EnumUnit unit;
      unit.name = name;
      unit.is_function = true;
      std::vector<std::vector<Value>> arg_domains;
      for (const auto& s : use.decl->param_sorts) arg_domains.push_back(enumerate_domain(s, bounds));
      unit.tuples = cartesian(arg_domains);
      unit.result_domain = enumerate_domain(use.decl->result, bounds);
      unit.fallback = canonical_default(use.decl->result, bounds);
      units.push_back(std::move(unit));
    }
    std::sort(units.begin(), units.end(),
              [](const EnumUnit& a, const EnumUnit& b) { return a.name < b.name; });

    // Odometer state: one counter per unit for plain symbols, one counter per
    // argument tuple for function tables.
    struct Counter {
      std::size_t unit = 0;
      std::size_t slot = 0;  // tuple index for functions, unused otherwise
      std::size_t value = 0;
      std::size_t limit = 1;
    };
    std::vector<Counter> counters;
    unsigned long long total = 1;
    bool overflow = false;
    for (std::size_t u = 0; u < units.size(); ++u) {
      const EnumUnit& unit = units[u];
      std::size_t slots = unit.is_function ? unit.tuples.size() : 1;
      std::size_t limit = unit.is_function ? unit.result_domain.size() : unit.domain.size();
      for (std::size_t s = 0; s < slots; ++s) {
        counters.push_back({u, s, 0, limit});
        if (!overflow) {
          if (limit == 0 || total > kAssignmentBudget / limit)
            overflow = true;
          else
            total *= limit;
        }
      }
    }
    if (overflow || total > kAssignmentBudget)
      return SolverVerdict::unknown(SolverVerdict::UnknownReason::Incompleteness);

    // Pre-create every assignment slot so the hot loop only overwrites values.
    Model model;
    bool any_function_units = false;
    for (const auto& unit : units) {
      if (unit.is_function)
        any_function_units = true;
      else
        model.assignments[unit.name] = Value();
    }
    for (const auto& d : derived) model.assignments[d.symbol] = Value();
    std::vector<Value*> counter_slots(counters.size(), nullptr);
    for (std::size_t i = 0; i < counters.size(); ++i)
      if (!units[counters[i].unit].is_function)
        counter_slots[i] = &model.assignments.at(units[counters[i].unit].name);
    std::vector<Value*> derived_slots;
    derived_slots.reserve(derived.size());
    for (const auto& d : derived) derived_slots.push_back(&model.assignments.at(d.symbol));

    unsigned long long iterations = 0;
    while (true) {
      if ((iterations++ & 1023) == 0 && Clock::now() > deadline)
        return SolverVerdict::unknown(SolverVerdict::UnknownReason::Timeout);

      for (std::size_t i = 0; i < counters.size(); ++i)
        if (counter_slots[i])
          *counter_slots[i] = units[counters[i].unit].domain[counters[i].value];
      if (any_function_units) {
        model.functions.clear();
        for (const auto& counter : counters) {
          const EnumUnit& unit = units[counter.unit];
          if (!unit.is_function) continue;
          auto& table = model.functions[unit.name];
          if (table.entries.empty()) table.fallback = unit.fallback;
          table.entries.emplace_back(unit.tuples[counter.slot],
                                     unit.result_domain[counter.value]);
        }
      }

      bool consistent = true;
      for (std::size_t i = 0; i < derived.size(); ++i) {
        try {
          *derived_slots[i] = eval(model, derived[i].term, bounds);
        } catch (const UnassignedSymbol&) {
          consistent = false;  // defining term hit an uninterpretable symbol
          break;
        }
      }

      if (consistent && eval(model, task.query, bounds).as_bool())
        return SolverVerdict::sat(std::move(model));

      // Advance, last counter fastest (first symbol most significant).
      std::size_t i = counters.size();
      bool advanced = false;
      while (i > 0) {
        --i;
        if (++counters[i].value < counters[i].limit) {
          advanced = true;
          break;
        }
        counters[i].value = 0;
      }
      if (!advanced) break;
    }
    return SolverVerdict::unsat();
  } catch (const DomainTooLarge&) {
    return SolverVerdict::unknown(SolverVerdict::UnknownReason::Incompleteness);
  }
}

}  // namespace cise::solve
