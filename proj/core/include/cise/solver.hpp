#pragma once

#include <string>

#include "cise/value.hpp"
#include "cise/vcgen.hpp"

namespace cise::solve {

class BackendUnavailable : public Error {
public:
  explicit BackendUnavailable(std::string what)
      : Error(SourceSpan{}, "smt backend unavailable: " + what) {}
};

class ProtocolError : public Error {
public:
  explicit ProtocolError(std::string what)
      : Error(SourceSpan{}, "smt protocol error: " + what) {}
};

enum class Backend { Smt, Finite };

struct SolverConfig {
  Backend backend = Backend::Smt;
  DomainBounds bounds;
  double timeout_seconds = 10.0;
  /// Solver command line (executable + arguments, whitespace separated).
  /// Empty means: $CISE_SMT_SOLVER if set, otherwise "z3 -in".
  std::string solver_command;
};

/// Resolved argv for the external solver; throws BackendUnavailable when the
/// executable cannot be found.
std::vector<std::string> resolve_solver_command(const SolverConfig& config);
bool smt_available(const SolverConfig& config);

/// Exhaustive enumeration within bounds. Top-level conjuncts of the shape
/// `symbol == term` define their symbol by evaluation (so effector-chained
/// state copies are computed, not enumerated); the remaining symbols are
/// enumerated in lexicographic order, symbols sorted by name. Returns the
/// first satisfying model, Unsat when none, or Unknown on timeout/budget.
SolverVerdict check_finite(const vc::VerificationTask& task, const DomainBounds& bounds,
                           double timeout_seconds = 10.0);

/// Discharges the task over SMT-LIB2 with an external process.
SolverVerdict check_smt(const vc::VerificationTask& task, const SolverConfig& config);

/// Backend dispatch. The smt backend falls back to the finite backend when
/// it answers unknown; such verdicts carry the "bounded" qualifier.
SolverVerdict check(const vc::VerificationTask& task, const SolverConfig& config);

}  // namespace cise::solve
