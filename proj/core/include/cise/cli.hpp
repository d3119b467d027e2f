#pragma once

#include <iosfwd>
#include <string>

#include "cise/solver.hpp"

namespace cise::cli {

struct RunConfig {
  std::string input_path;
  solve::SolverConfig solver;
  bool backend_explicit = false;  // --backend given (no silent fallback)
  int stage_limit = 2;
  bool tokens = false;
  std::string json_path;
};

/// Exit codes: 0 verified (or tokens synthesized and validated), 1 failed
/// verification or no token solution, 2 input/parse error, 3 backend error,
/// 4 unknown verdicts present.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace cise::cli
