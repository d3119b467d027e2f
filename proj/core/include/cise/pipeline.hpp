#pragma once

#include "cise/report.hpp"
#include "cise/solver.hpp"

namespace cise {

struct PipelineOptions {
  solve::SolverConfig solver;
  int stage_limit = 2;
};

struct RunResult {
  vc::PlanResult plan;
  report::Report report;
};

vc::TaskChecker make_checker(const solve::SolverConfig& config);

/// parse -> plan -> report, one call. Counterexamples are built and replayed
/// here; a ReplayMismatch aborts.
RunResult run_pipeline(const vc::SpecPtr& spec, const PipelineOptions& options);

}  // namespace cise
