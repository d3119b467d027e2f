#include "cise/pipeline.hpp"

namespace cise {

vc::TaskChecker make_checker(const solve::SolverConfig& config) {
  return [config](const vc::VerificationTask& task) { return solve::check(task, config); };
}

RunResult run_pipeline(const vc::SpecPtr& spec, const PipelineOptions& options) {
  RunResult result;
  result.plan = vc::plan(spec, make_checker(options.solver), options.stage_limit);
  std::string backend_name =
      options.solver.backend == solve::Backend::Finite ? "finite" : "smt";
  result.report = report::build_report(*spec, result.plan, backend_name,
                                       options.solver.bounds, options.stage_limit);
  return result;
}

}  // namespace cise
