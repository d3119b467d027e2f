#include "cise/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "cise/parser.hpp"
#include "cise/pipeline.hpp"
#include "cise/token_synth.hpp"

namespace cise::cli {

namespace {

constexpr int kExitVerified = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitBackendError = 3;
constexpr int kExitUnknown = 4;

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ifstream in(config.input_path, std::ios::binary);
  if (!in) {
    err << "error: cannot open " << config.input_path << "\n";
    return kExitInputError;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();

  vc::SpecPtr spec;
  try {
    spec = std::make_shared<const Specification>(parse_spec(buffer.str(), config.input_path));
  } catch (const Error& e) {
    err << config.input_path;
    if (e.span.line > 0) err << ":" << e.span.line << ":" << e.span.column;
    err << ": " << e.what() << "\n";
    return kExitInputError;
  }

  PipelineOptions options;
  options.solver = config.solver;
  options.stage_limit = config.stage_limit;
  if (config.tokens && options.stage_limit < 2) {
    err << "note: --tokens implies --stage 2\n";
    options.stage_limit = 2;
  }

  if (options.solver.backend == solve::Backend::Smt &&
      !solve::smt_available(options.solver)) {
    if (config.backend_explicit) {
      err << "error: smt backend unavailable (no solver executable found)\n";
      return kExitBackendError;
    }
    err << "note: smt backend unavailable; falling back to the finite backend\n";
    options.solver.backend = solve::Backend::Finite;
  }

  RunResult result;
  try {
    result = run_pipeline(spec, options);
  } catch (const report::ReplayMismatch& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitBackendError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitBackendError;
  }

  out << report::render_text(result.report);

  bool tokens_verified = false;
  nlohmann::ordered_json tokens_json;
  bool have_tokens_json = false;
  if (config.tokens) {
    bool any_stability_failure = false;
    for (const auto& outcome : result.plan.outcomes)
      any_stability_failure |= outcome.task.kind == vc::CheckKind::Stability &&
                               outcome.verdict == vc::Verdict::Fail;
    if (!result.plan.stage1_passed) {
      out << "TOKEN SYNTHESIS: not applicable (sequential verification failed)\n";
    } else if (!any_stability_failure) {
      out << "TOKEN SYNTHESIS: not applicable (no stability failures)\n";
    } else {
      synth::SynthesisResult synthesis;
      try {
        synthesis = synth::synthesize(spec, make_checker(options.solver), result.plan,
                                      options.solver.bounds);
      } catch (const report::ReplayMismatch& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitBackendError;
      } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitBackendError;
      }
      out << synth::render_token_model(synthesis);
      tokens_json = synth::to_json(synthesis);
      have_tokens_json = true;
      tokens_verified = synthesis.success && synthesis.validated;
    }
  }

  if (!config.json_path.empty()) {
    nlohmann::ordered_json j = report::to_json(result.report);
    if (have_tokens_json) j["tokens"] = tokens_json;
    std::ofstream json_out(config.json_path, std::ios::binary);
    if (!json_out) {
      err << "error: cannot write " << config.json_path << "\n";
      return kExitInputError;
    }
    json_out << j.dump(2) << "\n";
  }

  if (tokens_verified) return kExitVerified;
  switch (result.report.summary) {
    case report::Report::Summary::Verified: return kExitVerified;
    case report::Report::Summary::NotVerified: return kExitFailed;
    case report::Report::Summary::Unknown: return kExitUnknown;
  }
  return kExitFailed;
}

}  // namespace cise::cli
