#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cise/cli.hpp"

namespace {

bool parse_int_range(const std::string& text, long long& lo, long long& hi) {
  auto dots = text.find("..");
  if (dots == std::string::npos) return false;
  try {
    lo = std::stoll(text.substr(0, dots));
    hi = std::stoll(text.substr(dots + 2));
  } catch (...) {
    return false;
  }
  return lo <= hi;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cise-verify: static verifier for replicated-application specifications"};

  cise::cli::RunConfig config;
  std::string backend = "smt";
  std::string int_range;
  std::vector<std::string> domains;
  int stage = 2;

  app.add_option("spec", config.input_path, "input .spec file")->required();
  app.add_option("--backend", backend, "solver backend: smt or finite")
      ->check(CLI::IsMember({"smt", "finite"}));
  app.add_option("--domain", domains,
                 "finite cardinality for an uninterpreted sort, as <Sort>=<n> (repeatable)");
  app.add_option("--int-range", int_range, "finite integer range, as <lo>..<hi>");
  app.add_option("--timeout", config.solver.timeout_seconds, "per-task solver timeout, seconds");
  app.add_option("--stage", stage, "run stage 1 only, or stages 1 and 2")
      ->check(CLI::IsMember({1, 2}));
  app.add_flag("--tokens", config.tokens,
               "synthesize concurrency-control tokens for failing stability checks");
  app.add_option("--json", config.json_path, "write the report as JSON to this path");
  app.add_option("--solver", config.solver.solver_command,
                 "smt solver command line (overrides CISE_SMT_SOLVER and the z3 default)");

  CLI11_PARSE(app, argc, argv);

  config.backend_explicit = app.count("--backend") > 0;
  config.solver.backend =
      backend == "finite" ? cise::solve::Backend::Finite : cise::solve::Backend::Smt;
  config.stage_limit = stage;

  if (!int_range.empty()) {
    if (!parse_int_range(int_range, config.solver.bounds.int_lo, config.solver.bounds.int_hi)) {
      std::cerr << "error: --int-range expects <lo>..<hi> with lo <= hi\n";
      return 2;
    }
  }
  for (const auto& d : domains) {
    auto eq = d.find('=');
    int card = 0;
    bool ok = eq != std::string::npos && eq > 0;
    if (ok) {
      try {
        card = std::stoi(d.substr(eq + 1));
      } catch (...) {
        ok = false;
      }
    }
    if (!ok || card < 1) {
      std::cerr << "error: --domain expects <Sort>=<n> with n >= 1\n";
      return 2;
    }
    config.solver.bounds.sort_cardinality[d.substr(0, eq)] = card;
  }

  return cise::cli::run(config, std::cout, std::cerr);
}
