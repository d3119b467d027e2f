#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "cise/parser.hpp"
#include "cise/pipeline.hpp"

namespace {

std::string read_corpus(const std::string& name) {
  std::ifstream in(std::string(CISE_CORPUS_DIR) + "/" + name, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

cise::solve::SolverConfig finite_config() {
  cise::solve::SolverConfig config;
  config.backend = cise::solve::Backend::Finite;
  return config;
}

void BM_ParseBank(benchmark::State& state) {
  std::string source = read_corpus("bank_v2.spec");
  for (auto _ : state) {
    auto spec = cise::parse_spec(source, "bank_v2.spec");
    benchmark::DoNotOptimize(spec);
  }
}
BENCHMARK(BM_ParseBank);

void BM_StabilityQuery(benchmark::State& state) {
  auto spec = std::make_shared<const cise::Specification>(
      cise::parse_spec(read_corpus("bank_v2.spec"), "bank_v2.spec"));
  const auto& withdraw = *spec->find_operation("withdraw");
  auto task = cise::vc::vc_stability(spec, withdraw, withdraw);
  cise::DomainBounds bounds;
  for (auto _ : state) {
    auto verdict = cise::solve::check_finite(task, bounds);
    benchmark::DoNotOptimize(verdict);
  }
}
BENCHMARK(BM_StabilityQuery);

void BM_FullPipelineBankV2(benchmark::State& state) {
  auto spec = std::make_shared<const cise::Specification>(
      cise::parse_spec(read_corpus("bank_v2.spec"), "bank_v2.spec"));
  cise::PipelineOptions options;
  options.solver = finite_config();
  for (auto _ : state) {
    auto result = cise::run_pipeline(spec, options);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_FullPipelineBankV2);

void BM_FullPipelineTokenizedBank(benchmark::State& state) {
  auto spec = std::make_shared<const cise::Specification>(
      cise::parse_spec(read_corpus("bank_v2_tokens.spec"), "bank_v2_tokens.spec"));
  cise::PipelineOptions options;
  options.solver = finite_config();
  for (auto _ : state) {
    auto result = cise::run_pipeline(spec, options);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_FullPipelineTokenizedBank);

}  // namespace

BENCHMARK_MAIN();
