#include <benchmark/benchmark.h>

#include "slaas/genetic.hpp"
#include "slaas/search.hpp"
#include "slaas/slicing.hpp"
#include "slaas/traffic.hpp"

namespace {

using namespace slaas;

const ScenarioParams kScenario{{0.5, 2.0}, {2.0, 10.0}};

void BM_EnumerateSpaces(benchmark::State& state) {
  const double cost = 1.0 / static_cast<double>(state.range(0));
  ResourceModel model({1.0}, {{cost, cost}}, {2.0, 1.0});
  for (auto _ : state) {
    DecisionSpace dspace{FeasibilitySpace(model)};
    benchmark::DoNotOptimize(dspace.size());
  }
}
BENCHMARK(BM_EnumerateSpaces)->Arg(3)->Arg(33)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_StepPeriod(benchmark::State& state) {
  DecisionSpace dspace{FeasibilitySpace(ResourceModel({1.0}, {{0.3, 0.3}}, {2.0, 1.0}))};
  StrategyCode greedy(dspace, true);
  RngStream rng(1);
  auto trace = build_request_trace(rng, kScenario, 1024);
  SimState sim(2);
  std::size_t t = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(step_period(sim, trace.periods[t++ % 1024], greedy, dspace));
  }
}
BENCHMARK(BM_StepPeriod);

void BM_MonteCarloStrategy(benchmark::State& state) {
  DecisionSpace dspace{FeasibilitySpace(ResourceModel({1.0}, {{0.3, 0.3}}, {2.0, 1.0}))};
  auto traces = replicate_traces(kScenario, 120, 500, RngStream(1));
  std::uint64_t index = 0;
  for (auto _ : state) {
    auto code = strategy_from_index(dspace, index++ % 4096);
    benchmark::DoNotOptimize(mean_utility(code, traces, dspace));
  }
}
BENCHMARK(BM_MonteCarloStrategy)->Unit(benchmark::kMillisecond);

void BM_EvolveGeneration(benchmark::State& state) {
  const double cost = state.range(1) ? 0.03 : 0.3;
  DecisionSpace dspace{FeasibilitySpace(ResourceModel({1.0}, {{cost, cost}}, {2.0, 1.0}))};
  GaConfig config;
  config.population_size = static_cast<std::size_t>(state.range(0));
  RngStream rng(2);
  auto population = initial_population(dspace, config, rng);
  std::vector<double> fitness(population.size());
  for (auto& f : fitness) f = rng.uniform();
  for (auto _ : state) {
    auto next = evolve_generation(population, fitness, config, rng);
    benchmark::DoNotOptimize(next.members.data());
  }
}
BENCHMARK(BM_EvolveGeneration)->Args({10, 0})->Args({50, 0})->Args({50, 1})->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
