#include "slaas/genetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "number_format.hpp"

namespace slaas {
namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

}  // namespace

void GaConfig::validate() const {
  require(population_size >= 1, "population_size must be positive");
  require(term_length >= 1, "term_length must be positive");
  require(is_probability(crossover_rate), "crossover_rate must lie in [0, 1]");
  require(is_probability(mutation_rate), "mutation_rate must lie in [0, 1]");
  require(std::isfinite(epsilon) && epsilon > 0.0, "epsilon must be positive");
  require(elite_count < population_size, "elite_count must be smaller than population_size");
  require(seeds.size() <= population_size, "more seed strategies than population slots");
}

void Population::reset_virtual_states(const SimState& actual) { virtual_states.assign(members.size(), actual); }

double GenerationReport::best_fitness() const {
  return fitness.empty() ? 0.0 : *std::max_element(fitness.begin(), fitness.end());
}

double GenerationReport::mean_fitness() const {
  if (fitness.empty()) return 0.0;
  return std::accumulate(fitness.begin(), fitness.end(), 0.0) / static_cast<double>(fitness.size());
}

std::vector<double> evaluate_fitness(Population& population, std::span<const PeriodEvents> term,
                                     const DecisionSpace& dspace) {
  require(population.virtual_states.size() == population.size(), "population has no virtual state per member");
  std::vector<double> fitness(population.size());
  for (std::size_t i = 0; i < population.size(); ++i) {
    fitness[i] = average_utility(population.members[i], term, population.virtual_states[i], dspace);
  }
  return fitness;
}

std::size_t select_actual(std::span<const double> fitness) {
  if (fitness.empty()) throw std::invalid_argument("cannot select from an empty population");
  // max_element returns the first maximum.
  return static_cast<std::size_t>(std::max_element(fitness.begin(), fitness.end()) - fitness.begin());
}

const StrategyCode& select_actual(const Population& population, std::span<const double> fitness) {
  require(fitness.size() == population.size(), "one fitness value per member required");
  return population.members[select_actual(fitness)];
}

std::vector<std::size_t> reproduction_counts(std::span<const double> fitness, double epsilon, std::size_t budget) {
  require(!fitness.empty(), "cannot reproduce an empty population");
  require(std::isfinite(epsilon) && epsilon > 0.0, "epsilon must be positive");
  const double size = static_cast<double>(fitness.size());
  const double total = std::accumulate(fitness.begin(), fitness.end(), 0.0) + size * epsilon;

  std::vector<std::size_t> counts(fitness.size());
  std::vector<double> remainder(fitness.size());
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < fitness.size(); ++i) {
    require(std::isfinite(fitness[i]) && fitness[i] >= 0.0, "fitness values must be finite and >= 0");
    double share = static_cast<double>(budget) * (fitness[i] + epsilon) / total;
    double whole = std::floor(share);
    counts[i] = static_cast<std::size_t>(whole);
    remainder[i] = share - whole;
    assigned += counts[i];
  }
  // Floating error can push the floors one over budget; trim from the smallest remainders.
  std::vector<std::size_t> order(fitness.size());
  std::iota(order.begin(), order.end(), 0);
  while (assigned > budget) {
    auto it = std::min_element(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (counts[a] == 0) return false;
      if (counts[b] == 0) return true;
      return remainder[a] < remainder[b];
    });
    --counts[*it];
    remainder[*it] += 1.0;
    --assigned;
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t k = 0; assigned < budget; k = (k + 1) % order.size()) {
    ++counts[order[k]];
    ++assigned;
  }
  return counts;
}

std::vector<StrategyCode> reproduce(std::span<const StrategyCode> members, std::span<const double> fitness,
                                    double epsilon) {
  require(members.size() == fitness.size(), "one fitness value per member required");
  auto counts = reproduction_counts(fitness, epsilon, members.size());
  std::vector<StrategyCode> copies;
  copies.reserve(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) copies.insert(copies.end(), counts[i], members[i]);
  return copies;
}

void swap_segment(StrategyCode& a, StrategyCode& b, std::size_t first, std::size_t last) {
  require(a.size() == b.size(), "crossover needs codes of equal length");
  require(first <= last && last <= a.size(), "crossover segment out of range");
  for (std::size_t k = first; k < last; ++k) {
    bool tmp = a[k];
    a.set(k, b[k]);
    b.set(k, tmp);
  }
}

std::pair<StrategyCode, StrategyCode> crossover_pair(StrategyCode a, StrategyCode b, double rate, RngStream& rng) {
  require(a.size() == b.size(), "crossover needs codes of equal length");
  require(is_probability(rate), "crossover_rate must lie in [0, 1]");
  if (a.size() == 0 || !rng.bernoulli(rate)) return {std::move(a), std::move(b)};
  // Uniform over 0 <= first < last <= length.
  const std::uint64_t points = a.size() + 1;
  std::uint64_t first = 0, last = 0;
  while (first == last) {
    first = rng.below(points);
    last = rng.below(points);
  }
  if (first > last) std::swap(first, last);
  swap_segment(a, b, first, last);
  return {std::move(a), std::move(b)};
}

StrategyCode mutate(StrategyCode code, std::size_t rounds, double rate, RngStream& rng) {
  require(is_probability(rate), "mutation_rate must lie in [0, 1]");
  if (code.size() == 0) return code;
  for (std::size_t r = 0; r < rounds; ++r) {
    if (rng.bernoulli(rate)) code.flip(rng.below(code.size()));
  }
  return code;
}

StrategyCode random_strategy(const DecisionSpace& dspace, RngStream& rng) {
  StrategyCode code(dspace);
  for (std::size_t k = 0; k < code.size(); ++k) code.set(k, rng.bernoulli(0.5));
  return code;
}

Population initial_population(const DecisionSpace& dspace, const GaConfig& config, RngStream& rng) {
  config.validate();
  Population population;
  for (std::size_t i = 0; i < config.population_size; ++i) population.members.push_back(random_strategy(dspace, rng));
  for (std::size_t i = 0; i < config.seeds.size(); ++i) {
    require_bound(config.seeds[i], dspace);
    population.members[i] = config.seeds[i];
  }
  return population;
}

Population evolve_generation(const Population& population, std::span<const double> fitness, const GaConfig& config,
                             RngStream& rng) {
  config.validate();
  require(population.size() == config.population_size, "population size differs from population_size");
  require(fitness.size() == population.size(), "one fitness value per member required");

  std::vector<std::size_t> ranking(population.size());
  std::iota(ranking.begin(), ranking.end(), 0);
  std::stable_sort(ranking.begin(), ranking.end(), [&](std::size_t a, std::size_t b) { return fitness[a] > fitness[b]; });

  Population next;
  next.members.reserve(population.size());
  for (std::size_t e = 0; e < config.elite_count; ++e) next.members.push_back(population.members[ranking[e]]);

  const std::size_t budget = population.size() - config.elite_count;
  auto counts = reproduction_counts(fitness, config.epsilon, budget);
  std::vector<StrategyCode> offspring;
  offspring.reserve(budget);
  for (std::size_t i = 0; i < population.size(); ++i) {
    offspring.insert(offspring.end(), counts[i], population.members[i]);
  }

  auto shuffle_rng = rng.substream("shuffle");
  auto crossover_rng = rng.substream("crossover");
  auto mutation_rng = rng.substream("mutation");
  std::shuffle(offspring.begin(), offspring.end(), shuffle_rng);
  for (std::size_t i = 0; i + 1 < offspring.size(); i += 2) {
    auto [a, b] = crossover_pair(std::move(offspring[i]), std::move(offspring[i + 1]), config.crossover_rate,
                                 crossover_rng);
    offspring[i] = std::move(a);
    offspring[i + 1] = std::move(b);
  }
  for (auto& child : offspring) {
    next.members.push_back(mutate(std::move(child), config.mutation_rounds, config.mutation_rate, mutation_rng));
  }
  return next;
}

std::vector<GenerationReport> run_optimizer_on_trace(const DecisionSpace& dspace, const RequestTrace& trace,
                                                     const GaConfig& config, const RngStream& rng,
                                                     const SimState& start) {
  config.validate();
  const std::size_t term = config.term_length;
  require(trace.horizon() >= term && trace.horizon() % term == 0,
          "trace length must be a positive multiple of term_length");
  const std::size_t generations = trace.horizon() / term;

  auto init_rng = rng.substream("init");
  StrategyCode applied = random_strategy(dspace, init_rng);
  Population population = initial_population(dspace, config, init_rng);
  SimState actual = start;

  std::vector<GenerationReport> reports;
  reports.reserve(generations);
  for (std::size_t j = 1; j <= generations; ++j) {
    auto window = trace.window((j - 1) * term, term);
    population.reset_virtual_states(actual);
    GenerationReport report;
    report.generation = j;
    report.fitness = evaluate_fitness(population, window, dspace);
    report.applied = applied;
    report.actual_utility = average_utility(applied, window, actual, dspace);
    report.chosen = select_actual(population, report.fitness);
    applied = report.chosen;
    if (j < generations) {
      auto generation_rng = rng.substream("generation", j);
      population = evolve_generation(population, report.fitness, config, generation_rng);
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

std::vector<GenerationReport> run_optimizer(const DecisionSpace& dspace, std::span<const ScenarioSegment> schedule,
                                            const GaConfig& config, const RngStream& rng) {
  auto trace_rng = rng.substream("trace");
  auto trace = build_schedule_trace(trace_rng, schedule, config.term_length);
  return run_optimizer_on_trace(dspace, trace, config, rng, SimState(dspace.type_count()));
}

void write_reports_csv(std::ostream& out, std::span<const GenerationReport> reports) {
  using detail::format_number;
  out << "generation,best_fitness,mean_fitness,actual_utility,chosen_code\n";
  for (const auto& r : reports) {
    out << r.generation << ',' << format_number(r.best_fitness()) << ',' << format_number(r.mean_fitness()) << ','
        << format_number(r.actual_utility) << ',' << r.chosen.to_string() << '\n';
  }
}

}  // namespace slaas
