#pragma once

// Online genetic optimizer for slicing strategies.
//
// Every evolution term the whole population is operated "virtually" on the
// same requests the real network sees, starting from a copy of the real
// slice set. The average utility each candidate earns is its fitness; the
// fittest candidate becomes the strategy applied in the next term and the
// population is renewed by fitness-proportional reproduction, segment-swap
// crossover, bit-flip mutation and optional elitism.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "slaas/rng.hpp"
#include "slaas/slicing.hpp"
#include "slaas/traffic.hpp"

namespace slaas {

struct GaConfig {
  std::size_t population_size = 50;
  std::size_t term_length = 6;     // operations periods per evolution term
  double crossover_rate = 1.0;     // chance that a pair swaps a segment
  std::size_t mutation_rounds = 1;
  double mutation_rate = 0.1;      // chance per round to flip one random bit
  double epsilon = 1e-9;
  std::size_t elite_count = 0;
  std::vector<StrategyCode> seeds;  // replace the first random members of the initial population

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  bool operator==(const GaConfig&) const = default;
};

struct Population {
  std::vector<StrategyCode> members;
  std::vector<SimState> virtual_states;

  std::size_t size() const noexcept { return members.size(); }
  void reset_virtual_states(const SimState& actual);
};

struct GenerationReport {
  std::size_t generation = 0;  // 1-based
  std::vector<double> fitness;
  StrategyCode applied;         // strategy operated for real during this term
  double actual_utility = 0.0;  // mean utility it realized over the term
  StrategyCode chosen;          // strategy selected for the next term

  double best_fitness() const;
  double mean_fitness() const;
};

/// Runs every member over the term from its virtual state; returns mean utilities
/// and leaves the virtual states at the end of the term.
std::vector<double> evaluate_fitness(Population& population, std::span<const PeriodEvents> term,
                                     const DecisionSpace& dspace);

/// Index of the fittest member, lowest index on ties.
std::size_t select_actual(std::span<const double> fitness);
const StrategyCode& select_actual(const Population& population, std::span<const double> fitness);

/// Copies per member: shares budget * (f_i + eps) / (sum f + P eps), floored,
/// then the remaining slots go to the largest fractional parts (lower index first).
std::vector<std::size_t> reproduction_counts(std::span<const double> fitness, double epsilon, std::size_t budget);
std::vector<StrategyCode> reproduce(std::span<const StrategyCode> members, std::span<const double> fitness,
                                    double epsilon);

/// Swaps bits [first, last) between a and b.
void swap_segment(StrategyCode& a, StrategyCode& b, std::size_t first, std::size_t last);
std::pair<StrategyCode, StrategyCode> crossover_pair(StrategyCode a, StrategyCode b, double rate, RngStream& rng);
StrategyCode mutate(StrategyCode code, std::size_t rounds, double rate, RngStream& rng);

StrategyCode random_strategy(const DecisionSpace& dspace, RngStream& rng);
Population initial_population(const DecisionSpace& dspace, const GaConfig& config, RngStream& rng);

/// Next population: elites first (verbatim), then the reproduced, crossed and
/// mutated rest. Virtual states of the result are empty; they are reset to
/// the actual state at the start of the next term.
Population evolve_generation(const Population& population, std::span<const double> fitness, const GaConfig& config,
                             RngStream& rng);

/// Full online run over a pre-built trace of whole evolution terms, starting
/// from `start` as the actual state.
std::vector<GenerationReport> run_optimizer_on_trace(const DecisionSpace& dspace, const RequestTrace& trace,
                                                     const GaConfig& config, const RngStream& rng,
                                                     const SimState& start);

/// Draws the trace for `schedule` from rng substream "trace" and starts from an idle pool.
std::vector<GenerationReport> run_optimizer(const DecisionSpace& dspace, std::span<const ScenarioSegment> schedule,
                                            const GaConfig& config, const RngStream& rng);

/// generation,best_fitness,mean_fitness,actual_utility,chosen_code
void write_reports_csv(std::ostream& out, std::span<const GenerationReport> reports);

}  // namespace slaas
