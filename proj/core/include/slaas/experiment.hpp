#pragma once

// Experiment configuration, presets, Monte Carlo campaigns and result files.
//
// A campaign runs `replicates` independent replicates. Replicate r draws one
// request trace for the whole scenario schedule from
// RngStream(seed).substream("replicate", r).substream("trace"); every
// optimizer, baseline and the full-search optimum are operated on that same
// trace. The full search scores its candidates on exactly these traces when
// its horizon equals the schedule length.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "slaas/genetic.hpp"
#include "slaas/search.hpp"
#include "slaas/slicing.hpp"
#include "slaas/traffic.hpp"

namespace slaas {

enum class ExperimentKind { kEffectiveness, kEvolution, kNonstationary, kScalability, kSpaces, kFullSearch };

std::string_view to_string(ExperimentKind kind) noexcept;
std::optional<ExperimentKind> parse_experiment_kind(std::string_view name) noexcept;

/// Invalid configuration; path() names the offending field, e.g. "optimizers[0].population_size".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

struct OptimizerSpec {
  std::string name;
  GaConfig ga;                               // ga.seeds stays empty; see seed_strategies
  std::vector<std::string> seed_strategies;  // baseline names or 0/1 code strings

  bool operator==(const OptimizerSpec&) const = default;
};

struct SearchSpec {
  bool enabled = false;
  std::size_t horizon = kDefaultSearchHorizon;
  std::size_t replicates = 500;
  std::size_t guard_bits = kDefaultGuardBits;

  bool operator==(const SearchSpec&) const = default;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kEffectiveness;
  ResourceModel model;
  std::vector<ScenarioSegment> schedule;
  std::vector<OptimizerSpec> optimizers;
  std::vector<Baseline> baselines;
  std::size_t replicates = 1;
  std::uint64_t seed = 1;
  std::string output = "results";
  SearchSpec search;
  std::vector<std::size_t> snapshots;  // generations whose population fitness is histogrammed
  std::size_t histogram_bins = 20;
  std::size_t jobs = 1;

  std::size_t term_length() const;
  std::size_t total_generations() const;
  /// Throws ConfigError.
  void validate() const;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Parses the JSON config document (comments allowed) and validates it.
ExperimentConfig load_config(std::string_view text);
std::string dump_config(const ExperimentConfig& config);

/// effectiveness, evolution, nonstationary, scalability
std::vector<std::string> preset_names();
ExperimentConfig preset(std::string_view name);

/// Resolves seed_strategies into codes for dspace.
GaConfig resolve_optimizer(const OptimizerSpec& spec, const DecisionSpace& dspace);

struct SeriesStats {
  std::string name;
  std::vector<double> mean;    // per generation, across replicates
  std::vector<double> stddev;  // sample standard deviation

  /// Average of the per-generation means over generations [first, last], 1-based.
  double window_mean(std::size_t first, std::size_t last) const;
};

struct FitnessHistogram {
  std::size_t generation = 0;
  double lower = 0.0;
  double upper = 0.0;
  std::vector<std::size_t> counts;
};

struct CampaignResult {
  ExperimentConfig config;
  std::vector<SeriesStats> series;
  std::optional<SearchResult> optimum;
  std::vector<FitnessHistogram> histograms;

  const SeriesStats* find(std::string_view name) const;
  const SeriesStats& at(std::string_view name) const;
  /// First 1-based generation whose mean reaches fraction * reference.
  std::optional<std::size_t> generations_to_threshold(std::string_view name, double reference,
                                                      double fraction = 0.9) const;
};

CampaignResult run_experiment(const ExperimentConfig& config);

/// Writes series.csv, summary.json and, when present, population_g<N>.csv,
/// fullsearch.csv and spaces.txt into `directory`.
void emit_results(const CampaignResult& result, const std::filesystem::path& directory);

}  // namespace slaas
