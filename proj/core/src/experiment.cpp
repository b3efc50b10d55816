#include "slaas/experiment.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "number_format.hpp"
#include "slaas/parallel.hpp"

namespace slaas {
namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// JSON access with field paths in every error.

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

constexpr std::array<std::string_view, 7> kGaFields{
    "population_size", "term_length", "crossover_rate", "mutation_rounds", "mutation_rate", "epsilon", "elite_count"};

std::string index_path(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const json& required(const json& object, std::string_view key, const std::string& path) {
  if (!object.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
  auto it = object.find(key);
  if (it == object.end()) throw ConfigError(join(path, key), "missing required field");
  return *it;
}

const json* optional_field(const json& object, std::string_view key) {
  auto it = object.find(key);
  return it == object.end() ? nullptr : &*it;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  return v.get<double>();
}

std::uint64_t as_count(const json& v, const std::string& path) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
  throw ConfigError(path, "expected a nonnegative integer");
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) throw ConfigError(path, "expected true or false");
  return v.get<bool>();
}

const json& as_array(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "expected an array");
  return v;
}

std::vector<double> as_numbers(const json& v, const std::string& path) {
  std::vector<double> out;
  for (std::size_t i = 0; i < as_array(v, path).size(); ++i) out.push_back(as_number(v[i], index_path(path, i)));
  return out;
}

ResourceModel parse_model(const json& v, const std::string& path) {
  auto pool = as_numbers(required(v, "pool", path), join(path, "pool"));
  const auto& rows = as_array(required(v, "costs", path), join(path, "costs"));
  std::vector<std::vector<double>> costs;
  for (std::size_t m = 0; m < rows.size(); ++m) costs.push_back(as_numbers(rows[m], index_path(join(path, "costs"), m)));
  auto utilities = as_numbers(required(v, "utilities", path), join(path, "utilities"));
  try {
    return ResourceModel(std::move(pool), std::move(costs), std::move(utilities));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
}

ScenarioSegment parse_segment(const json& v, const std::string& path) {
  ScenarioSegment segment;
  segment.params.lambda = as_numbers(required(v, "lambda", path), join(path, "lambda"));
  segment.params.mu = as_numbers(required(v, "mu", path), join(path, "mu"));
  segment.generations = as_count(required(v, "generations", path), join(path, "generations"));
  return segment;
}

OptimizerSpec parse_optimizer(const json& v, const std::string& path) {
  OptimizerSpec spec;
  spec.name = as_string(required(v, "name", path), join(path, "name"));
  auto& ga = spec.ga;
  ga.population_size = as_count(required(v, "population_size", path), join(path, "population_size"));
  ga.term_length = as_count(required(v, "term_length", path), join(path, "term_length"));
  ga.crossover_rate = as_number(required(v, "crossover_rate", path), join(path, "crossover_rate"));
  ga.mutation_rounds = as_count(required(v, "mutation_rounds", path), join(path, "mutation_rounds"));
  ga.mutation_rate = as_number(required(v, "mutation_rate", path), join(path, "mutation_rate"));
  if (auto* f = optional_field(v, "epsilon")) ga.epsilon = as_number(*f, join(path, "epsilon"));
  if (auto* f = optional_field(v, "elite_count")) ga.elite_count = as_count(*f, join(path, "elite_count"));
  if (auto* f = optional_field(v, "seed_strategies")) {
    auto p = join(path, "seed_strategies");
    for (std::size_t i = 0; i < as_array(*f, p).size(); ++i) {
      spec.seed_strategies.push_back(as_string((*f)[i], index_path(p, i)));
    }
  }
  return spec;
}

json model_to_json(const ResourceModel& model) {
  return json{{"pool", model.pool()}, {"costs", model.costs()}, {"utilities", model.utilities()}};
}

// ---------------------------------------------------------------------------
// Presets.

const ScenarioParams kScenario1{{0.5, 2.0}, {2.0, 10.0}};
const ScenarioParams kScenario2{{0.3, 1.0}, {2.0, 3.0}};
const ScenarioParams kScenario3{{1.0, 0.0}, {2.0, 5.0}};

ResourceModel small_model() { return ResourceModel({1.0}, {{0.3, 0.3}}, {2.0, 1.0}); }

OptimizerSpec ga_spec(std::string name, std::size_t population, double crossover, std::size_t elites = 0,
                      std::vector<std::string> seeds = {}) {
  OptimizerSpec spec;
  spec.name = std::move(name);
  spec.ga.population_size = population;
  spec.ga.term_length = 6;
  spec.ga.crossover_rate = crossover;
  spec.ga.mutation_rounds = 1;
  spec.ga.mutation_rate = 0.1;
  spec.ga.elite_count = elites;
  spec.seed_strategies = std::move(seeds);
  return spec;
}

ExperimentConfig base_config(ExperimentKind kind, ResourceModel model) {
  return ExperimentConfig{
      .kind = kind,
      .model = std::move(model),
      .schedule = {},
      .optimizers = {},
      .baselines = {std::begin(kAllBaselines), std::end(kAllBaselines)},
      .replicates = 500,
      .seed = 1,
      .output = "results/" + std::string(to_string(kind)),
  };
}

// ---------------------------------------------------------------------------
// Campaign helpers.

std::vector<double> term_means(std::span<const double> utilities, std::size_t term) {
  std::vector<double> out(utilities.size() / term);
  for (std::size_t g = 0; g < out.size(); ++g) {
    auto first = utilities.begin() + static_cast<std::ptrdiff_t>(g * term);
    out[g] = std::accumulate(first, first + static_cast<std::ptrdiff_t>(term), 0.0) / static_cast<double>(term);
  }
  return out;
}

struct ReplicateOutput {
  std::vector<std::vector<double>> series;             // [series][generation]
  std::vector<std::vector<double>> snapshot_fitness;  // [snapshot][member]
};

double max_state_utility(const FeasibilitySpace& space) {
  double best = 0.0;
  for (const auto& s : space.states()) best = std::max(best, space.model().utility(s.counts));
  return best;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view to_string(ExperimentKind kind) noexcept {
  switch (kind) {
    case ExperimentKind::kEffectiveness: return "effectiveness";
    case ExperimentKind::kEvolution: return "evolution";
    case ExperimentKind::kNonstationary: return "nonstationary";
    case ExperimentKind::kScalability: return "scalability";
    case ExperimentKind::kSpaces: return "spaces";
    case ExperimentKind::kFullSearch: return "fullsearch";
  }
  return "unknown";
}

std::optional<ExperimentKind> parse_experiment_kind(std::string_view name) noexcept {
  for (auto kind : {ExperimentKind::kEffectiveness, ExperimentKind::kEvolution, ExperimentKind::kNonstationary,
                    ExperimentKind::kScalability, ExperimentKind::kSpaces, ExperimentKind::kFullSearch}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

std::size_t ExperimentConfig::term_length() const {
  return optimizers.empty() ? 6 : optimizers.front().ga.term_length;
}

std::size_t ExperimentConfig::total_generations() const {
  std::size_t total = 0;
  for (const auto& segment : schedule) total += segment.generations;
  return total;
}

void ExperimentConfig::validate() const {
  const std::size_t types = model.type_count();
  const bool campaign = kind != ExperimentKind::kSpaces && kind != ExperimentKind::kFullSearch;

  if (kind != ExperimentKind::kSpaces && schedule.empty()) throw ConfigError("schedule", "must not be empty");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    auto path = index_path("schedule", i);
    const auto& params = schedule[i].params;
    for (std::size_t n = 0; n < std::min(types, params.lambda.size()); ++n) {
      if (!std::isfinite(params.lambda[n]) || params.lambda[n] < 0.0) {
        throw ConfigError(index_path(join(path, "lambda"), n), "arrival rate must be finite and >= 0");
      }
    }
    for (std::size_t n = 0; n < std::min(types, params.mu.size()); ++n) {
      if (!std::isfinite(params.mu[n]) || params.mu[n] <= 0.0) {
        throw ConfigError(index_path(join(path, "mu"), n), "mean lifetime must be finite and > 0");
      }
    }
    try {
      params.validate(types);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(path, e.what());
    }
    if (schedule[i].generations == 0) throw ConfigError(join(path, "generations"), "must be positive");
  }
  if (campaign && optimizers.empty()) throw ConfigError("optimizers", "at least one optimizer is required");

  std::set<std::string> names{"optimum"};
  for (Baseline b : baselines) {
    if (b != Baseline::kGreedy && types != 2) {
      throw ConfigError("baselines", std::string(to_string(b)) + " is defined for two slice types only");
    }
    if (!names.insert(std::string(to_string(b))).second) throw ConfigError("baselines", "duplicate baseline");
  }
  for (std::size_t i = 0; i < optimizers.size(); ++i) {
    auto path = index_path("optimizers", i);
    const auto& spec = optimizers[i];
    if (spec.name.empty()) throw ConfigError(join(path, "name"), "must not be empty");
    if (!names.insert(spec.name).second) throw ConfigError(join(path, "name"), "duplicate series name '" + spec.name + "'");
    try {
      spec.ga.validate();
    } catch (const std::invalid_argument& e) {
      // GaConfig messages lead with the offending field name
      std::string_view message = e.what();
      auto field = message.substr(0, message.find(' '));
      bool named = std::find(kGaFields.begin(), kGaFields.end(), field) != kGaFields.end();
      throw ConfigError(named ? join(path, field) : path, e.what());
    }
    if (spec.ga.term_length != term_length()) {
      throw ConfigError(join(path, "term_length"), "all optimizers must share one term_length");
    }
    if (spec.seed_strategies.size() > spec.ga.population_size) {
      throw ConfigError(join(path, "seed_strategies"), "more seeds than population slots");
    }
    for (std::size_t k = 0; k < spec.seed_strategies.size(); ++k) {
      const auto& s = spec.seed_strategies[k];
      bool code = !s.empty() && s.find_first_not_of("01") == std::string::npos;
      if (!code && !parse_baseline(s)) {
        throw ConfigError(index_path(join(path, "seed_strategies"), k), "unknown strategy '" + s + "'");
      }
    }
  }
  if (replicates == 0) throw ConfigError("replicates", "must be positive");
  if (histogram_bins == 0) throw ConfigError("histogram_bins", "must be positive");
  if (search.horizon == 0) throw ConfigError("search.horizon", "must be positive");
  if (search.replicates == 0) throw ConfigError("search.replicates", "must be positive");
  for (std::size_t i = 0; i < snapshots.size(); ++i) {
    if (snapshots[i] == 0 || snapshots[i] > total_generations()) {
      throw ConfigError(index_path("snapshots", i), "generation outside the schedule");
    }
  }
}

ExperimentConfig load_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", e.what());
  }
  auto kind_name = as_string(required(doc, "kind", ""), "kind");
  auto kind = parse_experiment_kind(kind_name);
  if (!kind) throw ConfigError("kind", "unknown experiment kind '" + kind_name + "'");

  ExperimentConfig config{.kind = *kind, .model = parse_model(required(doc, "model", ""), "model")};

  if (auto* f = optional_field(doc, "schedule")) {
    for (std::size_t i = 0; i < as_array(*f, "schedule").size(); ++i) {
      config.schedule.push_back(parse_segment((*f)[i], index_path("schedule", i)));
    }
  }
  if (auto* f = optional_field(doc, "optimizers")) {
    for (std::size_t i = 0; i < as_array(*f, "optimizers").size(); ++i) {
      config.optimizers.push_back(parse_optimizer((*f)[i], index_path("optimizers", i)));
    }
  }
  if (auto* f = optional_field(doc, "baselines")) {
    for (std::size_t i = 0; i < as_array(*f, "baselines").size(); ++i) {
      auto name = as_string((*f)[i], index_path("baselines", i));
      auto b = parse_baseline(name);
      if (!b) throw ConfigError(index_path("baselines", i), "unknown baseline '" + name + "'");
      config.baselines.push_back(*b);
    }
  }
  if (auto* f = optional_field(doc, "replicates")) config.replicates = as_count(*f, "replicates");
  if (auto* f = optional_field(doc, "seed")) config.seed = as_count(*f, "seed");
  if (auto* f = optional_field(doc, "output")) config.output = as_string(*f, "output");
  if (auto* f = optional_field(doc, "jobs")) config.jobs = as_count(*f, "jobs");
  if (auto* f = optional_field(doc, "histogram_bins")) config.histogram_bins = as_count(*f, "histogram_bins");
  if (auto* f = optional_field(doc, "snapshots")) {
    for (std::size_t i = 0; i < as_array(*f, "snapshots").size(); ++i) {
      config.snapshots.push_back(as_count((*f)[i], index_path("snapshots", i)));
    }
  }
  if (auto* f = optional_field(doc, "search")) {
    const json& s = *f;
    if (!s.is_object()) throw ConfigError("search", "expected an object");
    if (auto* g = optional_field(s, "enabled")) config.search.enabled = as_bool(*g, "search.enabled");
    if (auto* g = optional_field(s, "horizon")) config.search.horizon = as_count(*g, "search.horizon");
    if (auto* g = optional_field(s, "replicates")) config.search.replicates = as_count(*g, "search.replicates");
    if (auto* g = optional_field(s, "guard_bits")) config.search.guard_bits = as_count(*g, "search.guard_bits");
  }
  config.validate();
  return config;
}

std::string dump_config(const ExperimentConfig& config) {
  json doc;
  doc["kind"] = to_string(config.kind);
  doc["seed"] = config.seed;
  doc["replicates"] = config.replicates;
  doc["jobs"] = config.jobs;
  doc["output"] = config.output;
  doc["model"] = model_to_json(config.model);
  doc["schedule"] = json::array();
  for (const auto& segment : config.schedule) {
    doc["schedule"].push_back(
        {{"lambda", segment.params.lambda}, {"mu", segment.params.mu}, {"generations", segment.generations}});
  }
  doc["optimizers"] = json::array();
  for (const auto& spec : config.optimizers) {
    doc["optimizers"].push_back({{"name", spec.name},
                                 {"population_size", spec.ga.population_size},
                                 {"term_length", spec.ga.term_length},
                                 {"crossover_rate", spec.ga.crossover_rate},
                                 {"mutation_rounds", spec.ga.mutation_rounds},
                                 {"mutation_rate", spec.ga.mutation_rate},
                                 {"epsilon", spec.ga.epsilon},
                                 {"elite_count", spec.ga.elite_count},
                                 {"seed_strategies", spec.seed_strategies}});
  }
  doc["baselines"] = json::array();
  for (Baseline b : config.baselines) doc["baselines"].push_back(to_string(b));
  doc["search"] = {{"enabled", config.search.enabled},
                   {"horizon", config.search.horizon},
                   {"replicates", config.search.replicates},
                   {"guard_bits", config.search.guard_bits}};
  doc["snapshots"] = config.snapshots;
  doc["histogram_bins"] = config.histogram_bins;
  return doc.dump(2) + "\n";
}

std::vector<std::string> preset_names() { return {"effectiveness", "evolution", "nonstationary", "scalability"}; }

ExperimentConfig preset(std::string_view name) {
  if (name == "effectiveness") {
    auto config = base_config(ExperimentKind::kEffectiveness, small_model());
    config.schedule = {{kScenario1, 20}};
    config.optimizers = {ga_spec("ga_p10", 10, 1.0), ga_spec("ga_p50", 50, 1.0)};
    config.search = {.enabled = true, .horizon = 120, .replicates = 500};
    return config;
  }
  if (name == "evolution") {
    auto config = base_config(ExperimentKind::kEvolution, small_model());
    config.schedule = {{kScenario1, 20}};
    config.optimizers = {ga_spec("ga_p50", 50, 1.0)};
    config.snapshots = {1, 2, 4, 8, 12, 20};
    return config;
  }
  if (name == "nonstationary") {
    auto config = base_config(ExperimentKind::kNonstationary, small_model());
    config.schedule = {{kScenario1, 20}, {kScenario2, 20}, {kScenario3, 20}};
    config.optimizers = {ga_spec("ga_p50", 50, 1.0)};
    // The optimum series is the full-search strategy for the first segment, held fixed throughout.
    config.search = {.enabled = true, .horizon = 120, .replicates = 500};
    return config;
  }
  if (name == "scalability") {
    auto config = base_config(ExperimentKind::kScalability, ResourceModel({1.0}, {{0.03, 0.03}}, {0.2, 0.1}));
    config.schedule = {{ScenarioParams{{2.5, 10.0}, {2.0, 10.0}}, 20}};
    config.optimizers = {ga_spec("ga_p10", 10, 1.0), ga_spec("ga_p50", 50, 1.0),
                         ga_spec("ga_p10_enhanced", 10, 0.9, 1, {"greedy"}),
                         ga_spec("ga_p50_enhanced", 50, 0.9, 1, {"greedy"})};
    return config;
  }
  throw ConfigError("preset", "unknown preset '" + std::string(name) + "'");
}

GaConfig resolve_optimizer(const OptimizerSpec& spec, const DecisionSpace& dspace) {
  GaConfig ga = spec.ga;
  ga.seeds.clear();
  for (const auto& s : spec.seed_strategies) {
    if (auto b = parse_baseline(s)) {
      ga.seeds.push_back(baseline_strategy(*b, dspace));
    } else {
      ga.seeds.push_back(StrategyCode::parse(dspace, s));
    }
  }
  return ga;
}

// ---------------------------------------------------------------------------

double SeriesStats::window_mean(std::size_t first, std::size_t last) const {
  if (first == 0 || first > last || last > mean.size()) throw std::out_of_range("generation window out of range");
  double total = 0.0;
  for (std::size_t g = first; g <= last; ++g) total += mean[g - 1];
  return total / static_cast<double>(last - first + 1);
}

const SeriesStats* CampaignResult::find(std::string_view name) const {
  for (const auto& s : series) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

const SeriesStats& CampaignResult::at(std::string_view name) const {
  if (auto* s = find(name)) return *s;
  throw std::out_of_range("no series named '" + std::string(name) + "'");
}

std::optional<std::size_t> CampaignResult::generations_to_threshold(std::string_view name, double reference,
                                                                    double fraction) const {
  const auto& s = at(name);
  for (std::size_t g = 0; g < s.mean.size(); ++g) {
    if (s.mean[g] >= fraction * reference) return g + 1;
  }
  return std::nullopt;
}

CampaignResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  CampaignResult result{.config = config};
  if (config.kind == ExperimentKind::kSpaces) return result;

  const DecisionSpace dspace{FeasibilitySpace(config.model)};
  const RngStream master(config.seed);

  if (config.kind == ExperimentKind::kFullSearch || config.search.enabled) {
    SearchOptions options{.horizon = config.search.horizon,
                          .replicates = config.search.replicates,
                          .guard_bits = config.search.guard_bits,
                          .jobs = config.jobs,
                          .keep_table = config.kind == ExperimentKind::kFullSearch};
    result.optimum = find_global_optimum(dspace, config.schedule.front().params, options, master);
  }
  if (config.kind == ExperimentKind::kFullSearch) return result;

  const std::size_t term = config.term_length();
  const std::size_t generations = config.total_generations();

  std::vector<GaConfig> optimizers;
  for (const auto& spec : config.optimizers) optimizers.push_back(resolve_optimizer(spec, dspace));
  std::vector<std::pair<std::string, StrategyCode>> fixed;
  for (Baseline b : config.baselines) fixed.emplace_back(std::string(to_string(b)), baseline_strategy(b, dspace));
  if (result.optimum) fixed.emplace_back("optimum", result.optimum->best_code);

  std::vector<ReplicateOutput> outputs(config.replicates);
  parallel_for(config.replicates, config.jobs, [&](std::size_t r) {
    const auto replicate = master.substream("replicate", r);
    auto trace_rng = replicate.substream("trace");
    const auto trace = build_schedule_trace(trace_rng, config.schedule, term);
    auto& out = outputs[r];

    for (std::size_t i = 0; i < optimizers.size(); ++i) {
      auto reports = run_optimizer_on_trace(dspace, trace, optimizers[i],
                                            replicate.substream(config.optimizers[i].name),
                                            SimState(dspace.type_count()));
      std::vector<double> utilities;
      for (const auto& report : reports) utilities.push_back(report.actual_utility);
      out.series.push_back(std::move(utilities));
      if (i == 0) {
        for (std::size_t g : config.snapshots) out.snapshot_fitness.push_back(reports[g - 1].fitness);
      }
    }
    for (const auto& [name, code] : fixed) {
      auto run = run_horizon(code, trace.periods, SimState(dspace.type_count()), dspace);
      out.series.push_back(term_means(run.utilities, term));
    }
  });

  std::vector<std::string> names;
  for (const auto& spec : config.optimizers) names.push_back(spec.name);
  for (const auto& f : fixed) names.push_back(f.first);

  const double n = static_cast<double>(config.replicates);
  for (std::size_t s = 0; s < names.size(); ++s) {
    SeriesStats stats{names[s], std::vector<double>(generations, 0.0), std::vector<double>(generations, 0.0)};
    for (std::size_t g = 0; g < generations; ++g) {
      double sum = 0.0;
      for (const auto& out : outputs) sum += out.series[s][g];
      const double mean = sum / n;
      double squares = 0.0;
      for (const auto& out : outputs) squares += (out.series[s][g] - mean) * (out.series[s][g] - mean);
      stats.mean[g] = mean;
      stats.stddev[g] = config.replicates > 1 ? std::sqrt(squares / (n - 1.0)) : 0.0;
    }
    result.series.push_back(std::move(stats));
  }

  if (!config.snapshots.empty()) {
    double upper = max_state_utility(dspace.space());
    if (upper <= 0.0) upper = 1.0;
    for (std::size_t k = 0; k < config.snapshots.size(); ++k) {
      FitnessHistogram histogram{config.snapshots[k], 0.0, upper, std::vector<std::size_t>(config.histogram_bins, 0)};
      for (const auto& out : outputs) {
        for (double f : out.snapshot_fitness[k]) {
          auto bin = static_cast<std::size_t>(std::floor(f / upper * static_cast<double>(config.histogram_bins)));
          ++histogram.counts[std::min(bin, config.histogram_bins - 1)];
        }
      }
      result.histograms.push_back(std::move(histogram));
    }
  }
  return result;
}

void emit_results(const CampaignResult& result, const std::filesystem::path& directory) {
  using detail::format_number;
  const auto& config = result.config;
  std::filesystem::create_directories(directory);

  json summary;
  summary["kind"] = to_string(config.kind);
  summary["seed"] = config.seed;
  summary["replicates"] = config.replicates;
  summary["generations"] = config.total_generations();
  summary["term_length"] = config.term_length();
  summary["config"] = json::parse(dump_config(config));

  if (config.kind == ExperimentKind::kSpaces) {
    const DecisionSpace dspace{FeasibilitySpace(config.model)};
    std::ostringstream text;
    write_model(text, config.model);
    write_feasibility_space(text, dspace.space());
    write_decision_space(text, dspace);
    write_text(directory / "spaces.txt", text.str());
    summary["feasibility_space_size"] = dspace.space().size();
    summary["decision_space_size"] = dspace.size();
  }

  if (result.optimum) {
    summary["optimum"] = {{"code", result.optimum->best_code.to_string()}, {"utility", result.optimum->best_utility}};
    if (!result.optimum->utilities.empty()) {
      const DecisionSpace dspace{FeasibilitySpace(config.model)};
      std::ostringstream table;
      write_search_table_csv(table, dspace, *result.optimum);
      write_text(directory / "fullsearch.csv", table.str());
    }
  } else {
    summary["optimum"] = nullptr;
  }

  if (!result.series.empty()) {
    std::ostringstream csv;
    csv << "generation,series,mean,std\n";
    const std::size_t generations = result.series.front().mean.size();
    for (std::size_t g = 0; g < generations; ++g) {
      for (const auto& s : result.series) {
        csv << g + 1 << ',' << s.name << ',' << format_number(s.mean[g]) << ',' << format_number(s.stddev[g]) << '\n';
      }
    }
    write_text(directory / "series.csv", csv.str());

    json finals, averages;
    for (const auto& s : result.series) {
      finals[s.name] = s.mean.back();
      averages[s.name] = s.window_mean(1, s.mean.size());
    }
    summary["final_utilities"] = finals;
    summary["mean_utilities"] = averages;

    // Reference for generations-to-threshold: the full-search optimum, else the best baseline.
    std::optional<double> reference;
    std::string source;
    if (result.optimum) {
      reference = result.optimum->best_utility;
      source = "optimum";
    } else {
      for (Baseline b : config.baselines) {
        double v = averages[std::string(to_string(b))].get<double>();
        if (!reference || v > *reference) {
          reference = v;
          source = std::string(to_string(b));
        }
      }
    }
    summary["reference_utility"] = reference ? json(*reference) : json(nullptr);
    summary["reference_source"] = reference ? json(source) : json(nullptr);
    json crossings = json::object();
    for (const auto& spec : config.optimizers) {
      auto g = reference ? result.generations_to_threshold(spec.name, *reference) : std::nullopt;
      crossings[spec.name] = g ? json(*g) : json(nullptr);
    }
    summary["generations_to_threshold"] = crossings;
  }

  for (const auto& h : result.histograms) {
    std::ostringstream csv;
    csv << "bin_lower,bin_upper,count,fraction\n";
    const double width = (h.upper - h.lower) / static_cast<double>(h.counts.size());
    const double total = static_cast<double>(std::accumulate(h.counts.begin(), h.counts.end(), std::size_t{0}));
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
      csv << format_number(h.lower + width * static_cast<double>(b)) << ','
          << format_number(h.lower + width * static_cast<double>(b + 1)) << ',' << h.counts[b] << ','
          << format_number(total > 0 ? static_cast<double>(h.counts[b]) / total : 0.0) << '\n';
    }
    write_text(directory / ("population_g" + std::to_string(h.generation) + ".csv"), csv.str());
  }

  write_text(directory / "summary.json", summary.dump(2) + "\n");
}

}  // namespace slaas
