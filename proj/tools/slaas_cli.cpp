// Command-line front end: codebook listings, full search and experiment campaigns.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "slaas/experiment.hpp"
#include "slaas/search.hpp"
#include "slaas/slicing.hpp"

namespace {

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> replicates;
  std::optional<std::string> out;
  std::optional<std::size_t> jobs;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--seed", seed, "Master seed");
    cmd->add_option("--replicates", replicates, "Monte Carlo replicates (campaign and full search)");
    cmd->add_option("--out", out, "Output directory");
    cmd->add_option("--jobs", jobs, "Worker threads (0 = all cores)");
  }

  void apply(slaas::ExperimentConfig& config) const {
    if (seed) config.seed = *seed;
    if (replicates) {
      config.replicates = *replicates;
      config.search.replicates = *replicates;
    }
    if (out) config.output = *out;
    if (jobs) config.jobs = *jobs;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

slaas::ExperimentConfig base_config(const std::string& config_path, const std::string& preset_name) {
  if (!config_path.empty()) return slaas::load_config(read_file(config_path));
  return slaas::preset(preset_name);
}

void print_spaces(const slaas::ResourceModel& model, bool with_baselines) {
  const slaas::DecisionSpace dspace{slaas::FeasibilitySpace(model)};
  slaas::write_model(std::cout, model);
  slaas::write_feasibility_space(std::cout, dspace.space());
  slaas::write_decision_space(std::cout, dspace);
  std::cout << "strategies 2^" << dspace.size();
  if (dspace.size() < 63) std::cout << " = " << (std::uint64_t{1} << dspace.size());
  std::cout << '\n';
  if (with_baselines) {
    for (auto kind : slaas::kAllBaselines) {
      if (kind != slaas::Baseline::kGreedy && dspace.type_count() != 2) continue;
      std::cout << slaas::to_string(kind) << ' ' << slaas::baseline_strategy(kind, dspace).to_string() << '\n';
    }
  }
}

int run_campaign(slaas::ExperimentConfig config) {
  config.validate();
  auto result = slaas::run_experiment(config);
  slaas::emit_results(result, config.output);
  std::cout << "wrote " << config.output << '\n';
  for (const auto& s : result.series) {
    std::cout << "  " << s.name << ": final " << s.mean.back() << ", mean " << s.window_mean(1, s.mean.size()) << '\n';
  }
  if (result.optimum) {
    std::cout << "  optimum " << result.optimum->best_code.to_string() << " utility " << result.optimum->best_utility
              << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Genetic slicing-strategy optimizer and simulation harness"};
  app.require_subcommand(1);

  std::string config_path;
  std::string preset_name = "effectiveness";
  bool with_baselines = false;
  auto* spaces = app.add_subcommand("spaces", "Print the feasibility space, decision space and codebook size");
  spaces->add_option("--config", config_path, "Take the model from this config file");
  spaces->add_option("--preset", preset_name, "Take the model from this preset")->capture_default_str();
  spaces->add_flag("--baselines", with_baselines, "Also print the baseline strategy codes");

  Overrides search_overrides;
  std::optional<std::size_t> horizon;
  std::optional<std::size_t> guard;
  auto* fullsearch = app.add_subcommand("fullsearch", "Exhaustively evaluate every strategy of a small codebook");
  fullsearch->add_option("--config", config_path, "Take model and first scenario from this config file");
  fullsearch->add_option("--preset", preset_name, "Take model and first scenario from this preset")
      ->capture_default_str();
  fullsearch->add_option("--horizon", horizon, "Periods per Monte Carlo replicate");
  fullsearch->add_option("--guard", guard, "Largest decision space (bits) to enumerate");
  search_overrides.add_to(fullsearch);

  Overrides run_overrides;
  std::string run_path;
  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", run_path, "Config file (JSON)")->required();
  run_overrides.add_to(run);

  Overrides preset_overrides;
  std::string preset_arg;
  bool dump = false;
  auto* presets = app.add_subcommand("presets", "Run a built-in experiment preset ('list' prints the names)");
  presets->add_option("name", preset_arg, "effectiveness | evolution | nonstationary | scalability | list")
      ->required();
  presets->add_flag("--dump", dump, "Print the preset config instead of running it");
  preset_overrides.add_to(presets);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*spaces) {
      print_spaces(base_config(config_path, preset_name).model, with_baselines);
      return 0;
    }
    if (*fullsearch) {
      auto config = base_config(config_path, preset_name);
      config.kind = slaas::ExperimentKind::kFullSearch;
      config.search.enabled = true;
      if (horizon) config.search.horizon = *horizon;
      if (guard) config.search.guard_bits = *guard;
      config.output = "results/fullsearch";
      search_overrides.apply(config);
      config.validate();
      auto result = slaas::run_experiment(config);
      std::cout << "best " << result.optimum->best_code.to_string() << " utility " << result.optimum->best_utility
                << '\n';
      if (search_overrides.out) {
        slaas::emit_results(result, config.output);
        std::cout << "wrote " << config.output << '\n';
      }
      return 0;
    }
    if (*run) {
      auto config = slaas::load_config(read_file(run_path));
      run_overrides.apply(config);
      return run_campaign(std::move(config));
    }
    if (*presets) {
      if (preset_arg == "list") {
        for (const auto& name : slaas::preset_names()) std::cout << name << '\n';
        return 0;
      }
      auto config = slaas::preset(preset_arg);
      preset_overrides.apply(config);
      if (dump) {
        std::cout << slaas::dump_config(config);
        return 0;
      }
      return run_campaign(std::move(config));
    }
  } catch (const slaas::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const slaas::GuardError& e) {
    std::cerr << "search guard: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
