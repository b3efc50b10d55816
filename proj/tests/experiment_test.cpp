#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "slaas/experiment.hpp"

using namespace slaas;

namespace {

const char* kSmallDoc = R"({
  // two slice types sharing one resource
  "kind": "effectiveness",
  "model": {"pool": [1.0], "costs": [[0.3, 0.3]], "utilities": [2, 1]},
  "schedule": [{"lambda": [0.5, 2.0], "mu": [2.0, 10.0], "generations": 4}],
  "optimizers": [{"name": "ga", "population_size": 8, "term_length": 6,
                  "crossover_rate": 1.0, "mutation_rounds": 1, "mutation_rate": 0.1}],
  "baselines": ["greedy", "conservative", "opportunistic"],
  "replicates": 6,
  "seed": 42
})";

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("slaas_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

std::string error_path(const std::string& doc) {
  try {
    load_config(doc);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "<no error>";
}

}  // namespace

TEST(Config, ParsesScenarioBlock) {
  auto config = load_config(kSmallDoc);
  ASSERT_EQ(config.schedule.size(), 1u);
  EXPECT_EQ(config.schedule[0].params, slaas::testing::kSteady);
  EXPECT_EQ(config.schedule[0].generations, 4u);
  EXPECT_EQ(config.model, slaas::testing::small_model());
  EXPECT_EQ(config.optimizers[0].ga.population_size, 8u);
  EXPECT_EQ(config.total_generations(), 4u);
  EXPECT_EQ(config.term_length(), 6u);
}

TEST(Config, MissingPopulationSizeNamesTheField) {
  std::string doc = kSmallDoc;
  doc.replace(doc.find("\"population_size\": 8, "), 22, "");
  EXPECT_EQ(error_path(doc), "optimizers[0].population_size");
  try {
    load_config(doc);
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("population_size"), std::string::npos);
  }
}

TEST(Config, InvariantViolationsCarryPaths) {
  std::string doc = kSmallDoc;
  doc.replace(doc.find("\"mutation_rate\": 0.1"), 20, "\"mutation_rate\": 1.5");
  EXPECT_EQ(error_path(doc), "optimizers[0].mutation_rate");
  doc = kSmallDoc;
  doc.replace(doc.find("\"mu\": [2.0, 10.0]"), 17, "\"mu\": [0.0, 10.0]");
  EXPECT_EQ(error_path(doc).rfind("schedule[0]", 0), 0u);
  EXPECT_THROW(load_config("{ not json"), ConfigError);
}

TEST(Config, DumpLoadRoundTrip) {
  for (const auto& name : preset_names()) {
    auto config = preset(name);
    EXPECT_EQ(load_config(dump_config(config)), config) << name;
  }
  auto config = load_config(kSmallDoc);
  EXPECT_EQ(load_config(dump_config(config)), config);
}

TEST(Presets, EncodeTheSetups) {
  auto eff = preset("effectiveness");
  EXPECT_EQ(eff.replicates, 500u);
  EXPECT_EQ(eff.total_generations(), 20u);
  ASSERT_EQ(eff.optimizers.size(), 2u);
  EXPECT_EQ(eff.optimizers[0].ga.population_size, 10u);
  EXPECT_EQ(eff.optimizers[1].ga.population_size, 50u);
  auto ns = preset("nonstationary");
  EXPECT_EQ(ns.total_generations(), 60u);
  EXPECT_EQ(ns.schedule.size(), 3u);
  auto sc = preset("scalability");
  EXPECT_FALSE(sc.search.enabled);
  EXPECT_THROW(preset("nope"), ConfigError);
}

TEST(Campaign, SeriesShapeAndSchema) {
  auto config = load_config(kSmallDoc);
  auto result = run_experiment(config);
  ASSERT_EQ(result.series.size(), 4u);
  for (const auto& s : result.series) {
    EXPECT_EQ(s.mean.size(), 4u);
    EXPECT_EQ(s.stddev.size(), 4u);
  }
  auto dir = scratch("schema");
  emit_results(result, dir);
  std::istringstream csv(slurp(dir / "series.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "generation,series,mean,std");
  std::size_t rows = 0;
  while (std::getline(csv, line)) ++rows;
  EXPECT_EQ(rows, 4u * 4u);
  EXPECT_TRUE(std::filesystem::exists(dir / "summary.json"));
  std::filesystem::remove_all(dir);
}

TEST(Campaign, OptimumSeriesWhenSearchEnabled) {
  auto config = load_config(kSmallDoc);
  config.replicates = 2;
  config.search = {.enabled = true, .horizon = 24, .replicates = 2};
  auto result = run_experiment(config);
  ASSERT_TRUE(result.optimum.has_value());
  std::vector<std::string> names;
  for (const auto& s : result.series) names.push_back(s.name);
  EXPECT_EQ(names, (std::vector<std::string>{"ga", "greedy", "conservative", "opportunistic", "optimum"}));
  // with the search horizon equal to the schedule length both run on the same traces
  EXPECT_NEAR(result.at("optimum").window_mean(1, 4), result.optimum->best_utility, 1e-9);
}

TEST(Campaign, ByteIdenticalAcrossRunsAndThreadCounts) {
  auto config = load_config(kSmallDoc);
  auto a = scratch("det_a"), b = scratch("det_b");
  emit_results(run_experiment(config), a);
  config.jobs = 3;
  emit_results(run_experiment(config), b);
  EXPECT_EQ(slurp(a / "series.csv"), slurp(b / "series.csv"));
  std::filesystem::remove_all(a);
  std::filesystem::remove_all(b);
}

TEST(Campaign, EvolutionHistograms) {
  auto config = load_config(kSmallDoc);
  config.kind = ExperimentKind::kEvolution;
  config.snapshots = {1, 4};
  config.histogram_bins = 5;
  auto result = run_experiment(config);
  ASSERT_EQ(result.histograms.size(), 2u);
  std::size_t total = 0;
  for (auto c : result.histograms[1].counts) total += c;
  EXPECT_EQ(total, 8u * 6u);
  auto dir = scratch("hist");
  emit_results(result, dir);
  EXPECT_TRUE(std::filesystem::exists(dir / "population_g4.csv"));
  std::filesystem::remove_all(dir);
}

TEST(Campaign, GenerationsToThreshold) {
  CampaignResult result{preset("effectiveness"), {}, std::nullopt, {}};
  result.series.push_back({"ga", {1.0, 2.0, 2.8, 3.0}, {0, 0, 0, 0}});
  EXPECT_EQ(result.generations_to_threshold("ga", 3.0), 3u);
  EXPECT_FALSE(result.generations_to_threshold("ga", 10.0).has_value());
  EXPECT_DOUBLE_EQ(result.at("ga").window_mean(2, 3), 2.4);
}
