#include <gtest/gtest.h>

#include <sstream>
#include <stdexcept>

#include "oracles.hpp"
#include "fixtures.hpp"
#include "slaas/slicing.hpp"

using namespace slaas;
using slaas::testing::large_model;
using slaas::testing::small_model;
using slaas::testing::small_space;

namespace {

std::vector<std::vector<int>> states_of(const FeasibilitySpace& space) {
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < space.size(); ++i) out.push_back(space[i].counts);
  return out;
}

std::vector<std::pair<std::vector<int>, std::size_t>> entries_of(const DecisionSpace& dspace) {
  std::vector<std::pair<std::vector<int>, std::size_t>> out;
  for (std::size_t k = 0; k < dspace.size(); ++k) out.emplace_back(dspace.entry_state(k).counts, dspace.entries()[k].type);
  return out;
}

}  // namespace

TEST(ResourceModel, AssignmentAndUtility) {
  auto model = small_model();
  std::vector<int> s{2, 1};
  auto a = model.assignment(s);
  ASSERT_EQ(a.size(), 1u);
  EXPECT_NEAR(a[0], 0.9, 1e-12);
  EXPECT_TRUE(model.fits(s));
  EXPECT_DOUBLE_EQ(model.utility(s), 5.0);
  EXPECT_EQ(model.type_bound(0), 3);
}

TEST(ResourceModel, RejectsBadDimensions) {
  EXPECT_THROW(ResourceModel({1.0}, {{0.3}}, {2.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(ResourceModel({1.0, 2.0}, {{0.3, 0.3}}, {2.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(ResourceModel({-1.0}, {{0.3, 0.3}}, {2.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(ResourceModel({1.0}, {{0.0, 0.3}}, {2.0, 1.0}), std::invalid_argument);
  std::vector<int> wrong{1, 1, 1};
  EXPECT_THROW(small_model().assignment(wrong), std::invalid_argument);
}

TEST(FeasibilitySpace, SmallModelListing) {
  FeasibilitySpace space(small_model());
  std::vector<std::vector<int>> expected{{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 0},
                                         {1, 1}, {1, 2}, {2, 0}, {2, 1}, {3, 0}};
  EXPECT_EQ(states_of(space), expected);
}

TEST(FeasibilitySpace, MatchesBruteForce) {
  std::vector<ResourceModel> models{
      small_model(),
      ResourceModel({1.0}, {{0.5, 0.5}}, {1.0, 1.0}),
      ResourceModel({1.0, 2.0}, {{0.25, 0.4, 0.1}, {0.5, 0.3, 0.7}}, {1.0, 2.0, 3.0}),
      ResourceModel({0.0}, {{0.3, 0.3}}, {2.0, 1.0}),
  };
  for (const auto& model : models) {
    FeasibilitySpace space(model);
    EXPECT_EQ(states_of(space), oracle::feasible_states(model.pool(), model.costs()));
    for (std::size_t i = 0; i < space.size(); ++i) EXPECT_EQ(space.index_of(space[i]), i);
  }
}

TEST(FeasibilitySpace, HalfCostHasSixStates) {
  FeasibilitySpace space(ResourceModel({1.0}, {{0.5, 0.5}}, {1.0, 1.0}));
  EXPECT_EQ(space.size(), 6u);
}

TEST(FeasibilitySpace, EmptyPoolHasOnlyIdleState) {
  DecisionSpace dspace{FeasibilitySpace(ResourceModel({0.0}, {{0.3, 0.3}}, {2.0, 1.0}))};
  EXPECT_EQ(dspace.space().size(), 1u);
  EXPECT_EQ(dspace.size(), 0u);
}

TEST(FeasibilitySpace, LargeModelSizes) {
  DecisionSpace dspace{FeasibilitySpace(large_model())};
  EXPECT_EQ(dspace.space().size(), 595u);
  EXPECT_EQ(dspace.size(), 1122u);
}

TEST(FeasibilitySpace, MembershipQueries) {
  FeasibilitySpace space(small_model());
  EXPECT_FALSE(space.index_of(SliceSet{{2, 2}}).has_value());
  EXPECT_FALSE(space.index_of(SliceSet{{-1, 0}}).has_value());
  std::vector<int> absent{4, 0};
  EXPECT_EQ(space.ordinal(absent), -1);
}

TEST(DecisionSpace, SmallModelListing) {
  auto dspace = small_space();
  std::vector<std::pair<std::vector<int>, std::size_t>> expected{
      {{0, 0}, 0}, {{0, 0}, 1}, {{0, 1}, 0}, {{0, 1}, 1}, {{0, 2}, 0}, {{0, 2}, 1},
      {{1, 0}, 0}, {{1, 0}, 1}, {{1, 1}, 0}, {{1, 1}, 1}, {{2, 0}, 0}, {{2, 0}, 1}};
  EXPECT_EQ(entries_of(dspace), expected);
}

TEST(DecisionSpace, MatchesBruteForce) {
  ResourceModel model({1.0, 2.0}, {{0.25, 0.4, 0.1}, {0.5, 0.3, 0.7}}, {1.0, 2.0, 3.0});
  DecisionSpace dspace{FeasibilitySpace(model)};
  EXPECT_EQ(entries_of(dspace), oracle::decision_entries(model.pool(), model.costs()));
}

TEST(DecisionSpace, BitLookupAndSuccessor) {
  auto dspace = small_space();
  EXPECT_EQ(dspace.bit_index(SliceSet{{1, 1}}, 1), 9u);
  EXPECT_FALSE(dspace.bit_index(SliceSet{{0, 3}}, 0).has_value());
  EXPECT_FALSE(dspace.bit_index(SliceSet{{2, 2}}, 0).has_value());
  for (std::size_t k = 0; k < dspace.size(); ++k) {
    const auto& e = dspace.entries()[k];
    EXPECT_EQ(dspace.bit_at(e.state, e.type), static_cast<std::ptrdiff_t>(k));
    auto next = apply_decision(dspace.entry_state(k), e.type, true);
    EXPECT_EQ(dspace.successor(e.state, e.type), static_cast<std::ptrdiff_t>(*dspace.space().index_of(next)));
  }
}

TEST(StrategyCode, ParseRoundTrip) {
  auto dspace = small_space();
  auto code = StrategyCode::parse(dspace, "100000000001");
  EXPECT_TRUE(code[0]);
  EXPECT_TRUE(code[11]);
  EXPECT_EQ(code.count(), 2u);
  EXPECT_EQ(code.to_string(), "100000000001");
  EXPECT_THROW(StrategyCode::parse(dspace, "1010"), std::invalid_argument);
  EXPECT_THROW(StrategyCode::parse(dspace, "10000000000x"), std::invalid_argument);
}

TEST(StrategyCode, CodebookIdentityIgnoresUtilities) {
  auto dspace = small_space();
  DecisionSpace reweighted{FeasibilitySpace(ResourceModel({1.0}, {{0.3, 0.3}}, {1.0, 5.0}))};
  EXPECT_EQ(dspace.fingerprint(), reweighted.fingerprint());
}

TEST(StrategyCode, RejectsForeignSpace) {
  auto dspace = small_space();
  // same number of bits, different codebook: one type with room for twelve slices
  DecisionSpace other{FeasibilitySpace(ResourceModel({1.0}, {{0.08}}, {1.0}))};
  StrategyCode code(other, true);
  EXPECT_EQ(code.size(), dspace.size());
  EXPECT_THROW(require_bound(code, dspace), std::invalid_argument);
  EXPECT_THROW(decide(code, dspace, SliceSet{{0, 0}}, 0), std::invalid_argument);
}

TEST(Decide, OutsideTheSpaceAlwaysDeclines) {
  auto dspace = small_space();
  StrategyCode all(dspace, true);
  EXPECT_TRUE(decide(all, dspace, SliceSet{{0, 2}}, 0));
  EXPECT_FALSE(decide(all, dspace, SliceSet{{0, 3}}, 0));
  EXPECT_FALSE(decide(all, dspace, SliceSet{{3, 0}}, 1));
  StrategyCode none(dspace, false);
  EXPECT_FALSE(decide(none, dspace, SliceSet{{0, 0}}, 0));
}

TEST(Baselines, SmallModelCodes) {
  auto dspace = small_space();
  EXPECT_EQ(baseline_strategy(Baseline::kGreedy, dspace).to_string(), "111111111111");
  EXPECT_EQ(baseline_strategy(Baseline::kConservative, dspace).to_string(), "010101010101");
  EXPECT_EQ(baseline_strategy(Baseline::kOpportunistic, dspace).to_string(), "101010101010");
}

TEST(Baselines, NamesRoundTrip) {
  for (auto kind : kAllBaselines) EXPECT_EQ(parse_baseline(to_string(kind)), kind);
  EXPECT_FALSE(parse_baseline("bogus").has_value());
}

TEST(Baselines, TwoTypeOnlyKindsNeedTwoTypes) {
  DecisionSpace three{FeasibilitySpace(ResourceModel({1.0}, {{0.5, 0.5, 0.5}}, {1.0, 1.0, 1.0}))};
  EXPECT_NO_THROW(baseline_strategy(Baseline::kGreedy, three));
  EXPECT_THROW(baseline_strategy(Baseline::kConservative, three), std::invalid_argument);
}

TEST(TextIo, ModelRoundTrip) {
  ResourceModel model({1.0, 2.5}, {{0.3, 0.1}, {0.7, 1.25}}, {2.0, 0.1});
  std::stringstream text;
  write_model(text, model);
  EXPECT_EQ(read_model(text), model);
}

TEST(TextIo, ListingFormat) {
  auto dspace = small_space();
  std::ostringstream out;
  write_decision_space(out, dspace);
  EXPECT_EQ(out.str().substr(0, 40), "decision_space 12\n0 [0,0,1]\n1 [0,0,2]\n2 ");
  EXPECT_EQ(format_slice_set(SliceSet{{2, 1}}), "[2,1]");
}
