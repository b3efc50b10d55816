#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "slaas/rng.hpp"
#include "slaas/traffic.hpp"

using namespace slaas;
using slaas::testing::request;
using slaas::testing::small_space;

TEST(Rng, SubstreamsAreDeterministicAndDistinct) {
  RngStream a(7), b(7);
  EXPECT_EQ(a.substream("x", 3)(), b.substream("x", 3)());
  EXPECT_NE(a.substream("x", 3)(), a.substream("x", 4)());
  EXPECT_NE(RngStream(7)(), RngStream(8)());
  EXPECT_EQ(a.substream("replicate", 2).id(), "root/replicate:2");
}

TEST(Sampling, ZeroRateNeverArrives) {
  RngStream rng(1);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(sample_arrivals(rng, 0.0), 0);
}

TEST(Sampling, PoissonMomentsMatchRate) {
  RngStream rng(11);
  const int draws = 100000;
  double sum = 0, sq = 0;
  for (int i = 0; i < draws; ++i) {
    double k = sample_arrivals(rng, 2.0);
    sum += k;
    sq += k * k;
  }
  double mean = sum / draws;
  double var = sq / draws - mean * mean;
  EXPECT_GE(mean, 1.96);
  EXPECT_LE(mean, 2.04);
  EXPECT_NEAR(var, 2.0, 0.06);
}

TEST(Sampling, LifetimeMatchesCeilingOfExponential) {
  RngStream rng(5);
  const int draws = 100000;
  double sum = 0;
  int ones = 0, below_one = 0;
  for (int i = 0; i < draws; ++i) {
    int l = sample_lifetime(rng, 10.0);
    sum += l;
    if (l < 1) ++below_one;
    if (sample_lifetime(rng, 2.0) == 1) ++ones;
  }
  EXPECT_EQ(below_one, 0);
  EXPECT_NEAR(sum / draws, oracle::ceil_exponential_mean(10.0), 0.1);
  EXPECT_NEAR(static_cast<double>(ones) / draws, oracle::ceil_exponential_p1(2.0), 0.01);
}

TEST(Sampling, RejectsInvalidParameters) {
  RngStream rng(1);
  EXPECT_THROW(sample_arrivals(rng, -1.0), std::invalid_argument);
  EXPECT_THROW(sample_lifetime(rng, 0.0), std::invalid_argument);
  EXPECT_THROW((ScenarioParams{{1.0}, {1.0}}.validate(2)), std::invalid_argument);
}

TEST(Trace, SilentTypeNeverAppears) {
  RngStream rng(3);
  auto trace = build_request_trace(rng, slaas::testing::kOnlyFirst, 500);
  std::size_t total = 0;
  for (const auto& period : trace.periods) {
    for (const auto& e : period) {
      EXPECT_EQ(e.type, 0u);
      ++total;
    }
  }
  EXPECT_GT(total, 0u);
}

TEST(Trace, OrderFieldsArePermutationIndices) {
  RngStream rng(3);
  auto trace = build_request_trace(rng, slaas::testing::kSteady, 50);
  for (const auto& period : trace.periods) {
    for (std::size_t i = 0; i < period.size(); ++i) EXPECT_EQ(period[i].order, static_cast<int>(i));
  }
}

TEST(Trace, SameSeedSameTrace) {
  RngStream a(9), b(9);
  auto ta = build_request_trace(a, slaas::testing::kSteady, 100);
  auto tb = build_request_trace(b, slaas::testing::kSteady, 100);
  EXPECT_EQ(ta.periods, tb.periods);
}

TEST(Trace, SingleSegmentScheduleMatchesPlainTrace) {
  RngStream a(4), b(4);
  auto plain = build_request_trace(a, slaas::testing::kSteady, 30);
  ScenarioSegment segment{slaas::testing::kSteady, 5};
  auto scheduled = build_schedule_trace(b, std::span(&segment, 1), 6);
  EXPECT_EQ(plain.periods, scheduled.periods);
}

TEST(Trace, CsvRoundTripKeepsEmptyPeriods) {
  RequestTrace trace;
  trace.periods = {{request(0, 3)}, {}, {request(1, 1), RequestEvent{0, 2, 1}}, {}};
  std::stringstream text;
  write_trace(text, trace);
  auto back = read_trace(text);
  EXPECT_EQ(back.periods, trace.periods);
}

TEST(Step, AcceptsIntoFeasibleState) {
  auto dspace = small_space();
  StrategyCode greedy(dspace, true);
  SimState state(2);
  std::vector<RequestEvent> events{request(0, 5), request(0, 5), request(1, 5)};
  EXPECT_DOUBLE_EQ(step_period(state, events, greedy, dspace), 5.0);
  EXPECT_EQ(state.counts(), (SliceSet{{2, 1}}));
}

TEST(Step, FullPoolDeclinesEvenGreedy) {
  auto dspace = small_space();
  StrategyCode greedy(dspace, true);
  SimState state(2);
  for (int i = 0; i < 3; ++i) state.admit(1, 4);
  std::vector<RequestEvent> events{request(0, 2)};
  EXPECT_DOUBLE_EQ(step_period(state, events, greedy, dspace), 3.0);
  EXPECT_EQ(state.counts(), (SliceSet{{0, 3}}));
}

TEST(Step, ExpiryHappensBeforeRequests) {
  auto dspace = small_space();
  StrategyCode greedy(dspace, true);
  SimState state(2);
  state.admit(0, 1);
  state.admit(0, 2);
  state.admit(0, 2);
  std::vector<RequestEvent> events{request(1, 1)};
  // the lifetime-1 slice leaves first, so the type-2 request fits
  EXPECT_DOUBLE_EQ(step_period(state, events, greedy, dspace), 5.0);
}

TEST(Step, LifetimeAccounting) {
  auto dspace = small_space();
  StrategyCode greedy(dspace, true);
  SimState state(2);
  std::vector<RequestEvent> first{request(0, 3)};
  std::vector<RequestEvent> none;
  std::vector<double> seen;
  seen.push_back(step_period(state, first, greedy, dspace));
  for (int i = 0; i < 3; ++i) seen.push_back(step_period(state, none, greedy, dspace));
  EXPECT_EQ(seen, (std::vector<double>{2.0, 2.0, 2.0, 0.0}));
  EXPECT_TRUE(state.empty());
}

TEST(Step, DeclinesWhenBitCleared) {
  auto dspace = small_space();
  auto code = StrategyCode::parse(dspace, "011111111111");
  SimState state(2);
  std::vector<RequestEvent> events{request(0, 2), request(1, 2)};
  EXPECT_DOUBLE_EQ(step_period(state, events, code, dspace), 1.0);
}

TEST(Step, AdmitRejectsZeroLifetime) {
  SimState state(2);
  EXPECT_THROW(state.admit(0, 0), std::invalid_argument);
}

TEST(Horizon, MatchesNaiveSimulator) {
  auto dspace = small_space();
  const auto& model = dspace.model();
  RngStream rng(21);
  auto trace = build_request_trace(rng, slaas::testing::kSteady, 200);
  for (const char* bits : {"111111111111", "010101010101", "111110111010", "000000000000"}) {
    auto code = StrategyCode::parse(dspace, bits);
    auto got = run_horizon(code, trace.periods, SimState(2), dspace);
    EXPECT_EQ(got.utilities, oracle::simulate(model.pool(), model.costs(), model.utilities(), bits, trace)) << bits;
  }
}

TEST(Horizon, AverageUtilityAgreesWithRunHorizon) {
  auto dspace = small_space();
  RngStream rng(2);
  auto trace = build_request_trace(rng, slaas::testing::kShortLived, 60);
  StrategyCode greedy(dspace, true);
  auto full = run_horizon(greedy, trace.periods, SimState(2), dspace);
  SimState state(2);
  double avg = average_utility(greedy, trace.periods, state, dspace);
  double expected = 0;
  for (double u : full.utilities) expected += u;
  EXPECT_DOUBLE_EQ(avg, expected / 60.0);
  EXPECT_EQ(state, full.end);
}
