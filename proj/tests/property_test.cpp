#include <gtest/gtest.h>

#include "properties.hpp"

namespace props = slaas::properties;

TEST(Properties, FeasibilityNeverViolated) {
  auto o = props::feasibility_fuzz(10000, 1);
  EXPECT_TRUE(o.passed) << o.detail;
}

TEST(Properties, CodecRoundTrip) {
  auto o = props::codec_roundtrip(500, 1);
  EXPECT_TRUE(o.passed) << o.detail;
}

TEST(Properties, GeneticOperators) {
  auto o = props::genetic_operators(2000, 1);
  EXPECT_TRUE(o.passed) << o.detail;
}

TEST(Properties, SamplerMoments) {
  auto o = props::sampler_moments(100000, 1);
  EXPECT_TRUE(o.passed) << o.detail;
}

TEST(Properties, CampaignDeterminism) {
  auto o = props::campaign_determinism(1);
  EXPECT_TRUE(o.passed) << o.detail;
}
