#pragma once

#include <vector>

#include "slaas/slicing.hpp"
#include "slaas/traffic.hpp"

namespace slaas::testing {

inline ResourceModel small_model() { return ResourceModel({1.0}, {{0.3, 0.3}}, {2.0, 1.0}); }
inline ResourceModel large_model() { return ResourceModel({1.0}, {{0.03, 0.03}}, {0.2, 0.1}); }

inline DecisionSpace small_space() { return DecisionSpace(FeasibilitySpace(small_model())); }

inline const ScenarioParams kSteady{{0.5, 2.0}, {2.0, 10.0}};
inline const ScenarioParams kShortLived{{0.3, 1.0}, {2.0, 3.0}};
inline const ScenarioParams kOnlyFirst{{1.0, 0.0}, {2.0, 5.0}};

inline RequestEvent request(SliceType type, int lifetime) { return RequestEvent{type, lifetime, 0}; }

}  // namespace slaas::testing
