#pragma once

// Tenant request traces and period-by-period operation of a sliced network
// under a fixed strategy.
//
// Within one operations period: surviving slices age by one period and the
// expired ones release their resources, then the period's requests are
// handled in order, then utility is accounted on the resulting slice set.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "slaas/rng.hpp"
#include "slaas/slicing.hpp"

namespace slaas {

/// Mean arrivals per period (Poisson) and mean lifetime in periods
/// (exponential, rounded up) for each slice type.
struct ScenarioParams {
  std::vector<double> lambda;
  std::vector<double> mu;

  std::size_t type_count() const noexcept { return lambda.size(); }
  /// Throws std::invalid_argument unless both vectors have `types` valid entries.
  void validate(std::size_t types) const;

  bool operator==(const ScenarioParams&) const = default;
};

/// A stationary stretch of a piecewise-constant scenario schedule.
struct ScenarioSegment {
  ScenarioParams params;
  std::size_t generations = 0;

  bool operator==(const ScenarioSegment&) const = default;
};

struct RequestEvent {
  SliceType type = 0;
  int lifetime = 1;  // periods, drawn at arrival
  int order = 0;     // position within its period

  bool operator==(const RequestEvent&) const = default;
};

using PeriodEvents = std::vector<RequestEvent>;

struct RequestTrace {
  std::vector<PeriodEvents> periods;

  std::size_t horizon() const noexcept { return periods.size(); }
  std::span<const PeriodEvents> window(std::size_t first, std::size_t count) const {
    return std::span<const PeriodEvents>(periods).subspan(first, count);
  }

  bool operator==(const RequestTrace&) const = default;
};

/// Remaining lifetimes of every active slice, grouped by type.
class SimState {
 public:
  SimState() = default;
  explicit SimState(std::size_t types) : remaining_(types), counts_(types, 0) {}

  std::size_t type_count() const noexcept { return counts_.size(); }
  SliceSet counts() const { return SliceSet{counts_}; }
  std::span<const int> count_view() const noexcept { return counts_; }
  const std::vector<int>& remaining(SliceType type) const { return remaining_.at(type); }
  bool empty() const noexcept;

  void admit(SliceType type, int lifetime);
  /// Ages every slice by one period and drops those that reach zero.
  void age();
  void clear() noexcept;

  bool operator==(const SimState&) const = default;

 private:
  std::vector<std::vector<int>> remaining_;
  std::vector<int> counts_;
};

int sample_arrivals(RngStream& rng, double lambda);
int sample_lifetime(RngStream& rng, double mu);

/// Appends one period of requests: per-type Poisson counts, lifetimes drawn per
/// request, then a uniform shuffle.
PeriodEvents sample_period(RngStream& rng, const ScenarioParams& scenario);

RequestTrace build_request_trace(RngStream& rng, const ScenarioParams& scenario, std::size_t horizon);
/// Concatenates segments of generations * term_length periods drawn from one stream.
/// A single-segment schedule reproduces build_request_trace exactly.
RequestTrace build_schedule_trace(RngStream& rng, std::span<const ScenarioSegment> schedule,
                                  std::size_t term_length);

/// Runs one operations period in place and returns its overall utility.
double step_period(SimState& state, std::span<const RequestEvent> events, const StrategyCode& code,
                   const DecisionSpace& dspace);

struct HorizonResult {
  std::vector<double> utilities;
  SimState end;
};

HorizonResult run_horizon(const StrategyCode& code, std::span<const PeriodEvents> periods, SimState start,
                          const DecisionSpace& dspace);

/// Mean per-period utility over the given periods; state is advanced in place.
double average_utility(const StrategyCode& code, std::span<const PeriodEvents> periods, SimState& state,
                       const DecisionSpace& dspace);

/// "period,type,lifetime,order" rows, period and type 1-based, preceded by a
/// "# horizon H" line so that empty trailing periods survive a round trip.
void write_trace(std::ostream& out, const RequestTrace& trace);
RequestTrace read_trace(std::istream& in);

}  // namespace slaas
