#include "slaas/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace slaas {

void ScenarioParams::validate(std::size_t types) const {
  if (lambda.size() != types || mu.size() != types) {
    throw std::invalid_argument("scenario needs " + std::to_string(types) + " arrival rates and lifetimes");
  }
  for (double l : lambda) {
    if (!std::isfinite(l) || l < 0.0) throw std::invalid_argument("arrival rate must be finite and >= 0");
  }
  for (double m : mu) {
    if (!std::isfinite(m) || m <= 0.0) throw std::invalid_argument("mean lifetime must be finite and > 0");
  }
}

bool SimState::empty() const noexcept {
  return std::all_of(counts_.begin(), counts_.end(), [](int c) { return c == 0; });
}

void SimState::admit(SliceType type, int lifetime) {
  if (lifetime < 1) throw std::invalid_argument("slice lifetime must be at least one period");
  remaining_.at(type).push_back(lifetime);
  ++counts_[type];
}

void SimState::age() {
  for (std::size_t n = 0; n < remaining_.size(); ++n) {
    auto& slices = remaining_[n];
    for (int& l : slices) --l;
    std::erase_if(slices, [](int l) { return l <= 0; });
    counts_[n] = static_cast<int>(slices.size());
  }
}

void SimState::clear() noexcept {
  for (auto& slices : remaining_) slices.clear();
  std::fill(counts_.begin(), counts_.end(), 0);
}

int sample_arrivals(RngStream& rng, double lambda) {
  if (!std::isfinite(lambda) || lambda < 0.0) throw std::invalid_argument("arrival rate must be finite and >= 0");
  if (lambda == 0.0) return 0;
  return std::poisson_distribution<int>(lambda)(rng);
}

int sample_lifetime(RngStream& rng, double mu) {
  if (!std::isfinite(mu) || mu <= 0.0) throw std::invalid_argument("mean lifetime must be finite and > 0");
  double x = std::exponential_distribution<double>(1.0 / mu)(rng);
  return std::max(1, static_cast<int>(std::ceil(x)));
}

PeriodEvents sample_period(RngStream& rng, const ScenarioParams& scenario) {
  PeriodEvents events;
  for (SliceType n = 0; n < scenario.type_count(); ++n) {
    int arrivals = sample_arrivals(rng, scenario.lambda[n]);
    for (int k = 0; k < arrivals; ++k) events.push_back(RequestEvent{n, sample_lifetime(rng, scenario.mu[n]), 0});
  }
  std::shuffle(events.begin(), events.end(), rng);
  for (std::size_t i = 0; i < events.size(); ++i) events[i].order = static_cast<int>(i);
  return events;
}

RequestTrace build_request_trace(RngStream& rng, const ScenarioParams& scenario, std::size_t horizon) {
  ScenarioSegment segment{scenario, horizon};
  return build_schedule_trace(rng, std::span(&segment, 1), 1);
}

RequestTrace build_schedule_trace(RngStream& rng, std::span<const ScenarioSegment> schedule,
                                  std::size_t term_length) {
  if (schedule.empty()) throw std::invalid_argument("scenario schedule is empty");
  if (term_length == 0) throw std::invalid_argument("term length must be positive");
  RequestTrace trace;
  for (const auto& segment : schedule) {
    segment.params.validate(schedule.front().params.type_count());
    if (segment.generations == 0) throw std::invalid_argument("schedule segment has no periods");
    for (std::size_t t = 0; t < segment.generations * term_length; ++t) {
      trace.periods.push_back(sample_period(rng, segment.params));
    }
  }
  return trace;
}

namespace {

void require_runnable(const SimState& state, const StrategyCode& code, const DecisionSpace& dspace) {
  require_bound(code, dspace);
  if (state.type_count() != dspace.type_count()) {
    throw std::invalid_argument("simulation state has the wrong number of slice types");
  }
  if (dspace.space().ordinal(state.count_view()) < 0) throw std::invalid_argument("simulation state is not feasible");
}

// Preconditions checked by require_runnable; every step keeps the state feasible.
double run_period(SimState& state, std::span<const RequestEvent> events, const StrategyCode& code,
                  const DecisionSpace& dspace) {
  state.age();
  auto current = static_cast<std::size_t>(dspace.space().ordinal(state.count_view()));
  for (const auto& event : events) {
    if (event.type >= dspace.type_count()) throw std::invalid_argument("request for an unknown slice type");
    auto bit = dspace.bit_at(current, event.type);
    if (bit < 0 || !code[static_cast<std::size_t>(bit)]) continue;
    state.admit(event.type, event.lifetime);
    current = static_cast<std::size_t>(dspace.successor(current, event.type));
  }
  return dspace.model().utility(state.count_view());
}

}  // namespace

double step_period(SimState& state, std::span<const RequestEvent> events, const StrategyCode& code,
                   const DecisionSpace& dspace) {
  require_runnable(state, code, dspace);
  return run_period(state, events, code, dspace);
}

HorizonResult run_horizon(const StrategyCode& code, std::span<const PeriodEvents> periods, SimState start,
                          const DecisionSpace& dspace) {
  if (periods.empty()) throw std::invalid_argument("trace has no periods");
  HorizonResult result{{}, std::move(start)};
  result.utilities.reserve(periods.size());
  for (const auto& events : periods) result.utilities.push_back(step_period(result.end, events, code, dspace));
  return result;
}

double average_utility(const StrategyCode& code, std::span<const PeriodEvents> periods, SimState& state,
                       const DecisionSpace& dspace) {
  if (periods.empty()) throw std::invalid_argument("trace has no periods");
  require_runnable(state, code, dspace);
  double total = 0.0;
  for (const auto& events : periods) total += run_period(state, events, code, dspace);
  return total / static_cast<double>(periods.size());
}

void write_trace(std::ostream& out, const RequestTrace& trace) {
  out << "# horizon " << trace.horizon() << '\n';
  out << "period,type,lifetime,order\n";
  for (std::size_t t = 0; t < trace.horizon(); ++t) {
    for (const auto& e : trace.periods[t]) {
      out << t + 1 << ',' << e.type + 1 << ',' << e.lifetime << ',' << e.order << '\n';
    }
  }
}

RequestTrace read_trace(std::istream& in) {
  std::string line;
  std::size_t horizon = 0;
  if (!std::getline(in, line) || line.rfind("# horizon ", 0) != 0) {
    throw std::invalid_argument("trace: missing '# horizon' line");
  }
  horizon = std::stoul(line.substr(10));
  if (!std::getline(in, line) || line != "period,type,lifetime,order") {
    throw std::invalid_argument("trace: missing header row");
  }
  RequestTrace trace;
  trace.periods.resize(horizon);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::size_t period = 0, type = 0;
    int lifetime = 0, order = 0;
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(row >> period >> c1 >> type >> c2 >> lifetime >> c3 >> order) || c1 != ',' || c2 != ',' || c3 != ',' ||
        period < 1 || period > horizon || type < 1 || lifetime < 1) {
      throw std::invalid_argument("trace: malformed row '" + line + "'");
    }
    trace.periods[period - 1].push_back(RequestEvent{type - 1, lifetime, order});
  }
  return trace;
}

}  // namespace slaas
