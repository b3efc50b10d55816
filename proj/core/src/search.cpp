#include "slaas/search.hpp"

#include <ostream>
#include <string>

#include "number_format.hpp"
#include "slaas/parallel.hpp"

namespace slaas {

StrategyCode strategy_from_index(const DecisionSpace& dspace, std::uint64_t index) {
  StrategyCode code(dspace);
  const std::size_t length = code.size();
  for (std::size_t k = 0; k < length && k < 64; ++k) code.set(length - 1 - k, (index >> k) & 1u);
  return code;
}

StrategyRange::StrategyRange(const DecisionSpace& dspace, std::size_t guard_bits) : dspace_(&dspace) {
  if (guard_bits > 62) guard_bits = 62;
  if (dspace.size() > guard_bits) {
    throw GuardError("full search over 2^" + std::to_string(dspace.size()) +
                     " strategies exceeds the guard of 2^" + std::to_string(guard_bits));
  }
  count_ = std::uint64_t{1} << dspace.size();
}

std::vector<RequestTrace> replicate_traces(const ScenarioParams& scenario, std::size_t horizon,
                                           std::size_t replicates, const RngStream& rng) {
  std::vector<RequestTrace> traces;
  traces.reserve(replicates);
  for (std::size_t r = 0; r < replicates; ++r) {
    auto trace_rng = rng.substream("replicate", r).substream("trace");
    traces.push_back(build_request_trace(trace_rng, scenario, horizon));
  }
  return traces;
}

double mean_utility(const StrategyCode& code, std::span<const RequestTrace> traces, const DecisionSpace& dspace) {
  if (traces.empty()) throw std::invalid_argument("at least one replicate is required");
  SimState state(dspace.type_count());
  double total = 0.0;
  for (const auto& trace : traces) {
    state.clear();
    total += average_utility(code, trace.periods, state, dspace);
  }
  return total / static_cast<double>(traces.size());
}

double evaluate_strategy_mc(const StrategyCode& code, const DecisionSpace& dspace, const ScenarioParams& scenario,
                            std::size_t horizon, std::size_t replicates, const RngStream& rng) {
  require_bound(code, dspace);
  if (horizon == 0 || replicates == 0) throw std::invalid_argument("horizon and replicates must be positive");
  auto traces = replicate_traces(scenario, horizon, replicates, rng);
  return mean_utility(code, traces, dspace);
}

SearchResult find_global_optimum(const DecisionSpace& dspace, const ScenarioParams& scenario,
                                 const SearchOptions& options, const RngStream& rng) {
  StrategyRange range(dspace, options.guard_bits);
  if (options.horizon == 0 || options.replicates == 0) {
    throw std::invalid_argument("horizon and replicates must be positive");
  }
  scenario.validate(dspace.type_count());
  auto traces = replicate_traces(scenario, options.horizon, options.replicates, rng);

  std::vector<double> utilities(range.size());
  parallel_for(utilities.size(), options.jobs, [&](std::size_t i) {
    utilities[i] = mean_utility(strategy_from_index(dspace, i), traces, dspace);
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < utilities.size(); ++i) {
    if (utilities[i] > utilities[best]) best = i;
  }
  SearchResult result{strategy_from_index(dspace, best), utilities[best], {}};
  if (options.keep_table) result.utilities = std::move(utilities);
  return result;
}

void write_search_table_csv(std::ostream& out, const DecisionSpace& dspace, const SearchResult& result) {
  out << "code,mean_utility\n";
  for (std::size_t i = 0; i < result.utilities.size(); ++i) {
    out << strategy_from_index(dspace, i).to_string() << ',' << detail::format_number(result.utilities[i]) << '\n';
  }
}

}  // namespace slaas
