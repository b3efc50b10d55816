#pragma once

// Exhaustive evaluation of every strategy in a small codebook. All strategies
// are scored on the same Monte Carlo replicate traces.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <vector>

#include "slaas/rng.hpp"
#include "slaas/slicing.hpp"
#include "slaas/traffic.hpp"

namespace slaas {

inline constexpr std::size_t kDefaultGuardBits = 24;
inline constexpr std::size_t kDefaultSearchHorizon = 120;

/// Raised when a codebook is too large to enumerate.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Code k in ascending binary order: entry 0 is the most significant bit.
StrategyCode strategy_from_index(const DecisionSpace& dspace, std::uint64_t index);

/// All 2^|D| codes of a decision space in ascending binary order.
class StrategyRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = StrategyCode;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(const DecisionSpace* dspace, std::uint64_t index) : dspace_(dspace), index_(index) {}
    StrategyCode operator*() const { return strategy_from_index(*dspace_, index_); }
    iterator& operator++() {
      ++index_;
      return *this;
    }
    iterator operator++(int) {
      auto copy = *this;
      ++index_;
      return copy;
    }
    bool operator==(const iterator& other) const { return index_ == other.index_; }

   private:
    const DecisionSpace* dspace_ = nullptr;
    std::uint64_t index_ = 0;
  };

  StrategyRange(const DecisionSpace& dspace, std::size_t guard_bits = kDefaultGuardBits);

  std::uint64_t size() const noexcept { return count_; }
  iterator begin() const { return iterator(dspace_, 0); }
  iterator end() const { return iterator(dspace_, count_); }

 private:
  const DecisionSpace* dspace_;
  std::uint64_t count_;
};

inline StrategyRange enumerate_all_strategies(const DecisionSpace& dspace, std::size_t guard_bits = kDefaultGuardBits) {
  return StrategyRange(dspace, guard_bits);
}

/// Replicate r draws its trace from rng.substream("replicate", r).substream("trace").
std::vector<RequestTrace> replicate_traces(const ScenarioParams& scenario, std::size_t horizon,
                                           std::size_t replicates, const RngStream& rng);

/// Mean over traces of the horizon-average utility, each from an idle pool.
double mean_utility(const StrategyCode& code, std::span<const RequestTrace> traces, const DecisionSpace& dspace);

double evaluate_strategy_mc(const StrategyCode& code, const DecisionSpace& dspace, const ScenarioParams& scenario,
                            std::size_t horizon, std::size_t replicates, const RngStream& rng);

struct SearchOptions {
  std::size_t horizon = kDefaultSearchHorizon;
  std::size_t replicates = 500;
  std::size_t guard_bits = kDefaultGuardBits;
  std::size_t jobs = 1;
  bool keep_table = false;
};

struct SearchResult {
  StrategyCode best_code;
  double best_utility = 0.0;
  std::vector<double> utilities;  // indexed by binary code value; filled when keep_table is set
};

/// Argmax over all codes, lowest binary code on ties.
SearchResult find_global_optimum(const DecisionSpace& dspace, const ScenarioParams& scenario,
                                 const SearchOptions& options, const RngStream& rng);

/// "code,mean_utility" per strategy, ascending binary order.
void write_search_table_csv(std::ostream& out, const DecisionSpace& dspace, const SearchResult& result);

}  // namespace slaas
