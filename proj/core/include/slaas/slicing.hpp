#pragma once

// Resource/slice data model, the feasibility and free-decision spaces, and the
// strategy codebook that maps every admissible slicing strategy to a bitstring.
//
// Slice types are 0-based in the API. Text listings print them 1-based, so a
// decision entry reads "[s1,s2,n]" with n in 1..N.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace slaas {

using SliceType = std::size_t;

/// Slack allowed on every resource constraint so that sums such as
/// 0.3 + 0.3 + 0.3 still fit into a pool of 0.9.
inline constexpr double kFeasibilityTolerance = 1e-9;

/// Resource pool r (M entries), per-slice cost matrix C (M x N, row-major by
/// resource) and per-period utility u (N entries).
class ResourceModel {
 public:
  ResourceModel(std::vector<double> pool, std::vector<std::vector<double>> costs,
                std::vector<double> utilities);

  std::size_t resource_count() const noexcept { return pool_.size(); }
  std::size_t type_count() const noexcept { return utilities_.size(); }

  const std::vector<double>& pool() const noexcept { return pool_; }
  const std::vector<std::vector<double>>& costs() const noexcept { return costs_; }
  const std::vector<double>& utilities() const noexcept { return utilities_; }
  double cost(std::size_t resource, SliceType type) const { return costs_.at(resource).at(type); }

  /// a = C x s. Throws std::invalid_argument on a dimension mismatch.
  std::vector<double> assignment(std::span<const int> counts) const;
  /// C x s <= r + tolerance, componentwise. Negative counts never fit.
  bool fits(std::span<const int> counts) const;
  /// Largest count of a single type that fits into an otherwise empty pool.
  int type_bound(SliceType type) const;
  /// Overall utility sum_n s_n u_n.
  double utility(std::span<const int> counts) const;

  bool operator==(const ResourceModel&) const = default;

 private:
  std::vector<double> pool_;
  std::vector<std::vector<double>> costs_;
  std::vector<double> utilities_;
};

/// Active slice counts per type.
struct SliceSet {
  std::vector<int> counts;

  std::size_t size() const noexcept { return counts.size(); }
  int operator[](SliceType type) const { return counts[type]; }

  auto operator<=>(const SliceSet&) const = default;
};

std::vector<double> resource_assignment(const ResourceModel& model, const SliceSet& s);

/// Returns s unchanged on decline, s + e_type on accept.
SliceSet apply_decision(const SliceSet& s, SliceType type, bool accept);

/// All feasible slice sets, sorted lexicographically. The empty set has index 0.
class FeasibilitySpace {
 public:
  explicit FeasibilitySpace(const ResourceModel& model);

  const ResourceModel& model() const noexcept { return model_; }
  std::size_t size() const noexcept { return states_.size(); }
  std::size_t type_count() const noexcept { return model_.type_count(); }
  const std::vector<SliceSet>& states() const noexcept { return states_; }
  const SliceSet& operator[](std::size_t i) const { return states_[i]; }

  std::optional<std::size_t> index_of(const SliceSet& s) const;
  /// Ordinal of the given counts, or -1 when they are not a member.
  std::ptrdiff_t ordinal(std::span<const int> counts) const noexcept;

 private:
  ResourceModel model_;
  std::vector<SliceSet> states_;
  std::vector<int> bounds_;
  std::vector<std::size_t> strides_;
  // Dense mixed-radix lookup when the bounding box is small, hash map otherwise.
  std::vector<std::int32_t> dense_;
  std::unordered_map<std::string, std::size_t> sparse_;
};

FeasibilitySpace enumerate_feasibility_space(const ResourceModel& model);

struct DecisionEntry {
  std::size_t state;  // ordinal in the feasibility space
  SliceType type;

  auto operator<=>(const DecisionEntry&) const = default;
};

/// Pairs (s, n) with s and s + e_n both feasible, ordered by (state, type).
/// Entry k owns bit k of every strategy code built against this space.
class DecisionSpace {
 public:
  explicit DecisionSpace(FeasibilitySpace space);

  const FeasibilitySpace& space() const noexcept { return *space_; }
  const ResourceModel& model() const noexcept { return space_->model(); }
  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t type_count() const noexcept { return space_->type_count(); }
  const std::vector<DecisionEntry>& entries() const noexcept { return entries_; }
  SliceSet entry_state(std::size_t k) const { return (*space_)[entries_.at(k).state]; }

  std::optional<std::size_t> bit_index(const SliceSet& s, SliceType type) const;

  /// Bit owning (state ordinal, type), or -1 outside the space of free decision.
  std::ptrdiff_t bit_at(std::size_t state, SliceType type) const noexcept {
    return bit_table_[state * type_count() + type];
  }
  /// Ordinal of state + e_type, or -1 when that is infeasible.
  std::ptrdiff_t successor(std::size_t state, SliceType type) const noexcept {
    return successor_table_[state * type_count() + type];
  }

  /// Hash of the model and entry list; strategy codes carry it to detect stale codebooks.
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

 private:
  std::shared_ptr<const FeasibilitySpace> space_;
  std::vector<DecisionEntry> entries_;
  std::vector<std::ptrdiff_t> bit_table_;
  std::vector<std::ptrdiff_t> successor_table_;
  std::uint64_t fingerprint_ = 0;
};

DecisionSpace enumerate_decision_space(const FeasibilitySpace& space);

/// One slicing strategy: bit k is the decision for decision entry k (true = accept).
class StrategyCode {
 public:
  StrategyCode() = default;
  explicit StrategyCode(const DecisionSpace& dspace, bool fill = false);

  /// Parses a 0/1 string whose first character is entry 0.
  static StrategyCode parse(const DecisionSpace& dspace, std::string_view bits);

  std::size_t size() const noexcept { return bits_.size(); }
  bool operator[](std::size_t k) const { return bits_[k]; }
  void set(std::size_t k, bool value) { bits_.at(k) = value; }
  void flip(std::size_t k) { bits_.at(k).flip(); }
  std::size_t count() const noexcept;
  std::size_t hamming_distance(const StrategyCode& other) const;
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }
  bool bound_to(const DecisionSpace& dspace) const noexcept {
    return fingerprint_ == dspace.fingerprint() && bits_.size() == dspace.size();
  }

  std::string to_string() const;

  bool operator==(const StrategyCode&) const = default;
  auto operator<=>(const StrategyCode& other) const { return bits_ <=> other.bits_; }

 private:
  std::vector<bool> bits_;
  std::uint64_t fingerprint_ = 0;
};

/// Throws std::invalid_argument unless code was built for dspace.
void require_bound(const StrategyCode& code, const DecisionSpace& dspace);

/// Decision for a request of `type` arriving in state s. Always false outside D.
bool decide(const StrategyCode& code, const DecisionSpace& dspace, const SliceSet& s, SliceType type);

enum class Baseline { kGreedy, kConservative, kOpportunistic };

inline constexpr Baseline kAllBaselines[] = {Baseline::kGreedy, Baseline::kConservative,
                                             Baseline::kOpportunistic};

std::string_view to_string(Baseline kind) noexcept;
std::optional<Baseline> parse_baseline(std::string_view name) noexcept;

/// greedy accepts everything feasible; conservative only type 2; opportunistic
/// only type 1. The latter two need exactly two slice types.
StrategyCode baseline_strategy(Baseline kind, const DecisionSpace& dspace);

// Line-oriented listings used by golden tests and the `spaces` subcommand.
void write_model(std::ostream& out, const ResourceModel& model);
ResourceModel read_model(std::istream& in);
void write_feasibility_space(std::ostream& out, const FeasibilitySpace& space);
void write_decision_space(std::ostream& out, const DecisionSpace& dspace);
std::string format_slice_set(const SliceSet& s);

}  // namespace slaas
