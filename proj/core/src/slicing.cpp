#include "slaas/slicing.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace slaas {
namespace {

constexpr std::size_t kDenseLimit = std::size_t{1} << 22;

std::uint64_t fnv1a(std::uint64_t hash, std::uint64_t value) {
  for (int i = 0; i < 8; ++i) {
    hash ^= (value >> (8 * i)) & 0xffu;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::string key_of(std::span<const int> counts) {
  return std::string(reinterpret_cast<const char*>(counts.data()), counts.size_bytes());
}

void require_finite_nonnegative(double v, const char* what) {
  if (!std::isfinite(v) || v < 0.0) {
    throw std::invalid_argument(std::string(what) + " must be finite and >= 0");
  }
}

}  // namespace

ResourceModel::ResourceModel(std::vector<double> pool, std::vector<std::vector<double>> costs,
                             std::vector<double> utilities)
    : pool_(std::move(pool)), costs_(std::move(costs)), utilities_(std::move(utilities)) {
  if (pool_.empty()) throw std::invalid_argument("resource pool needs at least one resource");
  if (utilities_.empty()) throw std::invalid_argument("model needs at least one slice type");
  if (costs_.size() != pool_.size()) {
    throw std::invalid_argument("cost matrix must have one row per resource");
  }
  for (double r : pool_) require_finite_nonnegative(r, "pool entry");
  for (double u : utilities_) require_finite_nonnegative(u, "utility");
  for (const auto& row : costs_) {
    if (row.size() != utilities_.size()) {
      throw std::invalid_argument("cost matrix must have one column per slice type");
    }
    for (double c : row) require_finite_nonnegative(c, "cost entry");
  }
  for (SliceType n = 0; n < type_count(); ++n) {
    bool positive = std::any_of(costs_.begin(), costs_.end(), [n](const auto& row) { return row[n] > 0.0; });
    if (!positive) {
      throw std::invalid_argument("slice type " + std::to_string(n + 1) +
                                  " has no positive cost; feasibility space would be infinite");
    }
  }
}

std::vector<double> ResourceModel::assignment(std::span<const int> counts) const {
  if (counts.size() != type_count()) {
    throw std::invalid_argument("slice set has " + std::to_string(counts.size()) +
                                " entries, model has " + std::to_string(type_count()) + " types");
  }
  std::vector<double> a(resource_count(), 0.0);
  for (std::size_t m = 0; m < resource_count(); ++m) {
    for (SliceType n = 0; n < type_count(); ++n) a[m] += costs_[m][n] * counts[n];
  }
  return a;
}

bool ResourceModel::fits(std::span<const int> counts) const {
  if (std::any_of(counts.begin(), counts.end(), [](int c) { return c < 0; })) return false;
  auto a = assignment(counts);
  for (std::size_t m = 0; m < resource_count(); ++m) {
    if (a[m] > pool_[m] + kFeasibilityTolerance) return false;
  }
  return true;
}

int ResourceModel::type_bound(SliceType type) const {
  double bound = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < resource_count(); ++m) {
    double c = costs_[m].at(type);
    if (c > 0.0) bound = std::min(bound, std::floor((pool_[m] + kFeasibilityTolerance) / c));
  }
  return static_cast<int>(bound);
}

double ResourceModel::utility(std::span<const int> counts) const {
  double total = 0.0;
  for (SliceType n = 0; n < type_count(); ++n) total += counts[n] * utilities_[n];
  return total;
}

std::vector<double> resource_assignment(const ResourceModel& model, const SliceSet& s) {
  return model.assignment(s.counts);
}

SliceSet apply_decision(const SliceSet& s, SliceType type, bool accept) {
  if (type >= s.size()) throw std::out_of_range("slice type out of range");
  SliceSet next = s;
  if (accept) ++next.counts[type];
  return next;
}

// ---------------------------------------------------------------------------

FeasibilitySpace::FeasibilitySpace(const ResourceModel& model) : model_(model) {
  const std::size_t types = model_.type_count();
  bounds_.resize(types);
  strides_.resize(types);
  std::size_t box = 1;
  for (SliceType n = types; n-- > 0;) {
    bounds_[n] = model_.type_bound(n);
    strides_[n] = box;
    box = (box > kDenseLimit) ? box : box * static_cast<std::size_t>(bounds_[n] + 1);
  }

  // Depth-first over counts in lexicographic order; each level stops at the
  // first count that no longer fits since costs are nonnegative.
  std::vector<int> counts(types, 0);
  auto recurse = [&](auto&& self, SliceType level) -> void {
    if (level == types) {
      states_.push_back(SliceSet{counts});
      return;
    }
    for (int c = 0; c <= bounds_[level]; ++c) {
      counts[level] = c;
      std::fill(counts.begin() + static_cast<std::ptrdiff_t>(level) + 1, counts.end(), 0);
      if (!model_.fits(counts)) break;
      self(self, level + 1);
    }
    counts[level] = 0;
  };
  recurse(recurse, 0);

  if (box <= kDenseLimit) {
    dense_.assign(box, -1);
    for (std::size_t i = 0; i < states_.size(); ++i) {
      std::size_t key = 0;
      for (SliceType n = 0; n < types; ++n) key += strides_[n] * states_[i].counts[n];
      dense_[key] = static_cast<std::int32_t>(i);
    }
  } else {
    for (std::size_t i = 0; i < states_.size(); ++i) sparse_.emplace(key_of(states_[i].counts), i);
  }
}

std::ptrdiff_t FeasibilitySpace::ordinal(std::span<const int> counts) const noexcept {
  if (counts.size() != bounds_.size()) return -1;
  if (!dense_.empty()) {
    std::size_t key = 0;
    for (std::size_t n = 0; n < counts.size(); ++n) {
      if (counts[n] < 0 || counts[n] > bounds_[n]) return -1;
      key += strides_[n] * static_cast<std::size_t>(counts[n]);
    }
    return dense_[key];
  }
  auto it = sparse_.find(key_of(counts));
  return it == sparse_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

std::optional<std::size_t> FeasibilitySpace::index_of(const SliceSet& s) const {
  auto i = ordinal(s.counts);
  if (i < 0) return std::nullopt;
  return static_cast<std::size_t>(i);
}

FeasibilitySpace enumerate_feasibility_space(const ResourceModel& model) { return FeasibilitySpace(model); }

// ---------------------------------------------------------------------------

DecisionSpace::DecisionSpace(FeasibilitySpace space)
    : space_(std::make_shared<const FeasibilitySpace>(std::move(space))) {
  const std::size_t types = space_->type_count();
  bit_table_.assign(space_->size() * types, -1);
  successor_table_.assign(space_->size() * types, -1);

  std::uint64_t hash = 0xcbf29ce484222325ull;
  const auto& model = space_->model();
  hash = fnv1a(hash, model.resource_count());
  hash = fnv1a(hash, types);
  for (double r : model.pool()) hash = fnv1a(hash, std::hash<double>{}(r));
  for (const auto& row : model.costs()) {
    for (double c : row) hash = fnv1a(hash, std::hash<double>{}(c));
  }

  std::vector<int> next;
  for (std::size_t i = 0; i < space_->size(); ++i) {
    for (SliceType n = 0; n < types; ++n) {
      next = (*space_)[i].counts;
      ++next[n];
      auto j = space_->ordinal(next);
      if (j < 0) continue;
      successor_table_[i * types + n] = j;
      bit_table_[i * types + n] = static_cast<std::ptrdiff_t>(entries_.size());
      entries_.push_back(DecisionEntry{i, n});
      hash = fnv1a(fnv1a(hash, i), n);
    }
  }
  fingerprint_ = fnv1a(hash, entries_.size());
}

std::optional<std::size_t> DecisionSpace::bit_index(const SliceSet& s, SliceType type) const {
  if (type >= type_count()) return std::nullopt;
  auto i = space_->ordinal(s.counts);
  if (i < 0) return std::nullopt;
  auto k = bit_at(static_cast<std::size_t>(i), type);
  if (k < 0) return std::nullopt;
  return static_cast<std::size_t>(k);
}

DecisionSpace enumerate_decision_space(const FeasibilitySpace& space) { return DecisionSpace(space); }

// ---------------------------------------------------------------------------

StrategyCode::StrategyCode(const DecisionSpace& dspace, bool fill)
    : bits_(dspace.size(), fill), fingerprint_(dspace.fingerprint()) {}

StrategyCode StrategyCode::parse(const DecisionSpace& dspace, std::string_view bits) {
  if (bits.size() != dspace.size()) {
    throw std::invalid_argument("strategy code has " + std::to_string(bits.size()) +
                                " bits, decision space has " + std::to_string(dspace.size()));
  }
  StrategyCode code(dspace);
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] != '0' && bits[k] != '1') {
      throw std::invalid_argument("strategy code may only contain '0' and '1'");
    }
    code.bits_[k] = bits[k] == '1';
  }
  return code;
}

std::size_t StrategyCode::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

std::size_t StrategyCode::hamming_distance(const StrategyCode& other) const {
  if (other.size() != size()) throw std::invalid_argument("hamming distance of unequal lengths");
  std::size_t d = 0;
  for (std::size_t k = 0; k < size(); ++k) d += bits_[k] != other.bits_[k];
  return d;
}

std::string StrategyCode::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t k = 0; k < bits_.size(); ++k) {
    if (bits_[k]) s[k] = '1';
  }
  return s;
}

void require_bound(const StrategyCode& code, const DecisionSpace& dspace) {
  if (code.size() != dspace.size()) {
    throw std::invalid_argument("strategy code length " + std::to_string(code.size()) +
                                " does not match decision space size " + std::to_string(dspace.size()));
  }
  if (code.fingerprint() != dspace.fingerprint()) {
    throw std::invalid_argument("strategy code was built for a different codebook");
  }
}

bool decide(const StrategyCode& code, const DecisionSpace& dspace, const SliceSet& s, SliceType type) {
  require_bound(code, dspace);
  auto k = dspace.bit_index(s, type);
  return k && code[*k];
}

std::string_view to_string(Baseline kind) noexcept {
  switch (kind) {
    case Baseline::kGreedy: return "greedy";
    case Baseline::kConservative: return "conservative";
    case Baseline::kOpportunistic: return "opportunistic";
  }
  return "unknown";
}

std::optional<Baseline> parse_baseline(std::string_view name) noexcept {
  for (Baseline b : kAllBaselines) {
    if (to_string(b) == name) return b;
  }
  return std::nullopt;
}

StrategyCode baseline_strategy(Baseline kind, const DecisionSpace& dspace) {
  if (kind == Baseline::kGreedy) return StrategyCode(dspace, true);
  if (dspace.type_count() != 2) {
    throw std::invalid_argument(std::string(to_string(kind)) + " baseline is defined for two slice types only");
  }
  const SliceType accepted = kind == Baseline::kConservative ? 1 : 0;
  StrategyCode code(dspace);
  for (std::size_t k = 0; k < dspace.size(); ++k) code.set(k, dspace.entries()[k].type == accepted);
  return code;
}

// ---------------------------------------------------------------------------

std::string format_slice_set(const SliceSet& s) {
  std::string out = "[";
  for (std::size_t n = 0; n < s.size(); ++n) {
    if (n) out += ',';
    out += std::to_string(s.counts[n]);
  }
  return out + "]";
}

void write_model(std::ostream& out, const ResourceModel& model) {
  auto number = [](double v) {
    char buffer[32];
    auto end = std::to_chars(buffer, buffer + sizeof buffer, v).ptr;
    return std::string(buffer, end);
  };
  out << "model " << model.resource_count() << ' ' << model.type_count() << '\n';
  out << "pool";
  for (double r : model.pool()) out << ' ' << number(r);
  out << '\n';
  for (const auto& row : model.costs()) {
    out << "cost";
    for (double c : row) out << ' ' << number(c);
    out << '\n';
  }
  out << "utility";
  for (double u : model.utilities()) out << ' ' << number(u);
  out << '\n';
}

ResourceModel read_model(std::istream& in) {
  auto expect = [&](std::string_view tag) {
    std::string word;
    if (!(in >> word) || word != tag) {
      throw std::invalid_argument("model listing: expected '" + std::string(tag) + "'");
    }
  };
  auto numbers = [&](std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) {
      if (!(in >> x)) throw std::invalid_argument("model listing: expected a number");
    }
    return v;
  };
  expect("model");
  std::size_t m = 0, n = 0;
  if (!(in >> m >> n)) throw std::invalid_argument("model listing: expected dimensions");
  expect("pool");
  auto pool = numbers(m);
  std::vector<std::vector<double>> costs;
  for (std::size_t i = 0; i < m; ++i) {
    expect("cost");
    costs.push_back(numbers(n));
  }
  expect("utility");
  return ResourceModel(std::move(pool), std::move(costs), numbers(n));
}

void write_feasibility_space(std::ostream& out, const FeasibilitySpace& space) {
  out << "feasibility_space " << space.size() << '\n';
  for (std::size_t i = 0; i < space.size(); ++i) out << i << ' ' << format_slice_set(space[i]) << '\n';
}

void write_decision_space(std::ostream& out, const DecisionSpace& dspace) {
  out << "decision_space " << dspace.size() << '\n';
  for (std::size_t k = 0; k < dspace.size(); ++k) {
    auto s = dspace.entry_state(k);
    s.counts.push_back(static_cast<int>(dspace.entries()[k].type + 1));
    out << k << ' ' << format_slice_set(s) << '\n';
  }
}

}  // namespace slaas
