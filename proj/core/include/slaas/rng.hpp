#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace slaas {

/// Labelled random stream. Equal (seed, id) pairs produce equal sequences, and
/// substreams are derived from the label path only, so the order in which
/// substreams are created never matters.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed, std::string id = "root");

  RngStream substream(std::string_view label) const;
  RngStream substream(std::string_view label, std::uint64_t index) const;

  std::uint64_t seed() const noexcept { return seed_; }
  const std::string& id() const noexcept { return id_; }

  static constexpr result_type min() noexcept { return std::mt19937_64::min(); }
  static constexpr result_type max() noexcept { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform double in [0, 1).
  double uniform() { return std::generate_canonical<double, 53>(engine_); }
  bool bernoulli(double p) { return uniform() < p; }
  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_); }

 private:
  std::uint64_t seed_;
  std::string id_;
  std::mt19937_64 engine_;
};

}  // namespace slaas
