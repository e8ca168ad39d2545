#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace museum {

/// Deterministic random stream. The engine is std::mt19937_64; the value
/// transforms below are written out by hand so draws are identical on every
/// standard library (std:: distributions are implementation-defined).
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::string_view name);

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform01();
  double uniform(double lo, double hi);
  /// Uniform integer in [lo, hi], unbiased.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  /// Standard normal via Box-Muller.
  double normal();
  double normal(double mean, double sigma) { return mean + sigma * normal(); }
  double exponential(double rate);
  double lognormal(double mu, double sigma);
  bool bernoulli(double p) { return uniform01() < p; }
  /// Index drawn proportionally to non-negative weights (at least one > 0).
  std::size_t weighted_index(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
};

/// Splits one run seed into independent named streams, so adding an entity
/// never perturbs the draws of another.
class RngFactory {
 public:
  explicit RngFactory(std::uint64_t seed) : seed_(seed) {}

  RngStream stream(std::string_view name) const { return RngStream(seed_, name); }
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
};

}  // namespace museum
