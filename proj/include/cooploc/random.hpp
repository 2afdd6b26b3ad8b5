#pragma once

#include <cstdint>
#include <random>

namespace cooploc {

/// Seedable random stream used everywhere noise is drawn.
///
/// The engine is std::mt19937_64 (fully specified by the standard) and the
/// uniform/gaussian mappings are implemented here rather than with
/// std::*_distribution, whose output sequences differ between standard
/// library implementations. Gaussian variates use the basic Box-Muller
/// transform with the second variate cached, so a fixed seed reproduces the
/// same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform();

  /// Uniform in [lo, hi). Requires lo <= hi.
  double uniform(double lo, double hi);

  /// Normal variate with the given mean and standard deviation.
  double gaussian(double mean, double sigma);

  std::uint64_t next_u64() { return engine_(); }

  /// Derives a decorrelated seed for an independent stream (splitmix64
  /// finalizer applied to seed and stream id).
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace cooploc
