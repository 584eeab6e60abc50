#pragma once

#include <cstdint>
#include <random>

namespace sbmr {

/// Mixes a base seed with stream identifiers (trial index, pair index, ...)
/// so parallel workers can derive disjoint, reproducible RNG streams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Seeded random source with hand-rolled transforms.
///
/// std::mt19937_64's output sequence is fixed by the standard, but the
/// standard *distributions* are not; every transform below is implemented
/// here so that identical seeds give identical draws on every platform.
class Rng {
 public:
  /// The raw seed is scrambled before engine construction: mt19937_64
  /// streams started from nearby seeds are correlated otherwise.
  explicit Rng(std::uint64_t seed) : engine_(mix_seed(seed, 0x5bd1e995u)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t next_below(std::uint64_t bound);

  bool next_bernoulli(double p) { return next_double() < p; }

  /// Exact Poisson sample via Knuth's product method, chunked so the
  /// running product never underflows for large rates.
  std::uint64_t next_poisson(double lambda);

  /// Standard normal via Box-Muller (both values used alternately).
  double next_normal();

 private:
  std::uint64_t next_poisson_knuth(double lambda);

  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace sbmr
