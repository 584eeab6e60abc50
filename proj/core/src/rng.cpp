#include "sbmr/rng.hpp"

#include <cmath>

namespace sbmr {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the xored pair.
  std::uint64_t z = seed ^ (stream + 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::next_below(std::uint64_t bound) {
  // Rejection sampling on the top bits; unbiased for every bound.
  const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

std::uint64_t Rng::next_poisson(double lambda) {
  std::uint64_t total = 0;
  // Poisson(x + y) = Poisson(x) + Poisson(y) for independent summands,
  // so large rates are split into chunks where e^-chunk stays normal.
  const double kChunk = 500.0;
  while (lambda > kChunk) {
    total += next_poisson_knuth(kChunk);
    lambda -= kChunk;
  }
  return total + next_poisson_knuth(lambda);

}

std::uint64_t Rng::next_poisson_knuth(double lambda) {
  if (lambda <= 0.0) return 0;
  const double threshold = std::exp(-lambda);
  std::uint64_t k = 0;
  double product = next_double();
  while (product > threshold) {
    ++k;
    product *= next_double();
  }
  return k;
}

double Rng::next_normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  double u1, u2;
  do {
    u1 = next_double();
  } while (u1 <= 0.0);
  u2 = next_double();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  cached_normal_ = radius * std::sin(angle);
  has_cached_normal_ = true;
  return radius * std::cos(angle);
}

}  // namespace sbmr
