#include "sptq/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sptq {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// splitmix64 output function
std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Switchover between Poisson inversion and the normal approximation.
constexpr double kPoissonInversionLimit = 30.0;

}  // namespace

CounterRng::CounterRng(std::uint64_t k0, std::uint64_t k1, std::uint64_t k2) {
  std::uint64_t h = kGolden;
  h = mix(h ^ k0) + kGolden;
  h = mix(h ^ k1) + 0x632BE59BD9B4E019ULL;
  h = mix(h ^ k2);
  state_ = h;
}

std::uint64_t CounterRng::next_u64() {
  state_ += kGolden;
  return mix(state_);
}

double CounterRng::next_uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::next_normal() {
  // u1 in (0,1] so the log is finite.
  const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  const double u2 = next_uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t CounterRng::next_poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw std::invalid_argument("Poisson mean must be finite and non-negative");
  }
  if (mean == 0.0) return 0;
  if (mean < kPoissonInversionLimit) {
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= next_uniform();
    } while (p > limit);
    return k - 1;
  }
  const double draw = std::floor(mean + std::sqrt(mean) * next_normal() + 0.5);
  return draw <= 0.0 ? 0 : static_cast<std::uint64_t>(draw);
}

}  // namespace sptq
