#pragma once

// Counter-based random stream. Every sweep point derives its own stream
// from (seed, oracle kind, point index), so results do not depend on the
// order grid points are evaluated in, and identical configs give
// byte-identical output on any platform. Poisson sampling is inversion
// for small means and a normal approximation above; both draw only from
// this stream so the determinism contract holds.

#include <cstdint>

namespace sptq {

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t k0, std::uint64_t k1 = 0, std::uint64_t k2 = 0);

  std::uint64_t next_u64();

  /// Uniform in [0, 1).
  double next_uniform();

  /// Standard normal via Box-Muller (two uniforms per draw).
  double next_normal();

  /// Poisson with the given mean. Throws std::invalid_argument for a
  /// negative or non-finite mean.
  std::uint64_t next_poisson(double mean);

 private:
  std::uint64_t state_;
};

}  // namespace sptq
