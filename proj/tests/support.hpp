#pragma once

// Seeded generators for the property tests. Each test owns its Rng so the
// draws do not depend on test order.

#include <cstdint>
#include <random>

#include "otto/cycle.hpp"

namespace otto::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  // Log-uniform on [lo, hi], lo > 0.
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  bool coin() { return std::bernoulli_distribution(0.5)(engine_); }

  SpinParams spin_params(double scale = 3.0) {
    return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale),
            uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale),
            uniform(-scale, scale)};
  }

  Spectrum spectrum(double scale = 4.0) {
    return Spectrum(uniform(-scale, scale), uniform(0.0, scale), uniform(0.0, scale));
  }

  // Cycle with tc <= th. One draw in eight shares a spectrum or the bath
  // temperature so the degenerate corners are covered too.
  CycleSpec cycle(double scale = 4.0) {
    CycleSpec c;
    c.spec_i = spectrum(scale);
    c.spec_f = spectrum(scale);
    c.tc = log_uniform(0.05, 5.0);
    c.th = c.tc * log_uniform(1.0, 10.0);
    const int corner = std::uniform_int_distribution<int>(0, 15)(engine_);
    if (corner == 0) c.spec_f = c.spec_i;
    if (corner == 1) c.th = c.tc;
    return c;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace otto::testing
