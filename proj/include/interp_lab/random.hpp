#pragma once

#include <cstdint>
#include <random>

#include "interp_lab/types.hpp"

namespace interp {

/// Counter-based seed derivation: instance `index` of a run seeded with
/// `master` always gets the same stream, regardless of evaluation order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  Complex complex_normal() {
    const double re = normal();
    return {re, normal()};
  }
  /// Independent standard normal real and imaginary parts.
  CVector complex_vector(Eigen::Index n);
  /// exp(i * alpha) with alpha uniform on [0, 2 pi).
  Complex unit_phase();

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace interp
