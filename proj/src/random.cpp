#include "interp_lab/random.hpp"

#include <numbers>

namespace interp {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 finalizer over (master, index)
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

CVector Rng::complex_vector(Eigen::Index n) {
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = complex_normal();
  return v;
}

Complex Rng::unit_phase() { return std::polar(1.0, uniform(0.0, 2.0 * std::numbers::pi)); }

}  // namespace interp
