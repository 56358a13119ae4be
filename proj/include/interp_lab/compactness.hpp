#pragma once

#include <cstdint>
#include <vector>

#include "interp_lab/interpolation.hpp"
#include "interp_lab/polynomials.hpp"

namespace interp {

/// Coordinate projection onto the first n of dim basis vectors.
CMatrix truncation_projection(int n, int dim);

/// Finite-dimensional stand-in for a compact polynomial: output channel i
/// of `base` is scaled by sigma_i, sigma nonincreasing and >= 0.
class CompactProxy {
 public:
  CompactProxy(HomPolynomial base, RVector sigma);

  /// Random base with unit-norm channels and sigma_i = ratio^i.
  static CompactProxy geometric(int degree, int domain_dim, int codomain_dim, double ratio, Rng& rng);

  [[nodiscard]] const HomPolynomial& base() const { return base_; }
  [[nodiscard]] const RVector& sigma() const { return sigma_; }
  [[nodiscard]] const HomPolynomial& polynomial() const { return scaled_; }
  [[nodiscard]] CVector operator()(const CVector& x) const { return scaled_(x); }
  /// P - pi_n P: channels below n zeroed.
  [[nodiscard]] HomPolynomial residual(int n) const;

 private:
  HomPolynomial base_;
  RVector sigma_;
  HomPolynomial scaled_;
};

struct TruncationRow {
  int n = 0;
  double lhs = 0.0;  ///< ascent lower bound on ||P - pi_n P||_theta
  double rhs = 0.0;  ///< [(1 + K1) ||P||_1]^theta (m^m/m!) ||P - pi_n P||_0^(1-theta)
  double margin = 0.0;
  bool holds = false;
};

struct TruncationChainReport {
  std::vector<TruncationRow> rows;
  double k1 = 1.0;
  double p1_upper = 0.0;
  bool heuristic = false;
  bool inequality_holds = false;
  bool rhs_monotone = false;
  double lhs_decay = 0.0;  ///< lhs(last) / lhs(first)
  double rhs_decay = 0.0;  ///< rhs(last) / rhs(first)
};

TruncationChainReport truncation_chain_check(const CompactProxy& p, const Couple& x, const Couple& y,
                                             double theta, const std::vector<int>& n_grid,
                                             const AscentOptions& options, std::uint64_t seed);

struct EpsilonNet {
  std::vector<CVector> centers;
  std::vector<std::size_t> center_indices;  ///< positions in the sample
  double radius = 0.0;
  WeightedSpace space;

  [[nodiscard]] std::size_t size() const { return centers.size(); }
  /// Distance from `point` to the nearest center.
  [[nodiscard]] double distance(const CVector& point) const;
};

/// Greedy farthest-point net: the first center is sample 0, then the sample
/// farthest from all centers (lowest index on ties) until every sample is
/// within eps.
EpsilonNet build_net(const std::vector<CVector>& points, double eps, const WeightedSpace& space);

struct LaterTransferOptions {
  int net_samples = 2000;
  int test_samples = 500;
  int constant_samples = 50;  ///< x per t when measuring C'
  double safety = 2.0;
  std::uint64_t seed = 0;
  AscentOptions ascent;
  SumNormOptions k_options;
};

struct LaterTransferReport {
  double c_prime_measured = 0.0;
  double c_prime_used = 0.0;
  double polar_norm = 0.0;  ///< certified ||P~|| on X0
  double t = 1.0;           ///< from the inflated constant
  double t_uninflated = 1.0;
  std::size_t net_size = 0;
  int samples = 0;
  int covered = 0;
  double coverage_rate = 0.0;
  double worst_distance = 0.0;
  int tail_within = 0;               ///< ||P(x) - P(x0)|| <= eps/2 at the chosen t
  int tail_within_uninflated = 0;
  bool solver_converged = true;
};

/// The x couple must be nested (||.||_0 <= ||.||_1) so that the unit ball
/// of X_theta sits inside that of X_0.
LaterTransferReport theorem_later_transfer_check(const CompactProxy& p, const Couple& x, const WeightedSpace& y,
                                                 double theta, double eps, const LaterTransferOptions& options);

/// Singular values of D_b L D_a^{-1}, the matrix of L between weighted l^2.
RVector singular_values(const CMatrix& l, const WeightedSpace& from, const WeightedSpace& to);

}  // namespace interp
