#pragma once

#include <span>
#include <vector>

#include "interp_lab/types.hpp"

namespace interp {

/// C^dim with the weighted p-norm
///   (sum_i w_i |x_i|^p)^(1/p)   for p < inf,
///   max_i w_i |x_i|             for p = inf.
class WeightedSpace {
 public:
  WeightedSpace(Exponent p, RVector weights);
  /// Unweighted l^p on C^dim.
  static WeightedSpace lp(Eigen::Index dim, Exponent p);
  /// Space with norm ||a x||_p; weights a^p may overflow, only a is checked.
  static WeightedSpace from_multipliers(Exponent p, RVector a);

  [[nodiscard]] Eigen::Index dim() const { return weights_.size(); }
  [[nodiscard]] Exponent exponent() const { return p_; }
  [[nodiscard]] const RVector& weights() const { return weights_; }

  /// Per-coordinate multipliers a with norm(x) = || a .* x ||_p, i.e.
  /// a = w^(1/p) (a = w when p = inf).
  [[nodiscard]] const RVector& multipliers() const { return multipliers_; }

  [[nodiscard]] double norm(const CVector& x) const;
  /// Norm of the dual space under the pairing Re sum conj(y_i) x_i.
  [[nodiscard]] double dual_norm(const CVector& y) const;

  /// Smooth upper surrogate of the norm (|x_i| -> sqrt(|x_i|^2 + eta^2),
  /// max -> log-sum-exp at temperature eta). Writes the real gradient,
  /// packed as d/dRe + i d/dIm, into `grad` when non-null.
  double smoothed_norm(const CVector& x, double eta, CVector* grad) const;

  friend bool operator==(const WeightedSpace&, const WeightedSpace&) = default;

 private:
  Exponent p_;
  RVector weights_;
  RVector multipliers_;
};

/// Norm of the identity map from `from` to `to` (same coordinates). Exact
/// for weighted sequence spaces.
double identity_norm(const WeightedSpace& from, const WeightedSpace& to);

/// A compatible couple (X0, X1) sharing the coordinate space C^dim.
class Couple {
 public:
  Couple(WeightedSpace space0, WeightedSpace space1);

  [[nodiscard]] const WeightedSpace& space0() const { return space0_; }
  [[nodiscard]] const WeightedSpace& space1() const { return space1_; }
  [[nodiscard]] const WeightedSpace& space(int j) const { return j == 0 ? space0_ : space1_; }
  [[nodiscard]] Eigen::Index dim() const { return space0_.dim(); }

 private:
  WeightedSpace space0_;
  WeightedSpace space1_;
};

/// x = part0 + part1 with its objective ||part0||_0 + t ||part1||_1.
struct Decomposition {
  CVector part0;
  CVector part1;
  double objective = 0.0;
  /// Certified lower bound on the infimum (from a dual feasible point).
  double lower_bound = 0.0;
  /// || part0 + part1 - x ||_2, recorded with the result.
  double residual = 0.0;
  SolverStatus status;
};

struct SumNormOptions {
  double tolerance = 1e-6;
  int max_iterations = 400;
};

double norm(const WeightedSpace& space, const CVector& x);
double intersection_norm(const Couple& couple, const CVector& x);

/// K(t, x) = inf { ||x0||_0 + t ||x1||_1 : x = x0 + x1 }, certified by a
/// duality gap. The value returned is the objective of the returned
/// decomposition, hence always an upper bound.
Decomposition k_functional(const Couple& couple, const CVector& x, double t,
                           const SumNormOptions& options = {});

/// Norm of X0 + X1, i.e. K(1, x).
Decomposition sum_norm(const Couple& couple, const CVector& x, const SumNormOptions& options = {});

}  // namespace interp
