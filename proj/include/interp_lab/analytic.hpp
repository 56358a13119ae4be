#pragma once

#include <cstdint>
#include <optional>

#include "interp_lab/spaces.hpp"

namespace interp {

/// phi(z) = sum_{|k| <= M} c_k z^k with vector coefficients, analytic on
/// the annulus 1 < |z| < e and continuous up to its boundary.
class LaurentFamily {
 public:
  /// Zero family of the given degree.
  LaurentFamily(Eigen::Index dim, int degree);
  /// `coefficients` is dim x (2M+1); column M + k holds c_k.
  explicit LaurentFamily(CMatrix coefficients);

  static LaurentFamily constant(const CVector& x);

  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] Eigen::Index dim() const { return coeffs_.rows(); }
  [[nodiscard]] const CMatrix& coefficients() const { return coeffs_; }

  [[nodiscard]] CVector coefficient(int k) const;
  void set_coefficient(int k, const CVector& value);

  /// Exact evaluation; throws DomainError unless 1 <= |z| <= e.
  [[nodiscard]] CVector operator()(Complex z) const;
  /// Evaluation without the annulus check (boundary sampling, diagnostics).
  [[nodiscard]] CVector evaluate_unchecked(Complex z) const;

  /// Same family viewed at a larger degree (zero padded).
  [[nodiscard]] LaurentFamily padded(int degree) const;
  [[nodiscard]] LaurentFamily scaled(double factor) const;

 private:
  int degree_;
  CMatrix coeffs_;
};

/// Equispaced nodes t_j = 2 pi j / N on each boundary circle.
struct BoundaryGrid {
  int samples = 256;
};

/// Values of phi on |z| = e^radius_log at the grid nodes (dim x N).
CMatrix boundary_values(const LaurentFamily& phi, double radius_log, const BoundaryGrid& grid);

/// max over grid nodes of ||phi(e^{it})||_0 and ||phi(e^{1+it})||_1.
/// Requires N >= 2M + 1.
double family_norm(const LaurentFamily& phi, const Couple& couple, const BoundaryGrid& grid);

struct MinimizeOptions {
  int degree = 32;
  BoundaryGrid grid{256};
  /// Total L-BFGS iteration budget across the temperature schedule.
  int budget = 6000;
  /// Relative movement tolerance of the final stage.
  double movement_tolerance = 1e-9;
};

struct FamilyMinimum {
  LaurentFamily family;
  /// family_norm of `family`, an upper bound on the interpolation norm.
  double value = 0.0;
  SolverStatus status;
};

/// Minimizes family_norm over degree-M families with phi(e^theta) = x. The
/// constraint is eliminated through c_0, so every iterate is feasible. A
/// warm start (of degree <= M) is evaluated as a candidate, which makes the
/// value non-increasing along a chain of increasing degrees.
FamilyMinimum minimize_family(const Couple& couple, double theta, const CVector& x,
                              const MinimizeOptions& options = {},
                              const std::optional<LaurentFamily>& warm_start = std::nullopt);

struct ThreeLinesReport {
  double left = 0.0;        ///< ||phi(e^theta)||_theta
  double right = 0.0;       ///< geometric mean of the boundary averages
  double implied_c = 0.0;   ///< left / right (0 when both vanish)
  bool anomaly = false;     ///< right == 0 while left > 0
};

/// Compares the interpolated norm of phi(e^theta) with the boundary
/// averages [mean ||phi||_0]^(1-theta) [mean ||phi||_1]^theta (trapezoid
/// rule on the grid). Uses the closed-form interpolated norm.
ThreeLinesReport three_lines_check(const LaurentFamily& phi, const Couple& couple, double theta,
                                   const BoundaryGrid& grid);

enum class Membership { kMember, kNonmember, kUndecided };

struct MembershipBracket {
  double lower = 0.0;
  double upper = 0.0;
  Membership verdict = Membership::kMember;
};

const char* to_string(Membership m);

/// Brackets sup over |lambda_k| <= 1 of max_j ||sum_k lambda_k e^{jk} c_k||_j.
MembershipBracket mho_membership(const LaurentFamily& phi, const Couple& couple,
                                 int phase_samples, std::uint64_t seed);

/// Shared bracket for sup_{|lambda_k|<=1} max_j ||sum_k lambda_k f_j(k) x_k||_j:
/// `terms` holds x_k as columns, `factors(j, col)` the real scale f_j(k).
/// upper: entrywise absolute sums; lower: sampled phases.
NormEstimate unconditional_bracket(const CMatrix& terms, const Eigen::MatrixXd& factors,
                                   const Couple& couple, int phase_samples, std::uint64_t seed);

}  // namespace interp
