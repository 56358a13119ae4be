#pragma once

#include <cstdint>
#include <optional>

#include "interp_lab/analytic.hpp"

namespace interp {

/// The space X_theta = [X0, X1]_theta of a couple.
struct InterpolationRequest {
  InterpolationRequest(Couple c, double t);

  Couple couple;
  double theta;
};

/// 1/p = (1 - theta)/p0 + theta/p1, with 1/inf = 0.
Exponent calderon_exponent(double theta, Exponent p0, Exponent p1);

/// Closed form of [l^p0(w0), l^p1(w1)]_theta for weighted sequence
/// couples: l^p with multipliers a0^(1-theta) a1^theta, where a_j are the
/// multipliers of the endpoint spaces. theta in {0, 1} returns the
/// endpoint space itself.
WeightedSpace interpolated_space(const InterpolationRequest& req);

double closed_form_norm(const InterpolationRequest& req, const CVector& x);

enum class NormMode { kClosed, kNumeric, kBoth };

struct NumericNormOptions {
  MinimizeOptions minimize;
  /// Log-spaced t values for the K-functional lower bound.
  int lower_bound_points = 25;
  SumNormOptions k_options;
};

struct InterpolatedNorm {
  NormEstimate estimate;
  std::optional<double> closed_form;
  /// numeric upper minus closed form (kBoth only).
  double discrepancy = 0.0;
  SolverStatus status;
};

/// kClosed: exact value as both bounds. kNumeric: lower from
/// sup_t K(t,x) / ((1-theta) + theta t) (harmonic-measure split of phi on
/// the two circles), upper from minimize_family. kBoth: numeric bracket
/// plus the closed form and the discrepancy.
InterpolatedNorm interpolated_norm(const InterpolationRequest& req, const CVector& x, NormMode mode,
                                   const NumericNormOptions& options = {});

struct InequalityReport {
  double interpolated = 0.0;  ///< ||x||_theta
  double geometric = 0.0;     ///< ||x||_0^(1-theta) ||x||_1^theta
  double implied_c = 0.0;
};

InequalityReport interpolation_inequality_check(const InterpolationRequest& req, const CVector& x);

struct LionsPeetreReport {
  Decomposition decomposition;
  double interpolated = 0.0;
  double constant0 = 0.0;  ///< ||x0||_0 / (t^theta ||x||_theta)
  double constant1 = 0.0;  ///< ||x1||_1 / (t^(theta-1) ||x||_theta)
};

/// K-functional minimizer at parameter t and the two constants it implies.
LionsPeetreReport lions_peetre_decompose(const InterpolationRequest& req, const CVector& x, double t,
                                         const SumNormOptions& options = {});

/// Finite representation x = sum_{|k| <= K} x_k.
class PeetreRepresentation {
 public:
  PeetreRepresentation(Eigen::Index dim, int half_width);
  explicit PeetreRepresentation(CMatrix terms);  // column K + k holds x_k

  [[nodiscard]] int half_width() const { return half_width_; }
  [[nodiscard]] Eigen::Index dim() const { return terms_.rows(); }
  [[nodiscard]] const CMatrix& terms() const { return terms_; }
  [[nodiscard]] CVector term(int k) const { return terms_.col(k + half_width_); }
  void set_term(int k, const CVector& v) { terms_.col(k + half_width_) = v; }
  [[nodiscard]] CVector reconstruct() const { return terms_.rowwise().sum(); }

 private:
  int half_width_;
  CMatrix terms_;
};

/// Places coordinate i at the integer k nearest log(a0_i / a1_i), where the
/// two reweighted endpoint costs balance; clipped to |k| <= half_width.
PeetreRepresentation dyadic_threshold_representation(const InterpolationRequest& req,
                                                     const CVector& x, int half_width);

/// Brackets max_j sup_{|lambda|<=1} ||sum_k lambda_k e^{(j-theta)k} x_k||_j
/// for the given representation (the outer infimum is not searched).
NormEstimate peetre_norm_bracket(const InterpolationRequest& req, const PeetreRepresentation& rep,
                                 int phase_samples = 256, std::uint64_t seed = 0);

}  // namespace interp
