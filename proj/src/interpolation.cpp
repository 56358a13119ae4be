#include "interp_lab/interpolation.hpp"

#include <algorithm>
#include <cmath>

namespace interp {

InterpolationRequest::InterpolationRequest(Couple c, double t) : couple(std::move(c)), theta(t) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw DomainError("InterpolationRequest: theta must lie in [0,1]");
}

Exponent calderon_exponent(double theta, Exponent p0, Exponent p1) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw DomainError("calderon_exponent: theta must lie in [0,1]");
  if (theta == 0.0) return p0;
  if (theta == 1.0) return p1;
  if (p0 == p1) return p0;
  return Exponent::from_reciprocal((1.0 - theta) * p0.reciprocal() + theta * p1.reciprocal());
}

WeightedSpace interpolated_space(const InterpolationRequest& req) {
  const WeightedSpace& s0 = req.couple.space0();
  const WeightedSpace& s1 = req.couple.space1();
  if (req.theta == 0.0) return s0;
  if (req.theta == 1.0) return s1;
  const Exponent p = calderon_exponent(req.theta, s0.exponent(), s1.exponent());
  const RVector a = s0.multipliers().array().pow(1.0 - req.theta) *
                    s1.multipliers().array().pow(req.theta);
  return WeightedSpace::from_multipliers(p, a);
}

double closed_form_norm(const InterpolationRequest& req, const CVector& x) {
  require_dim(x.size(), req.couple.dim(), "closed_form_norm");
  return interpolated_space(req).norm(x);
}

InterpolatedNorm interpolated_norm(const InterpolationRequest& req, const CVector& x, NormMode mode,
                                   const NumericNormOptions& options) {
  require_dim(x.size(), req.couple.dim(), "interpolated_norm");
  InterpolatedNorm out;
  const bool endpoint = req.theta == 0.0 || req.theta == 1.0;
  if (mode != NormMode::kNumeric || endpoint) {
    const double exact = closed_form_norm(req, x);
    out.closed_form = exact;
    out.estimate = {exact, exact};
    if (mode == NormMode::kClosed || endpoint) return out;
  }
  if (x.cwiseAbs().maxCoeff() == 0.0) {
    out.estimate = {0.0, 0.0};
    return out;
  }

  const FamilyMinimum upper = minimize_family(req.couple, req.theta, x, options.minimize);
  double lower = 0.0;
  const int points = std::max(2, options.lower_bound_points);
  for (int i = 0; i < points; ++i) {
    const double t = std::pow(10.0, -6.0 + 12.0 * i / (points - 1));
    const Decomposition k = k_functional(req.couple, x, t, options.k_options);
    lower = std::max(lower, k.lower_bound / ((1.0 - req.theta) + req.theta * t));
  }
  out.estimate = {std::min(lower, upper.value), upper.value};
  out.status = upper.status;
  if (out.closed_form) out.discrepancy = upper.value - *out.closed_form;
  return out;
}

InequalityReport interpolation_inequality_check(const InterpolationRequest& req, const CVector& x) {
  InequalityReport r;
  r.interpolated = closed_form_norm(req, x);
  r.geometric = std::pow(req.couple.space0().norm(x), 1.0 - req.theta) *
                std::pow(req.couple.space1().norm(x), req.theta);
  r.implied_c = r.geometric > 0.0 ? r.interpolated / r.geometric : 0.0;
  return r;
}

LionsPeetreReport lions_peetre_decompose(const InterpolationRequest& req, const CVector& x, double t,
                                         const SumNormOptions& options) {
  LionsPeetreReport r;
  r.decomposition = k_functional(req.couple, x, t, options);
  r.interpolated = closed_form_norm(req, x);
  if (r.interpolated > 0.0) {
    r.constant0 = req.couple.space0().norm(r.decomposition.part0) /
                  (std::pow(t, req.theta) * r.interpolated);
    r.constant1 = req.couple.space1().norm(r.decomposition.part1) /
                  (std::pow(t, req.theta - 1.0) * r.interpolated);
  }
  return r;
}

PeetreRepresentation::PeetreRepresentation(Eigen::Index dim, int half_width)
    : half_width_(half_width), terms_(CMatrix::Zero(dim, 2 * half_width + 1)) {
  if (half_width < 0 || dim < 1) throw std::invalid_argument("PeetreRepresentation: bad shape");
}

PeetreRepresentation::PeetreRepresentation(CMatrix terms) : terms_(std::move(terms)) {
  if (terms_.cols() % 2 != 1 || terms_.rows() < 1) {
    throw std::invalid_argument("PeetreRepresentation: need 2K+1 columns");
  }
  half_width_ = static_cast<int>(terms_.cols() / 2);
}

PeetreRepresentation dyadic_threshold_representation(const InterpolationRequest& req,
                                                     const CVector& x, int half_width) {
  require_dim(x.size(), req.couple.dim(), "dyadic_threshold_representation");
  PeetreRepresentation rep(x.size(), half_width);
  const RVector& a0 = req.couple.space0().multipliers();
  const RVector& a1 = req.couple.space1().multipliers();
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    int k = static_cast<int>(std::lround(std::log(a0[i] / a1[i])));
    k = std::clamp(k, -half_width, half_width);
    CVector term = rep.term(k);
    term[i] += x[i];
    rep.set_term(k, term);
  }
  return rep;
}

NormEstimate peetre_norm_bracket(const InterpolationRequest& req, const PeetreRepresentation& rep,
                                 int phase_samples, std::uint64_t seed) {
  require_dim(rep.dim(), req.couple.dim(), "peetre_norm_bracket");
  const int K = rep.half_width();
  Eigen::MatrixXd factors(2, 2 * K + 1);
  for (int k = -K; k <= K; ++k) {
    for (int j = 0; j < 2; ++j) factors(j, k + K) = std::exp((j - req.theta) * k);
  }
  return unconditional_bracket(rep.terms(), factors, req.couple, phase_samples, seed);
}

}  // namespace interp
