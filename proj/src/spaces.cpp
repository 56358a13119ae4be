#include "interp_lab/spaces.hpp"

#include <algorithm>
#include <cmath>

#include "interp_lab/optimize.hpp"

namespace interp {

namespace {

double lp_norm(const RVector& v, Exponent p) {
  if (v.size() == 0) return 0.0;
  if (p.is_infinite()) return v.cwiseAbs().maxCoeff();
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return scale * std::pow((v.cwiseAbs() / scale).array().pow(p.value()).sum(), 1.0 / p.value());
}

}  // namespace

WeightedSpace::WeightedSpace(Exponent p, RVector weights)
    : p_(p), weights_(std::move(weights)) {
  if (weights_.size() < 1) throw std::invalid_argument("WeightedSpace: dim must be >= 1");
  if ((weights_.array() <= 0.0).any() || !weights_.allFinite()) {
    throw std::invalid_argument("WeightedSpace: weights must be finite and > 0");
  }
  multipliers_ = p_.is_infinite() ? weights_ : RVector(weights_.array().pow(1.0 / p_.value()));
}

WeightedSpace WeightedSpace::lp(Eigen::Index dim, Exponent p) {
  return WeightedSpace(p, RVector::Ones(dim));
}

WeightedSpace WeightedSpace::from_multipliers(Exponent p, RVector a) {
  if (a.size() < 1) throw std::invalid_argument("WeightedSpace: dim must be >= 1");
  if ((a.array() <= 0.0).any() || !a.allFinite()) {
    throw std::invalid_argument("WeightedSpace: multipliers must be finite and > 0");
  }
  WeightedSpace s(p, RVector::Ones(a.size()));
  s.weights_ = p.is_infinite() ? a : RVector(a.array().pow(p.value()));
  s.multipliers_ = std::move(a);
  return s;
}

double WeightedSpace::norm(const CVector& x) const {
  require_dim(x.size(), dim(), "norm");
  RVector scaled = multipliers_.cwiseProduct(x.cwiseAbs());
  return lp_norm(scaled, p_);
}

double WeightedSpace::dual_norm(const CVector& y) const {
  require_dim(y.size(), dim(), "dual_norm");
  RVector scaled = y.cwiseAbs().cwiseQuotient(multipliers_);
  return lp_norm(scaled, p_.conjugate());
}

double WeightedSpace::smoothed_norm(const CVector& x, double eta, CVector* grad) const {
  require_dim(x.size(), dim(), "smoothed_norm");
  const RVector s = (x.cwiseAbs2().array() + eta * eta).sqrt();
  const RVector u = multipliers_.cwiseProduct(s);
  if (p_.is_infinite()) {
    RVector pi;
    const double value = soft_maximum(u, eta, pi);
    if (grad) {
      grad->resize(x.size());
      for (Eigen::Index i = 0; i < x.size(); ++i) (*grad)[i] = pi[i] * multipliers_[i] * x[i] / s[i];
    }
    return value;
  }
  const double p = p_.value();
  const double top = u.maxCoeff();
  const RVector ratio = u / top;
  const double inner = RVector(ratio.array().pow(p)).sum();
  const double value = top * std::pow(inner, 1.0 / p);
  if (grad) {
    grad->resize(x.size());
    // d/dx (sum (a s)^p)^(1/p) = N^(1-p) (a s)^(p-1) a x / s, in scaled form
    const double factor = std::pow(inner, 1.0 / p - 1.0);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      (*grad)[i] = factor * std::pow(ratio[i], p - 1.0) * multipliers_[i] * x[i] / s[i];
    }
  }
  return value;
}

double identity_norm(const WeightedSpace& from, const WeightedSpace& to) {
  require_dim(to.dim(), from.dim(), "identity_norm");
  const RVector c = to.multipliers().cwiseQuotient(from.multipliers());
  const double p_inv = from.exponent().reciprocal();
  const double q_inv = to.exponent().reciprocal();
  if (q_inv <= p_inv) return c.maxCoeff();
  return lp_norm(c, Exponent::from_reciprocal(q_inv - p_inv));
}

Couple::Couple(WeightedSpace space0, WeightedSpace space1)
    : space0_(std::move(space0)), space1_(std::move(space1)) {
  if (space0_.dim() != space1_.dim()) {
    throw DimensionMismatch("Couple: spaces must share the coordinate dimension");
  }
}

double norm(const WeightedSpace& space, const CVector& x) { return space.norm(x); }

double intersection_norm(const Couple& couple, const CVector& x) {
  return std::max(couple.space0().norm(x), couple.space1().norm(x));
}

namespace {

RVector pack(const CVector& z) {
  RVector r(2 * z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    r[2 * i] = z[i].real();
    r[2 * i + 1] = z[i].imag();
  }
  return r;
}

CVector unpack(const RVector& r) {
  CVector z(r.size() / 2);
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = {r[2 * i], r[2 * i + 1]};
  return z;
}

double pairing(const CVector& y, const CVector& x) { return (y.conjugate().cwiseProduct(x)).sum().real(); }

/// Dual-feasible lower bound: any y with ||y||_0* <= 1 and ||y||_1* <= t
/// gives K(t, x) >= Re <y, x>.
double dual_lower_bound(const Couple& couple, const CVector& x, double t, const CVector& y) {
  const double scale = std::max(couple.space0().dual_norm(y), couple.space1().dual_norm(y) / t);
  if (!(scale > 0.0) || !std::isfinite(scale)) return 0.0;
  return std::max(0.0, pairing(y, x) / scale);
}

/// Maximizes Re<y, x> / max(||y||_0*, ||y||_1* / t) over y = u .* phase(x),
/// u = exp(v) > 0, starting from `start`. Smoothed stages, exact certificate.
double refine_dual(const Couple& couple, const CVector& x, double t, const CVector& start) {
  const Eigen::Index n = x.size();
  const RVector ax = x.cwiseAbs();
  const WeightedSpace d0 = WeightedSpace::from_multipliers(couple.space0().exponent().conjugate(),
                                                           couple.space0().multipliers().cwiseInverse());
  const WeightedSpace d1 = WeightedSpace::from_multipliers(couple.space1().exponent().conjugate(),
                                                           RVector(couple.space1().multipliers().cwiseInverse() / t));
  const double floor = 1e-12 * std::max(start.cwiseAbs().maxCoeff(), 1e-300);
  RVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = std::log(std::max(std::abs(start[i]), floor));
  const auto certificate = [&](const RVector& vv) {
    CVector y(n);
    for (Eigen::Index i = 0; i < n; ++i) y[i] = ax[i] > 0.0 ? std::exp(vv[i]) * x[i] / ax[i] : 0.0;
    return dual_lower_bound(couple, x, t, y);
  };
  double best = certificate(v);
  for (double rel : {1e-3, 1e-6, 1e-9}) {
    SmoothObjective objective = [&](const RVector& vv, RVector& grad) {
      const RVector u = vv.array().exp();
      const CVector uc = u.cast<Complex>();
      CVector g0;
      CVector g1;
      const double eta = rel * u.maxCoeff();
      const double n0 = d0.smoothed_norm(uc, eta, &g0);
      const double n1 = d1.smoothed_norm(uc, eta, &g1);
      RVector both(2);
      both << n0, n1;
      RVector pi;
      const double m = soft_maximum(both, rel * std::max(n0, n1), pi);
      const double lin = ax.dot(u);
      grad.resize(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        const double dm = pi[0] * g0[i].real() + pi[1] * g1[i].real();
        grad[i] = u[i] * (dm / m - ax[i] / lin);
      }
      return std::log(m) - std::log(lin);
    };
    LbfgsOptions lb;
    lb.max_iterations = 200;
    lb.relative_tolerance = 1e-15;
    v = minimize_lbfgs(objective, v, lb).x;
    if (!v.allFinite()) break;
    best = std::max(best, certificate(v));
  }
  return best;
}

double exact_objective(const Couple& couple, const CVector& x, const CVector& part0, double t) {
  return couple.space0().norm(part0) + t * couple.space1().norm(x - part0);
}

}  // namespace

Decomposition k_functional(const Couple& couple, const CVector& x, double t,
                           const SumNormOptions& options) {
  require_dim(x.size(), couple.dim(), "k_functional");
  if (!(t > 0.0)) throw DomainError("k_functional: t must be > 0");
  if (!(options.tolerance > 0.0)) throw DomainError("k_functional: tolerance must be > 0");

  const Eigen::Index n = x.size();
  Decomposition out;
  if (x.cwiseAbs().maxCoeff() == 0.0) {
    out.part0 = CVector::Zero(n);
    out.part1 = CVector::Zero(n);
    return out;
  }

  const WeightedSpace& s0 = couple.space0();
  const WeightedSpace& s1 = couple.space1();

  // Start from the best of: all in X0, all in X1, coordinatewise routing.
  CVector routed = CVector::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (s0.multipliers()[i] <= t * s1.multipliers()[i]) routed[i] = x[i];
  }
  CVector best = x;
  double best_value = exact_objective(couple, x, best, t);
  for (const CVector& cand : {CVector(CVector::Zero(n)), routed}) {
    const double v = exact_objective(couple, x, cand, t);
    if (v < best_value) {
      best_value = v;
      best = cand;
    }
  }

  const double scale = x.cwiseAbs().maxCoeff();
  int total_iterations = 0;
  CVector g0;
  CVector g1;
  double lower = 0.0;
  for (double eta = 1e-2 * scale; eta >= 1e-10 * scale; eta *= 0.1) {
    SmoothObjective objective = [&](const RVector& r, RVector& grad) {
      const CVector part0 = unpack(r);
      const CVector part1 = x - part0;
      CVector d0;
      CVector d1;
      const double v = s0.smoothed_norm(part0, eta, &d0) + t * s1.smoothed_norm(part1, eta, &d1);
      grad = pack(d0 - t * d1);
      return v;
    };
    LbfgsOptions lb;
    lb.max_iterations = options.max_iterations;
    lb.relative_tolerance = 1e-15;
    LbfgsResult r = minimize_lbfgs(objective, pack(best), lb);
    total_iterations += r.status.iterations;
    CVector cand = unpack(r.x);
    const double v = exact_objective(couple, x, cand, t);
    if (v < best_value) {
      best_value = v;
      best = cand;
    }
    // Snap near-zero coordinates of either part; kinks of l^1/l^inf live there.
    CVector snapped = best;
    const double snap = 10.0 * eta;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(snapped[i]) < snap) snapped[i] = 0.0;
      if (std::abs(x[i] - snapped[i]) < snap) snapped[i] = x[i];
    }
    const double vs = exact_objective(couple, x, snapped, t);
    if (vs < best_value) {
      best_value = vs;
      best = snapped;
    }

    s0.smoothed_norm(best, eta, &g0);
    s1.smoothed_norm(x - best, eta, &g1);
    // Per coordinate, trust the gradient of the part that is away from its
    // kink: a zero coordinate of x0 says nothing about the X0 subgradient.
    CVector mixed(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      mixed[i] = std::abs(best[i]) >= std::abs(x[i] - best[i]) ? g0[i] : Complex(t * g1[i]);
    }
    lower = std::max({lower, dual_lower_bound(couple, x, t, g0),
                      dual_lower_bound(couple, x, t, CVector(t * g1)),
                      dual_lower_bound(couple, x, t, CVector(0.5 * (g0 + t * g1))),
                      dual_lower_bound(couple, x, t, mixed)});
    if (best_value - lower <= 0.1 * options.tolerance) break;
  }

  if (best_value - lower > 0.1 * options.tolerance) {
    CVector mixed(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      mixed[i] = std::abs(best[i]) >= std::abs(x[i] - best[i]) ? g0[i] : Complex(t * g1[i]);
    }
    lower = std::max(lower, refine_dual(couple, x, t, mixed));
  }

  out.part0 = best;
  out.part1 = x - best;
  out.objective = best_value;
  out.lower_bound = std::min(lower, best_value);
  out.residual = (out.part0 + out.part1 - x).norm();
  out.status.iterations = total_iterations;
  out.status.achieved_tolerance = best_value - out.lower_bound;
  out.status.converged = out.status.achieved_tolerance <= options.tolerance;
  return out;
}

Decomposition sum_norm(const Couple& couple, const CVector& x, const SumNormOptions& options) {
  return k_functional(couple, x, 1.0, options);
}

}  // namespace interp
