#include "interp_lab/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "interp_lab/interpolation.hpp"
#include "interp_lab/optimize.hpp"
#include "interp_lab/random.hpp"

namespace interp {

LaurentFamily::LaurentFamily(Eigen::Index dim, int degree)
    : degree_(degree), coeffs_(CMatrix::Zero(dim, 2 * degree + 1)) {
  if (degree < 0) throw std::invalid_argument("LaurentFamily: degree must be >= 0");
  if (dim < 1) throw std::invalid_argument("LaurentFamily: dim must be >= 1");
}

LaurentFamily::LaurentFamily(CMatrix coefficients) : coeffs_(std::move(coefficients)) {
  if (coeffs_.cols() % 2 != 1 || coeffs_.rows() < 1) {
    throw std::invalid_argument("LaurentFamily: need dim >= 1 rows and 2M+1 columns");
  }
  degree_ = static_cast<int>(coeffs_.cols() / 2);
}

LaurentFamily LaurentFamily::constant(const CVector& x) {
  LaurentFamily phi(x.size(), 0);
  phi.coeffs_.col(0) = x;
  return phi;
}

CVector LaurentFamily::coefficient(int k) const {
  if (std::abs(k) > degree_) return CVector::Zero(dim());
  return coeffs_.col(k + degree_);
}

void LaurentFamily::set_coefficient(int k, const CVector& value) {
  if (std::abs(k) > degree_) throw std::out_of_range("LaurentFamily: index beyond degree");
  require_dim(value.size(), dim(), "LaurentFamily::set_coefficient");
  coeffs_.col(k + degree_) = value;
}

CVector LaurentFamily::evaluate_unchecked(Complex z) const {
  CVector out = CVector::Zero(dim());
  // Horner in z for k >= 0 and in 1/z for k < 0
  for (int k = degree_; k >= 0; --k) out = out * z + coeffs_.col(k + degree_);
  if (degree_ > 0) {
    const Complex w = 1.0 / z;
    CVector neg = CVector::Zero(dim());
    for (int k = -degree_; k <= -1; ++k) neg = (neg + coeffs_.col(k + degree_)) * w;
    out += neg;
  }
  return out;
}

CVector LaurentFamily::operator()(Complex z) const {
  const double r = std::abs(z);
  constexpr double slack = 1e-12;
  if (r < 1.0 - slack || r > std::numbers::e * (1.0 + slack)) {
    throw DomainError("LaurentFamily: evaluation point outside the closed annulus 1 <= |z| <= e");
  }
  return evaluate_unchecked(z);
}

LaurentFamily LaurentFamily::padded(int degree) const {
  if (degree < degree_) throw std::invalid_argument("LaurentFamily::padded: degree too small");
  LaurentFamily out(dim(), degree);
  out.coeffs_.middleCols(degree - degree_, coeffs_.cols()) = coeffs_;
  return out;
}

LaurentFamily LaurentFamily::scaled(double factor) const {
  return LaurentFamily(CMatrix(coeffs_ * factor));
}

namespace {

void require_grid(const LaurentFamily& phi, const BoundaryGrid& grid) {
  if (grid.samples < 2 * phi.degree() + 1) {
    throw DomainError("BoundaryGrid: need N >= 2M+1 samples (N=" + std::to_string(grid.samples) +
                      ", M=" + std::to_string(phi.degree()) + ")");
  }
}

/// N x (2M+1) matrix of z_n^k on |z| = e^radius_log.
CMatrix power_basis(int degree, double radius_log, int samples) {
  CMatrix basis(samples, 2 * degree + 1);
  for (int n = 0; n < samples; ++n) {
    const double t = 2.0 * std::numbers::pi * n / samples;
    for (int k = -degree; k <= degree; ++k) {
      basis(n, k + degree) = std::polar(std::exp(radius_log * k), std::fmod(k * t, 2.0 * std::numbers::pi));
    }
  }
  return basis;
}

RVector pack(const CMatrix& m) {
  RVector r(2 * m.size());
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    r[2 * i] = m.data()[i].real();
    r[2 * i + 1] = m.data()[i].imag();
  }
  return r;
}

CMatrix unpack(const RVector& r, Eigen::Index rows, Eigen::Index cols) {
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = {r[2 * i], r[2 * i + 1]};
  return m;
}

double exact_grid_max(const CMatrix& values, const WeightedSpace& space) {
  double best = 0.0;
  for (Eigen::Index n = 0; n < values.cols(); ++n) best = std::max(best, space.norm(values.col(n)));
  return best;
}

}  // namespace

CMatrix boundary_values(const LaurentFamily& phi, double radius_log, const BoundaryGrid& grid) {
  require_grid(phi, grid);
  return phi.coefficients() * power_basis(phi.degree(), radius_log, grid.samples).transpose();
}

double family_norm(const LaurentFamily& phi, const Couple& couple, const BoundaryGrid& grid) {
  require_dim(phi.dim(), couple.dim(), "family_norm");
  return std::max(exact_grid_max(boundary_values(phi, 0.0, grid), couple.space0()),
                  exact_grid_max(boundary_values(phi, 1.0, grid), couple.space1()));
}

FamilyMinimum minimize_family(const Couple& couple, double theta, const CVector& x,
                              const MinimizeOptions& options,
                              const std::optional<LaurentFamily>& warm_start) {
  require_dim(x.size(), couple.dim(), "minimize_family");
  if (!(theta >= 0.0 && theta <= 1.0)) throw DomainError("minimize_family: theta must lie in [0,1]");
  const int M = options.degree;
  const Eigen::Index dim = x.size();
  if (M < 0) throw std::invalid_argument("minimize_family: degree must be >= 0");
  if (options.grid.samples < 2 * M + 1) {
    throw DomainError("minimize_family: need N >= 2M+1 boundary samples");
  }

  if (x.cwiseAbs().maxCoeff() == 0.0) {
    return {LaurentFamily(dim, M), 0.0, {}};
  }

  // Free coefficients c_k (k != 0) are stored scaled, u_k = c_k max(1, e^k),
  // and c_0 = x - sum_{k != 0} c_k e^{theta k}.
  std::vector<int> ks;
  for (int k = -M; k <= M; ++k) {
    if (k != 0) ks.push_back(k);
  }
  const Eigen::Index free = static_cast<Eigen::Index>(ks.size());
  const int N = options.grid.samples;
  std::array<CMatrix, 2> reduced;
  for (int j = 0; j < 2; ++j) {
    const CMatrix basis = power_basis(M, static_cast<double>(j), N);
    reduced[j].resize(N, free);
    for (Eigen::Index c = 0; c < free; ++c) {
      const int k = ks[c];
      const double s = std::max(1.0, std::exp(static_cast<double>(k)));
      const Complex at_theta = std::exp(theta * k);
      reduced[j].col(c) = (basis.col(k + M).array() - at_theta) / s;
    }
  }
  const std::array<const WeightedSpace*, 2> spaces{&couple.space0(), &couple.space1()};

  auto to_family = [&](const CMatrix& u) {
    LaurentFamily phi(dim, M);
    CVector c0 = x;
    for (Eigen::Index c = 0; c < free; ++c) {
      const int k = ks[c];
      const CVector ck = u.col(c) / std::max(1.0, std::exp(static_cast<double>(k)));
      phi.set_coefficient(k, ck);
      c0 -= ck * std::exp(theta * k);
    }
    phi.set_coefficient(0, c0);
    return phi;
  };
  auto exact_value = [&](const CMatrix& u) {
    double best = 0.0;
    for (int j = 0; j < 2; ++j) {
      const CMatrix values = (u * reduced[j].transpose()).colwise() + x;
      best = std::max(best, exact_grid_max(values, *spaces[j]));
    }
    return best;
  };

  CMatrix best_u = CMatrix::Zero(dim, free);
  double best_value = exact_value(best_u);
  if (warm_start) {
    require_dim(warm_start->dim(), dim, "minimize_family warm start");
    if (warm_start->degree() <= M) {
      const LaurentFamily padded = warm_start->padded(M);
      CMatrix u(dim, free);
      for (Eigen::Index c = 0; c < free; ++c) {
        u.col(c) = padded.coefficient(ks[c]) * std::max(1.0, std::exp(static_cast<double>(ks[c])));
      }
      const double v = exact_value(u);
      if (v < best_value) {
        best_value = v;
        best_u = u;
      }
    }
  }

  const double a_max = std::max(couple.space0().multipliers().maxCoeff(),
                                couple.space1().multipliers().maxCoeff());
  const std::array<double, 7> schedule{1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
  const int per_stage = std::max(1, options.budget / static_cast<int>(schedule.size()));
  SolverStatus status;
  status.converged = false;

  if (M > 0) {
    for (double rel_tau : schedule) {
      const double tau = rel_tau * best_value;
      const double eta = 0.1 * tau / a_max;
      SmoothObjective objective = [&](const RVector& r, RVector& grad) {
        const CMatrix u = unpack(r, dim, free);
        std::array<CMatrix, 2> values;
        RVector terms(2 * N);
        std::array<CMatrix, 2> node_grads;
        for (int j = 0; j < 2; ++j) {
          values[j] = (u * reduced[j].transpose()).colwise() + x;
          node_grads[j].resize(dim, N);
          for (int n = 0; n < N; ++n) {
            CVector g;
            terms[j * N + n] = spaces[j]->smoothed_norm(values[j].col(n), eta, &g);
            node_grads[j].col(n) = g;
          }
        }
        RVector weights;
        const double value = soft_maximum(terms, tau, weights);
        CMatrix gu = CMatrix::Zero(dim, free);
        for (int j = 0; j < 2; ++j) {
          const CMatrix weighted = node_grads[j] * weights.segment(j * N, N).asDiagonal();
          gu += weighted * reduced[j].conjugate();
        }
        grad = pack(gu);
        return value;
      };
      LbfgsOptions lb;
      lb.max_iterations = per_stage;
      lb.history = 12;
      lb.relative_tolerance = options.movement_tolerance;
      LbfgsResult r = minimize_lbfgs(objective, pack(best_u), lb);
      status.iterations += r.status.iterations;
      status.converged = r.status.converged;
      status.achieved_tolerance = r.status.achieved_tolerance;
      const CMatrix u = unpack(r.x, dim, free);
      const double v = exact_value(u);
      if (v < best_value) {
        best_value = v;
        best_u = u;
      }
    }
  } else {
    status.converged = true;
  }

  LaurentFamily family = to_family(best_u);
  const double value = family_norm(family, couple, options.grid);
  return {std::move(family), value, status};
}

ThreeLinesReport three_lines_check(const LaurentFamily& phi, const Couple& couple, double theta,
                                   const BoundaryGrid& grid) {
  require_dim(phi.dim(), couple.dim(), "three_lines_check");
  const InterpolationRequest req(couple, theta);
  ThreeLinesReport report;
  report.left = closed_form_norm(req, phi(std::exp(theta)));
  const CMatrix inner = boundary_values(phi, 0.0, grid);
  const CMatrix outer = boundary_values(phi, 1.0, grid);
  double mean0 = 0.0;
  double mean1 = 0.0;
  for (Eigen::Index n = 0; n < inner.cols(); ++n) {
    mean0 += couple.space0().norm(inner.col(n));
    mean1 += couple.space1().norm(outer.col(n));
  }
  mean0 /= static_cast<double>(inner.cols());
  mean1 /= static_cast<double>(outer.cols());
  report.right = std::pow(mean0, 1.0 - theta) * std::pow(mean1, theta);
  if (report.right > 0.0) {
    report.implied_c = report.left / report.right;
  } else if (report.left > 0.0) {
    report.anomaly = true;
    report.implied_c = kInf;
  }
  return report;
}

const char* to_string(Membership m) {
  switch (m) {
    case Membership::kMember:
      return "member";
    case Membership::kNonmember:
      return "nonmember";
    case Membership::kUndecided:
      return "undecided";
  }
  return "undecided";
}

NormEstimate unconditional_bracket(const CMatrix& terms, const Eigen::MatrixXd& factors,
                                   const Couple& couple, int phase_samples, std::uint64_t seed) {
  require_dim(terms.rows(), couple.dim(), "unconditional_bracket");
  require_dim(factors.cols(), terms.cols(), "unconditional_bracket factors");
  // drop vanishing terms so exhaustive enumeration stays small
  std::vector<Eigen::Index> live;
  for (Eigen::Index k = 0; k < terms.cols(); ++k) {
    if (terms.col(k).cwiseAbs().maxCoeff() > 0.0) live.push_back(k);
  }
  NormEstimate out{0.0, 0.0};
  if (live.empty()) return out;

  const Eigen::Index dim = terms.rows();
  const auto K = static_cast<Eigen::Index>(live.size());
  for (int j = 0; j < 2; ++j) {
    CVector abs_sum = CVector::Zero(dim);
    for (Eigen::Index k : live) abs_sum += (std::abs(factors(j, k)) * terms.col(k).cwiseAbs()).cast<Complex>();
    out.upper = std::max(out.upper, couple.space(j).norm(abs_sum));
  }

  auto evaluate = [&](const std::vector<Complex>& lambda) {
    double best = 0.0;
    for (int j = 0; j < 2; ++j) {
      CVector sum = CVector::Zero(dim);
      for (Eigen::Index c = 0; c < K; ++c) sum += lambda[c] * factors(j, live[c]) * terms.col(live[c]);
      best = std::max(best, couple.space(j).norm(sum));
    }
    out.lower = std::max(out.lower, best);
  };

  std::vector<Complex> lambda(K, Complex(1.0, 0.0));
  evaluate(lambda);
  // align every term's phase in one coordinate
  for (int j = 0; j < 2; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index c = 0; c < K; ++c) {
        const Complex v = factors(j, live[c]) * terms(i, live[c]);
        lambda[c] = std::abs(v) > 0.0 ? std::conj(v) / std::abs(v) : Complex(1.0, 0.0);
      }
      evaluate(lambda);
    }
  }
  const std::array<Complex, 4> quarter{Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)};
  const double exhaustive = std::pow(4.0, static_cast<double>(K));
  if (exhaustive <= phase_samples) {
    const auto total = static_cast<std::uint64_t>(exhaustive);
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t rest = code;
      for (Eigen::Index c = 0; c < K; ++c) {
        lambda[c] = quarter[rest & 3U];
        rest >>= 2U;
      }
      evaluate(lambda);
    }
  } else {
    Rng rng(seed);
    for (int s = 0; s < phase_samples; ++s) {
      for (Eigen::Index c = 0; c < K; ++c) lambda[c] = quarter[rng.integer(0, 3)];
      evaluate(lambda);
      for (Eigen::Index c = 0; c < K; ++c) lambda[c] = rng.unit_phase();
      evaluate(lambda);
    }
  }
  out.lower = std::min(out.lower, out.upper);
  return out;
}

MembershipBracket mho_membership(const LaurentFamily& phi, const Couple& couple, int phase_samples,
                                 std::uint64_t seed) {
  require_dim(phi.dim(), couple.dim(), "mho_membership");
  const int M = phi.degree();
  Eigen::MatrixXd factors(2, 2 * M + 1);
  for (int k = -M; k <= M; ++k) {
    factors(0, k + M) = 1.0;
    factors(1, k + M) = std::exp(static_cast<double>(k));
  }
  const NormEstimate b = unconditional_bracket(phi.coefficients(), factors, couple, phase_samples, seed);
  MembershipBracket out;
  out.lower = b.lower;
  out.upper = b.upper;
  if (b.upper < 1.0) {
    out.verdict = Membership::kMember;
  } else if (b.lower >= 1.0) {
    out.verdict = Membership::kNonmember;
  } else {
    out.verdict = Membership::kUndecided;
  }
  return out;
}

}  // namespace interp
