#include "interp_lab/compactness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace interp {

CMatrix truncation_projection(int n, int dim) {
  if (dim < 1 || n < 0 || n > dim) throw std::out_of_range("truncation_projection: need 0 <= n <= dim");
  CMatrix pi = CMatrix::Zero(dim, dim);
  for (int i = 0; i < n; ++i) pi(i, i) = 1.0;
  return pi;
}

CompactProxy::CompactProxy(HomPolynomial base, RVector sigma)
    : base_(std::move(base)), sigma_(std::move(sigma)), scaled_(base_.polar()) {
  require_dim(sigma_.size(), base_.codomain_dim(), "CompactProxy decay profile");
  for (Eigen::Index i = 0; i < sigma_.size(); ++i) {
    if (!(sigma_[i] >= 0.0) || (i > 0 && sigma_[i] > sigma_[i - 1])) {
      throw std::invalid_argument("CompactProxy: sigma must be nonnegative and nonincreasing");
    }
  }
  scaled_ = HomPolynomial(base_.polar().scaled_channels(sigma_));
}

CompactProxy CompactProxy::geometric(int degree, int domain_dim, int codomain_dim, double ratio, Rng& rng) {
  SymMultilinearMap t = SymMultilinearMap::random(degree, domain_dim, codomain_dim, rng);
  CMatrix c = t.coefficients();
  c.rowwise().normalize();
  RVector sigma(codomain_dim);
  for (int i = 0; i < codomain_dim; ++i) sigma[i] = std::pow(ratio, i);
  return {HomPolynomial(SymMultilinearMap(degree, domain_dim, std::move(c))), std::move(sigma)};
}

HomPolynomial CompactProxy::residual(int n) const {
  if (n < 0 || n > sigma_.size()) throw std::out_of_range("CompactProxy::residual: need 0 <= n <= dim");
  RVector s = sigma_;
  s.head(n).setZero();
  return HomPolynomial(base_.polar().scaled_channels(s));
}

TruncationChainReport truncation_chain_check(const CompactProxy& p, const Couple& x, const Couple& y,
                                             double theta, const std::vector<int>& n_grid,
                                             const AscentOptions& options, std::uint64_t seed) {
  const HomPolynomial& poly = p.polynomial();
  require_dim(x.dim(), poly.domain_dim(), "truncation_chain_check");
  require_dim(y.dim(), poly.codomain_dim(), "truncation_chain_check");
  TruncationChainReport r;
  const auto [p1, c1] = certified_polynomial_upper(poly, x.space1(), y.space1());
  r.p1_upper = p1;
  r.heuristic = c1 == Certification::kHeuristic;
  const WeightedSpace x_theta = interpolated_space(InterpolationRequest(x, theta));
  const WeightedSpace y_theta = interpolated_space(InterpolationRequest(y, theta));
  const double lead = std::pow((1.0 + r.k1) * p1, theta) * martin_constant(poly.degree());

  r.inequality_holds = true;
  r.rhs_monotone = true;
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    const HomPolynomial res = p.residual(n_grid[i]);
    TruncationRow row;
    row.n = n_grid[i];
    const auto [r0, c0] = certified_polynomial_upper(res, x.space0(), y.space0());
    r.heuristic = r.heuristic || c0 == Certification::kHeuristic;
    row.rhs = r0 > 0.0 ? lead * std::pow(r0, 1.0 - theta) : 0.0;
    if (res.polar().coefficients().cwiseAbs().maxCoeff() > 0.0) {
      row.lhs = estimate_op_norm(res, x_theta, y_theta, options, derive_seed(seed, i)).estimate.lower;
    }
    row.margin = row.rhs - row.lhs;
    row.holds = row.lhs <= row.rhs * (1.0 + 1e-9) + 1e-12;
    r.inequality_holds = r.inequality_holds && row.holds;
    if (!r.rows.empty() && row.rhs > r.rows.back().rhs * (1.0 + 1e-12)) r.rhs_monotone = false;
    r.rows.push_back(row);
  }
  if (!r.rows.empty()) {
    const auto ratio = [](double last, double first) { return first > 0.0 ? last / first : 0.0; };
    r.lhs_decay = ratio(r.rows.back().lhs, r.rows.front().lhs);
    r.rhs_decay = ratio(r.rows.back().rhs, r.rows.front().rhs);
  }
  return r;
}

double EpsilonNet::distance(const CVector& point) const {
  double best = kInf;
  for (const auto& c : centers) best = std::min(best, space.norm(point - c));
  return best;
}

EpsilonNet build_net(const std::vector<CVector>& points, double eps, const WeightedSpace& space) {
  if (!(eps > 0.0)) throw std::invalid_argument("build_net: eps must be > 0");
  EpsilonNet net{{}, {}, eps, space};
  if (points.empty()) return net;
  std::vector<double> dist(points.size(), kInf);
  std::size_t next = 0;
  while (true) {
    net.centers.push_back(points[next]);
    net.center_indices.push_back(next);
    double far = -1.0;
    std::size_t far_index = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      dist[i] = std::min(dist[i], space.norm(points[i] - points[next]));
      if (dist[i] > far) {
        far = dist[i];
        far_index = i;
      }
    }
    if (far <= eps) break;
    next = far_index;
  }
  return net;
}

namespace {

CVector random_in_ball(const WeightedSpace& space, Rng& rng) {
  CVector v = rng.complex_vector(space.dim());
  return v * (rng.uniform() / space.norm(v));
}

}  // namespace

LaterTransferReport theorem_later_transfer_check(const CompactProxy& p, const Couple& x, const WeightedSpace& y,
                                                 double theta, double eps, const LaterTransferOptions& options) {
  const HomPolynomial& poly = p.polynomial();
  require_dim(x.dim(), poly.domain_dim(), "theorem_later_transfer_check");
  require_dim(y.dim(), poly.codomain_dim(), "theorem_later_transfer_check");
  if (!(eps > 0.0)) throw std::invalid_argument("theorem_later_transfer_check: eps must be > 0");
  if (!(theta >= 0.0 && theta < 1.0)) throw DomainError("theorem_later_transfer_check: theta must lie in [0,1)");
  if (identity_norm(x.space1(), x.space0()) > 1.0 + 1e-12) {
    throw DomainError("theorem_later_transfer_check: couple must satisfy ||.||_0 <= ||.||_1");
  }
  LaterTransferReport r;
  const InterpolationRequest req(x, theta);
  const WeightedSpace x_theta = interpolated_space(req);
  const int m = poly.degree();

  // empirical Lions-Peetre constant over 13 log-spaced t
  Rng rng(derive_seed(options.seed, 0));
  for (int j = 0; j < 13; ++j) {
    const double t = std::pow(10.0, -3.0 + 0.5 * j);
    for (int s = 0; s < options.constant_samples; ++s) {
      const LionsPeetreReport lp = lions_peetre_decompose(req, rng.complex_vector(x.dim()), t, options.k_options);
      r.c_prime_measured = std::max({r.c_prime_measured, lp.constant0, lp.constant1});
      r.solver_converged = r.solver_converged && lp.decomposition.status.converged;
    }
  }
  r.c_prime_used = options.safety * r.c_prime_measured;
  r.polar_norm = certified_multilinear_upper(poly.polar(), x.space0(), y).first;

  const double terms = std::pow(2.0, m) - 1.0;
  const auto prescribe = [&](double c_prime) {
    if (!(r.polar_norm > 0.0) || !(c_prime > 0.0)) return 1.0;
    const double need = std::pow(2.0 * r.polar_norm * c_prime * terms / eps, 1.0 / (1.0 - theta));
    return std::max(1.0, need * (1.0 + 1e-9));
  };
  r.t = prescribe(r.c_prime_used);
  r.t_uninflated = prescribe(r.c_prime_measured);

  // samples of P(B_X0): random points plus a radial / phase sweep through the
  // best maximizer, dense enough that the image disk is sampled at eps/4
  std::vector<CVector> images;
  Rng net_rng(derive_seed(options.seed, 1));
  for (int s = 0; s < options.net_samples; ++s) images.push_back(poly(random_in_ball(x.space0(), net_rng)));
  const OpNormEstimate best = estimate_op_norm(poly, x.space0(), y, options.ascent, derive_seed(options.seed, 2));
  const double radius = best.estimate.lower;
  if (radius > 0.0) {
    const int levels = static_cast<int>(std::ceil(4.0 * radius / eps)) + 1;
    const int phases = 2 * static_cast<int>(std::ceil(4.0 * std::numbers::pi * radius / eps)) + 1;
    for (int a = 0; a <= levels; ++a) {
      const double s = std::pow(static_cast<double>(a) / levels, 1.0 / m);
      for (int b = 0; b < phases; ++b) {
        images.push_back(poly(best.argmax * std::polar(s, 2.0 * std::numbers::pi * b / phases)));
      }
    }
  }
  const EpsilonNet net = build_net(images, eps / 2.0, y);
  r.net_size = net.size();

  Rng test_rng(derive_seed(options.seed, 3));
  for (int s = 0; s < options.test_samples; ++s) {
    const CVector v = random_in_ball(x_theta, test_rng);
    const CVector pv = poly(v);
    const double d = net.distance(pv);
    r.worst_distance = std::max(r.worst_distance, d);
    if (d <= eps) ++r.covered;
    const LionsPeetreReport lp = lions_peetre_decompose(req, v, r.t, options.k_options);
    r.solver_converged = r.solver_converged && lp.decomposition.status.converged;
    if (y.norm(pv - poly(lp.decomposition.part0)) <= eps / 2.0) ++r.tail_within;
    const LionsPeetreReport lq = lions_peetre_decompose(req, v, r.t_uninflated, options.k_options);
    if (y.norm(pv - poly(lq.decomposition.part0)) <= eps / 2.0) ++r.tail_within_uninflated;
    ++r.samples;
  }
  r.coverage_rate = r.samples > 0 ? static_cast<double>(r.covered) / r.samples : 1.0;
  return r;
}

RVector singular_values(const CMatrix& l, const WeightedSpace& from, const WeightedSpace& to) {
  if (from.exponent().value() != 2.0 || to.exponent().value() != 2.0) {
    throw DomainError("singular_values: both spaces must be weighted l^2");
  }
  require_dim(l.cols(), from.dim(), "singular_values");
  require_dim(l.rows(), to.dim(), "singular_values");
  const CMatrix b = to.multipliers().cast<Complex>().asDiagonal() * l *
                    from.multipliers().cwiseInverse().cast<Complex>().asDiagonal();
  return Eigen::JacobiSVD<CMatrix>(b).singularValues();
}

}  // namespace interp
