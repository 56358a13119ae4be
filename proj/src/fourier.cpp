#include "interp_lab/fourier.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <bit>
#include <cmath>

#include "interp_lab/interpolation.hpp"

namespace interp {

namespace {

bool power_of_two_at_least_8(Eigen::Index n) {
  return n >= 8 && std::has_single_bit(static_cast<std::uint64_t>(n));
}

int wrap(int k, int n) { return ((k % n) + n) % n; }

}  // namespace

CircleFunction::CircleFunction(CMatrix samples) : samples_(std::move(samples)) {
  if (!power_of_two_at_least_8(samples_.cols())) {
    throw std::invalid_argument("CircleFunction: N must be a power of two >= 8");
  }
  if (samples_.rows() < 1) throw std::invalid_argument("CircleFunction: dim must be >= 1");
  if (!samples_.allFinite()) throw std::invalid_argument("CircleFunction: samples must be finite");
}

CircleFunction CircleFunction::mapped(const HomPolynomial& p) const {
  require_dim(dim(), p.domain_dim(), "CircleFunction::mapped");
  CMatrix out(p.codomain_dim(), samples_.cols());
  for (Eigen::Index j = 0; j < samples_.cols(); ++j) out.col(j) = p(samples_.col(j));
  return CircleFunction(std::move(out));
}

CoefficientTable::CoefficientTable(CMatrix coefficients) : coeffs_(std::move(coefficients)) {
  if (!power_of_two_at_least_8(coeffs_.cols())) {
    throw std::invalid_argument("CoefficientTable: N must be a power of two >= 8");
  }
}

CVector CoefficientTable::coefficient(int k) const {
  if (k < -bandwidth() || k >= bandwidth()) return CVector::Zero(dim());
  return coeffs_.col(k + bandwidth());
}

void CoefficientTable::set_coefficient(int k, const CVector& value) {
  if (k < -bandwidth() || k >= bandwidth()) throw std::out_of_range("CoefficientTable: k outside [-N/2, N/2)");
  require_dim(value.size(), dim(), "CoefficientTable::set_coefficient");
  coeffs_.col(k + bandwidth()) = value;
}

CoefficientTable coefficients(const CircleFunction& f) {
  const int n = f.size();
  CMatrix out(f.dim(), n);
  Eigen::FFT<double> fft;
  CVector row_in(n);
  CVector row_out(n);
  for (Eigen::Index i = 0; i < f.dim(); ++i) {
    row_in = f.samples().row(i).transpose();
    fft.fwd(row_out, row_in);
    for (int k = -n / 2; k < n / 2; ++k) out(i, k + n / 2) = row_out[wrap(k, n)] / static_cast<double>(n);
  }
  return CoefficientTable(std::move(out));
}

CircleFunction synthesize(const CoefficientTable& table) {
  const int n = table.size();
  CMatrix out(table.dim(), n);
  Eigen::FFT<double> fft;
  CVector row_in(n);
  CVector row_out(n);
  for (Eigen::Index i = 0; i < table.dim(); ++i) {
    for (int k = -n / 2; k < n / 2; ++k) row_in[wrap(k, n)] = table.coefficients()(i, k + n / 2);
    fft.inv(row_out, row_in);  // includes 1/n
    out.row(i) = row_out.transpose() * static_cast<double>(n);
  }
  return CircleFunction(std::move(out));
}

CircleFunction random_band_limited(Eigen::Index dim, int n, int degree, Rng& rng) {
  if (degree < 0 || degree >= n / 2) throw DomainError("random_band_limited: need 0 <= degree < N/2");
  CMatrix c = CMatrix::Zero(dim, n);
  for (int k = -degree; k <= degree; ++k) {
    for (Eigen::Index i = 0; i < dim; ++i) c(i, k + n / 2) = rng.complex_normal();
  }
  return synthesize(CoefficientTable(std::move(c)));
}

ParsevalReport parseval_check(const CircleFunction& f, const CVector& functional) {
  require_dim(functional.size(), f.dim(), "parseval_check");
  ParsevalReport r;
  const CVector g = f.samples().transpose() * functional;
  r.lhs = g.squaredNorm() / static_cast<double>(f.size());
  const CoefficientTable table = coefficients(f);
  r.rhs = (table.coefficients().transpose() * functional).squaredNorm();
  const double scale = std::max(r.lhs, r.rhs);
  r.relative = scale > 0.0 ? std::abs(r.lhs - r.rhs) / scale : 0.0;
  return r;
}

double vallee_poussin_window(int k, int n) {
  if (n < 1) throw std::invalid_argument("vallee_poussin_window: n must be >= 1");
  const int a = std::abs(k);
  if (a <= n) return 1.0;
  if (a <= 2 * n) return 2.0 - static_cast<double>(a) / n;
  return 0.0;
}

CoefficientTable vallee_poussin(const CoefficientTable& table, int n) {
  if (n < 1) throw std::invalid_argument("vallee_poussin: order must be >= 1");
  if (2 * n >= table.bandwidth()) throw DomainError("vallee_poussin: need 2 N < bandwidth");
  CMatrix c = table.coefficients();
  for (int k = -table.bandwidth(); k < table.bandwidth(); ++k) c.col(k + table.bandwidth()) *= vallee_poussin_window(k, n);
  return CoefficientTable(std::move(c));
}

LaurentFamily vallee_poussin(const LaurentFamily& phi, int n) {
  if (n < 1) throw std::invalid_argument("vallee_poussin: order must be >= 1");
  CMatrix c = phi.coefficients();
  const int m = phi.degree();
  for (int k = -m; k <= m; ++k) c.col(k + m) *= vallee_poussin_window(k, n);
  return LaurentFamily(std::move(c));
}

SnFamilyReport sn_family_bound_report(const std::vector<LaurentFamily>& population, const Couple& couple,
                                      const std::vector<int>& orders, const BoundaryGrid& grid) {
  SnFamilyReport r;
  r.orders = orders;
  r.sup_by_order.assign(orders.size(), 0.0);
  r.population = static_cast<int>(population.size());
  const std::size_t half = population.size() / 2;
  for (std::size_t i = 0; i < population.size(); ++i) {
    const double base = family_norm(population[i], couple, grid);
    if (!(base > 0.0)) {
      ++r.excluded;
      continue;
    }
    for (std::size_t o = 0; o < orders.size(); ++o) {
      const double ratio = family_norm(vallee_poussin(population[i], orders[o]), couple, grid) / base;
      r.sup_by_order[o] = std::max(r.sup_by_order[o], ratio);
      r.sup = std::max(r.sup, ratio);
      if (i < half) r.sup_half = std::max(r.sup_half, ratio);
    }
  }
  r.relative_change = r.sup > 0.0 ? (r.sup - r.sup_half) / r.sup : 0.0;
  r.stable = r.relative_change <= 0.05;
  return r;
}

namespace {

void finish_series(DecaySeries& s, int k_max) {
  for (int k = 0; k <= k_max; ++k) {
    if (k <= k_max / 8) s.head = std::max(s.head, s.value[k]);
    if (2 * k >= k_max) s.tail = std::max(s.tail, s.value[k]);
  }
}

void accumulate(DecaySeries& s, const CoefficientTable& t, const WeightedSpace& y, int k_max) {
  for (int k = 0; k <= k_max; ++k) {
    const double plus = y.norm(t.coefficient(k));
    const double minus = y.norm(t.coefficient(-k));
    s.value[k] = std::max(s.value[k], std::max(plus, minus));
  }
}

int transform_size_for(int needed) {
  int n = 8;
  while (n < needed) n *= 2;
  return n;
}

}  // namespace

RiemannLebesgueReport riemann_lebesgue_report(const HomPolynomial& p, const std::vector<CircleFunction>& population,
                                              const WeightedSpace& y_space, int k_max, double factor) {
  if (k_max < 8) throw std::invalid_argument("riemann_lebesgue_report: k_max must be >= 8");
  RiemannLebesgueReport r;
  r.factor = factor;
  r.series.value.assign(k_max + 1, 0.0);
  for (const auto& f : population) {
    if (2 * k_max >= f.size()) throw DomainError("riemann_lebesgue_report: need N > 2 k_max");
    accumulate(r.series, coefficients(f.mapped(p)), y_space, k_max);
  }
  finish_series(r.series, k_max);
  r.holds = r.series.tail <= factor * r.series.head;
  return r;
}

LaurentFamily random_smooth_family(Eigen::Index dim, int degree, double r, const Couple& couple,
                                   const BoundaryGrid& grid, Rng& rng) {
  LaurentFamily phi(dim, degree);
  for (int k = -degree; k <= degree; ++k) {
    const double scale = std::pow(r, std::abs(k)) / std::max(1.0, std::exp(static_cast<double>(k)));
    phi.set_coefficient(k, rng.complex_vector(dim) * scale);
  }
  const double norm = family_norm(phi, couple, grid);
  return norm > 0.0 ? phi.scaled(1.0 / norm) : phi;
}

CircleFunction random_smooth_circle_function(Eigen::Index dim, int n, double r, Rng& rng) {
  CMatrix c = CMatrix::Zero(dim, n);
  for (int k = -n / 2 + 1; k < n / 2; ++k) {
    c.col(k + n / 2) = rng.complex_vector(dim) * std::pow(r, std::abs(k));
  }
  return synthesize(CoefficientTable(std::move(c)));
}

Lemma3Report lemma3_diagnostics(const HomPolynomial& p, const std::vector<LaurentFamily>& population,
                                const Couple& x, const Couple& y, double theta,
                                const std::vector<double>& deltas, int k_max, double factor) {
  require_dim(x.dim(), p.domain_dim(), "lemma3_diagnostics");
  require_dim(y.dim(), p.codomain_dim(), "lemma3_diagnostics");
  if (k_max < 8) throw std::invalid_argument("lemma3_diagnostics: k_max must be >= 8");
  Lemma3Report r;
  r.factor = factor;
  r.y0_series.value.assign(k_max + 1, 0.0);
  r.theta_series.value.assign(k_max + 1, 0.0);

  const WeightedSpace l2 = WeightedSpace::lp(p.codomain_dim(), Exponent(2.0));
  r.p_norm_upper = certified_polynomial_upper(p, x.space0(), l2).first;
  r.kappa = identity_norm(l2, y.space0());
  const WeightedSpace y_theta = interpolated_space(InterpolationRequest(y, theta));

  int max_degree = 0;
  for (const auto& phi : population) max_degree = std::max(max_degree, phi.degree());
  // alias free: P(phi) has Laurent degree m * M
  r.transform_size = transform_size_for(std::max(2 * p.degree() * max_degree + 2, 2 * k_max + 2));
  const BoundaryGrid grid{r.transform_size};

  r.counts.resize(deltas.size());
  for (std::size_t d = 0; d < deltas.size(); ++d) {
    r.counts[d].delta = deltas[d];
    r.counts[d].budget = std::pow(r.kappa * r.p_norm_upper / deltas[d], 2);
  }

  for (const auto& phi : population) {
    const CircleFunction f(boundary_values(phi, 0.0, grid));
    const CoefficientTable table = coefficients(f.mapped(p));
    accumulate(r.y0_series, table, y.space0(), k_max);
    // c_k e^{k theta} are the coefficients on |z| = e^theta; sampling there
    // avoids amplifying roundoff by e^{k theta}
    const CircleFunction f_theta(boundary_values(phi, theta, grid));
    accumulate(r.theta_series, coefficients(f_theta.mapped(p)), y_theta, k_max);
    for (auto& row : r.counts) {
      int count = 0;
      for (int k = -table.bandwidth(); k < table.bandwidth(); ++k) {
        if (y.space0().norm(table.coefficient(k)) >= row.delta) ++count;
      }
      row.max_count = std::max(row.max_count, count);
    }
  }
  finish_series(r.y0_series, k_max);
  finish_series(r.theta_series, k_max);
  r.b_holds = r.y0_series.tail <= factor * r.y0_series.head;
  r.d_holds = r.theta_series.tail <= factor * r.theta_series.head;
  r.c_holds = true;
  for (auto& row : r.counts) {
    row.within = row.max_count <= row.budget;
    r.c_holds = r.c_holds && row.within;
  }
  return r;
}

}  // namespace interp
