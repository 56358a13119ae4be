#pragma once

#include <cstdint>
#include <vector>

#include "interp_lab/analytic.hpp"
#include "interp_lab/polynomials.hpp"

namespace interp {

/// Samples f(e^{i t_j}), t_j = 2 pi j / N, stored as a dim x N matrix.
/// N must be a power of two >= 8.
class CircleFunction {
 public:
  explicit CircleFunction(CMatrix samples);

  [[nodiscard]] int size() const { return static_cast<int>(samples_.cols()); }
  [[nodiscard]] Eigen::Index dim() const { return samples_.rows(); }
  [[nodiscard]] const CMatrix& samples() const { return samples_; }
  [[nodiscard]] CVector sample(int j) const { return samples_.col(j); }

  /// Pointwise image under a polynomial.
  [[nodiscard]] CircleFunction mapped(const HomPolynomial& p) const;

 private:
  CMatrix samples_;
};

/// Fourier coefficients for k in [-N/2, N/2); column k + N/2 holds f^(k).
class CoefficientTable {
 public:
  explicit CoefficientTable(CMatrix coefficients);

  [[nodiscard]] int size() const { return static_cast<int>(coeffs_.cols()); }
  [[nodiscard]] int bandwidth() const { return size() / 2; }
  [[nodiscard]] Eigen::Index dim() const { return coeffs_.rows(); }
  [[nodiscard]] const CMatrix& coefficients() const { return coeffs_; }
  /// Zero outside [-N/2, N/2).
  [[nodiscard]] CVector coefficient(int k) const;
  void set_coefficient(int k, const CVector& value);

 private:
  CMatrix coeffs_;
};

/// Trapezoid rule for (1/2pi) int e^{-ikt} f(e^{it}) dt, i.e. the DFT / N.
CoefficientTable coefficients(const CircleFunction& f);
/// Inverse of `coefficients`.
CircleFunction synthesize(const CoefficientTable& table);

/// Random trigonometric polynomial with |k| <= degree, sampled at N points.
CircleFunction random_band_limited(Eigen::Index dim, int n, int degree, Rng& rng);

struct ParsevalReport {
  double lhs = 0.0;  ///< (1/N) sum_j |y(f(t_j))|^2
  double rhs = 0.0;  ///< sum_k |y(f^(k))|^2
  double relative = 0.0;
};

/// y acts on coordinate vectors as y(v) = sum_i y_i v_i.
ParsevalReport parseval_check(const CircleFunction& f, const CVector& functional);

/// 1 for |k| <= n, 2 - |k|/n up to 2n, 0 beyond.
double vallee_poussin_window(int k, int n);

/// Windowed table; needs 2 n < bandwidth.
CoefficientTable vallee_poussin(const CoefficientTable& table, int n);
/// Same multiplier applied to the Laurent coefficients of a family.
LaurentFamily vallee_poussin(const LaurentFamily& phi, int n);

struct SnFamilyReport {
  std::vector<int> orders;
  std::vector<double> sup_by_order;  ///< sup over the population, per order
  double sup = 0.0;                  ///< whole population
  double sup_half = 0.0;             ///< first half of the population
  double relative_change = 0.0;      ///< (sup - sup_half) / sup
  bool stable = false;               ///< relative_change <= 0.05
  int population = 0;
  int excluded = 0;                  ///< zero families skipped
};

SnFamilyReport sn_family_bound_report(const std::vector<LaurentFamily>& population, const Couple& couple,
                                      const std::vector<int>& orders, const BoundaryGrid& grid);

/// Coefficient series: value[k] = sup over the population of the max of
/// the norms at +k and -k, k = 0..k_max.
struct DecaySeries {
  std::vector<double> value;
  double head = 0.0;   ///< max over |k| <= k_max / 8
  double tail = 0.0;   ///< max over |k| in [k_max / 2, k_max]
  [[nodiscard]] double ratio() const { return head > 0.0 ? tail / head : 0.0; }
};

struct RiemannLebesgueReport {
  DecaySeries series;
  double factor = 0.1;
  bool holds = false;  ///< tail <= factor * head
};

RiemannLebesgueReport riemann_lebesgue_report(const HomPolynomial& p, const std::vector<CircleFunction>& population,
                                              const WeightedSpace& y_space, int k_max, double factor = 0.1);

/// Smooth analytic family with c_k ~ g r^|k| / max(1, e^k), rescaled to unit
/// family norm.
LaurentFamily random_smooth_family(Eigen::Index dim, int degree, double r, const Couple& couple,
                                   const BoundaryGrid& grid, Rng& rng);
/// Smooth circle function with coefficients g r^|k|, |k| < N/2.
CircleFunction random_smooth_circle_function(Eigen::Index dim, int n, double r, Rng& rng);

struct CountRow {
  double delta = 0.0;
  int max_count = 0;    ///< max over the population of #{k : ||P^phi(k)||_Y0 >= delta}
  double budget = 0.0;  ///< kappa^2 ||P||^2 / delta^2
  bool within = false;
};

struct Lemma3Report {
  DecaySeries y0_series;       ///< part (b)
  std::vector<CountRow> counts;  ///< part (c)
  DecaySeries theta_series;    ///< part (d): ||P^phi(k) e^{k theta}||_{Y_theta}
  double p_norm_upper = 0.0;   ///< certified ||P||_{X0 -> l^2}
  double kappa = 0.0;          ///< ||id : l^2 -> Y0||
  double factor = 0.1;
  bool b_holds = false;
  bool c_holds = false;
  bool d_holds = false;
  int transform_size = 0;
};

/// Diagnostics for the coefficients of P(phi(z)) on the unit circle; the
/// population is expected inside the unit ball of the family norm.
Lemma3Report lemma3_diagnostics(const HomPolynomial& p, const std::vector<LaurentFamily>& population,
                                const Couple& x, const Couple& y, double theta,
                                const std::vector<double>& deltas, int k_max, double factor = 0.1);

}  // namespace interp
