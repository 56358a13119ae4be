#include "interp_lab/polynomials.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>

#include "interp_lab/interpolation.hpp"
#include "interp_lab/optimize.hpp"

namespace interp {

// ---------------------------------------------------------------- indexing

MultisetIndex::MultisetIndex(int n, int m) : n_(n), m_(m) {
  if (n < 1 || m < 1) throw std::invalid_argument("MultisetIndex: need n >= 1 and m >= 1");
  const double full = std::pow(static_cast<double>(n), m);
  if (full > static_cast<double>(1U << 24U)) {
    throw std::invalid_argument("MultisetIndex: n^m too large for dense indexing");
  }

  std::vector<int> current(m, 0);
  std::map<std::vector<int>, std::size_t> lookup;
  // lexicographic enumeration of non-decreasing tuples
  while (true) {
    lookup.emplace(current, multisets_.size());
    multisets_.push_back(current);
    int pos = m - 1;
    while (pos >= 0 && current[pos] == n - 1) --pos;
    if (pos < 0) break;
    const int next = current[pos] + 1;
    for (int l = pos; l < m; ++l) current[l] = next;
  }

  double m_factorial = std::tgamma(m + 1.0);
  multiplicity_.reserve(multisets_.size());
  for (const auto& s : multisets_) {
    double denom = 1.0;
    int run = 1;
    for (int l = 1; l <= m; ++l) {
      if (l < m && s[l] == s[l - 1]) {
        ++run;
      } else {
        denom *= std::tgamma(run + 1.0);
        run = 1;
      }
    }
    multiplicity_.push_back(std::round(m_factorial / denom));
  }

  const auto total = static_cast<std::size_t>(full);
  full_to_rank_.resize(total);
  std::vector<int> digits(m);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t rest = code;
    for (int l = m - 1; l >= 0; --l) {
      digits[l] = static_cast<int>(rest % n);
      rest /= n;
    }
    std::vector<int> sorted = digits;
    std::sort(sorted.begin(), sorted.end());
    full_to_rank_[code] = lookup.at(sorted);
  }
}

std::size_t MultisetIndex::rank(std::span<const int> tuple) const {
  if (static_cast<int>(tuple.size()) != m_) throw DimensionMismatch("MultisetIndex::rank: wrong arity");
  std::size_t code = 0;
  for (int v : tuple) {
    if (v < 0 || v >= n_) throw std::out_of_range("MultisetIndex::rank: index out of range");
    code = code * n_ + static_cast<std::size_t>(v);
  }
  return full_to_rank_[code];
}

std::shared_ptr<const MultisetIndex> MultisetIndex::shared(int n, int m) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const MultisetIndex>> cache;
  const std::lock_guard lock(mutex);
  auto& slot = cache[{n, m}];
  if (!slot) slot = std::make_shared<const MultisetIndex>(n, m);
  return slot;
}

// ---------------------------------------------------------------- maps

SymMultilinearMap::SymMultilinearMap(int degree, int domain_dim, int codomain_dim)
    : degree_(degree), index_(MultisetIndex::shared(domain_dim, degree)) {
  if (codomain_dim < 1) throw std::invalid_argument("SymMultilinearMap: codomain_dim must be >= 1");
  coeffs_ = CMatrix::Zero(codomain_dim, static_cast<Eigen::Index>(index_->size()));
}

SymMultilinearMap::SymMultilinearMap(int degree, int domain_dim, CMatrix coefficients)
    : degree_(degree), index_(MultisetIndex::shared(domain_dim, degree)), coeffs_(std::move(coefficients)) {
  if (coeffs_.cols() != static_cast<Eigen::Index>(index_->size()) || coeffs_.rows() < 1) {
    throw DimensionMismatch("SymMultilinearMap: coefficient matrix must be q x C(n+m-1, m)");
  }
}

SymMultilinearMap SymMultilinearMap::random(int degree, int domain_dim, int codomain_dim, Rng& rng) {
  SymMultilinearMap t(degree, domain_dim, codomain_dim);
  for (Eigen::Index c = 0; c < t.coeffs_.cols(); ++c) {
    for (Eigen::Index r = 0; r < t.coeffs_.rows(); ++r) t.coeffs_(r, c) = rng.complex_normal();
  }
  return t;
}

SymMultilinearMap SymMultilinearMap::linear(const CMatrix& matrix) {
  return {1, static_cast<int>(matrix.cols()), matrix};
}

SymMultilinearMap SymMultilinearMap::diagonal(int degree, const CVector& d) {
  const int n = static_cast<int>(d.size());
  SymMultilinearMap t(degree, n, n);
  for (int i = 0; i < n; ++i) {
    const std::vector<int> tuple(degree, i);
    t.coeffs_(i, static_cast<Eigen::Index>(t.index_->rank(tuple))) = d[i];
  }
  return t;
}

CVector SymMultilinearMap::entry(std::span<const int> tuple) const {
  return coeffs_.col(static_cast<Eigen::Index>(index_->rank(tuple)));
}

void SymMultilinearMap::set_entry(std::span<const int> tuple, const CVector& value) {
  require_dim(value.size(), coeffs_.rows(), "SymMultilinearMap::set_entry");
  coeffs_.col(static_cast<Eigen::Index>(index_->rank(tuple))) = value;
}

namespace {

void require_args(const SymMultilinearMap& t, std::span<const CVector> args) {
  if (static_cast<int>(args.size()) != t.degree()) {
    throw DimensionMismatch("SymMultilinearMap: expected " + std::to_string(t.degree()) + " arguments");
  }
  for (const CVector& a : args) require_dim(a.size(), t.domain_dim(), "SymMultilinearMap argument");
}

}  // namespace

CVector SymMultilinearMap::operator()(std::span<const CVector> args) const {
  require_args(*this, args);
  const int n = domain_dim();
  const int m = degree_;
  CVector weights = CVector::Zero(coeffs_.cols());
  std::vector<int> digits(m, 0);
  for (std::size_t code = 0; code < index_->full_size(); ++code) {
    Complex prod(1.0, 0.0);
    for (int l = 0; l < m; ++l) prod *= args[l][digits[l]];
    weights[static_cast<Eigen::Index>(index_->rank_of_code(code))] += prod;
    for (int l = m - 1; l >= 0; --l) {
      if (++digits[l] < n) break;
      digits[l] = 0;
    }
  }
  return coeffs_ * weights;
}

CVector SymMultilinearMap::diagonal_value(const CVector& x) const {
  require_dim(x.size(), domain_dim(), "SymMultilinearMap::diagonal_value");
  CVector weights(coeffs_.cols());
  for (std::size_t r = 0; r < index_->size(); ++r) {
    Complex prod(index_->multiplicity(r), 0.0);
    for (int i : index_->multiset(r)) prod *= x[i];
    weights[static_cast<Eigen::Index>(r)] = prod;
  }
  return coeffs_ * weights;
}

CMatrix SymMultilinearMap::diagonal_jacobian(const CVector& x) const {
  require_dim(x.size(), domain_dim(), "SymMultilinearMap::diagonal_jacobian");
  const int n = domain_dim();
  CMatrix w = CMatrix::Zero(coeffs_.cols(), n);
  for (std::size_t r = 0; r < index_->size(); ++r) {
    const auto& s = index_->multiset(r);
    for (int l = 0; l < degree_; ++l) {
      if (l > 0 && s[l] == s[l - 1]) continue;
      // derivative in x_j, j = s[l]: drop one occurrence, times its count
      int count = 0;
      Complex prod(index_->multiplicity(r), 0.0);
      bool dropped = false;
      for (int v : s) {
        if (v == s[l]) ++count;
        if (v == s[l] && !dropped) {
          dropped = true;
          continue;
        }
        prod *= x[v];
      }
      w(static_cast<Eigen::Index>(r), s[l]) += prod * static_cast<double>(count);
    }
  }
  return coeffs_ * w;
}

CMatrix SymMultilinearMap::slot_jacobian(std::span<const CVector> args, int slot) const {
  require_args(*this, args);
  const int n = domain_dim();
  const int m = degree_;
  CMatrix w = CMatrix::Zero(coeffs_.cols(), n);
  std::vector<int> digits(m, 0);
  for (std::size_t code = 0; code < index_->full_size(); ++code) {
    Complex prod(1.0, 0.0);
    for (int l = 0; l < m; ++l) {
      if (l != slot) prod *= args[l][digits[l]];
    }
    w(static_cast<Eigen::Index>(index_->rank_of_code(code)), digits[slot]) += prod;
    for (int l = m - 1; l >= 0; --l) {
      if (++digits[l] < n) break;
      digits[l] = 0;
    }
  }
  return coeffs_ * w;
}

SymMultilinearMap SymMultilinearMap::scaled_channels(const RVector& scale) const {
  require_dim(scale.size(), coeffs_.rows(), "scaled_channels");
  return {degree_, domain_dim(), CMatrix(scale.cast<Complex>().asDiagonal() * coeffs_)};
}

SymMultilinearMap SymMultilinearMap::operator-(const SymMultilinearMap& other) const {
  if (other.degree_ != degree_ || other.domain_dim() != domain_dim()) {
    throw DimensionMismatch("SymMultilinearMap: shape mismatch in subtraction");
  }
  require_dim(other.coeffs_.rows(), coeffs_.rows(), "SymMultilinearMap subtraction");
  return {degree_, domain_dim(), CMatrix(coeffs_ - other.coeffs_)};
}

CMatrix SymMultilinearMap::as_matrix() const {
  if (degree_ != 1) throw std::logic_error("as_matrix: map is not linear");
  return coeffs_;
}

CVector HomPolynomial::operator()(const CVector& x) const { return polar_.diagonal_value(x); }

CVector evaluate(const HomPolynomial& p, const CVector& x) { return p(x); }

// ---------------------------------------------------------------- identities

namespace {

double binomial(int n, int k) {
  return std::round(std::tgamma(n + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(n - k + 1.0)));
}

}  // namespace

CVector polarize_via_formula(const HomPolynomial& p, std::span<const CVector> args) {
  const int m = p.degree();
  if (m > kMaxPolarizationDegree) throw DomainError("polarize_via_formula: degree exceeds the 2^m guard");
  require_args(p.polar(), args);
  CVector sum = CVector::Zero(p.codomain_dim());
  const std::uint32_t patterns = 1U << static_cast<unsigned>(m);
  for (std::uint32_t mask = 0; mask < patterns; ++mask) {
    CVector point = CVector::Zero(p.domain_dim());
    double sign = 1.0;
    for (int l = 0; l < m; ++l) {
      if (mask & (1U << static_cast<unsigned>(l))) {
        point -= args[l];
        sign = -sign;
      } else {
        point += args[l];
      }
    }
    sum += sign * p(point);
  }
  return sum / (static_cast<double>(patterns) * std::tgamma(m + 1.0));
}

ExpansionError polarization_discrepancy(const HomPolynomial& p, std::span<const CVector> args) {
  const CVector structural = p.polar()(args);
  const CVector formula = polarize_via_formula(p, args);
  const int m = p.degree();
  const double norm_factor = std::pow(2.0, m) * std::tgamma(m + 1.0);
  double scale = structural.norm();
  const std::uint32_t patterns = 1U << static_cast<unsigned>(m);
  for (std::uint32_t mask = 0; mask < patterns; ++mask) {
    CVector point = CVector::Zero(p.domain_dim());
    for (int l = 0; l < m; ++l) point += (mask & (1U << static_cast<unsigned>(l))) ? CVector(-args[l]) : args[l];
    scale = std::max(scale, p(point).norm() / norm_factor);
  }
  ExpansionError e;
  e.absolute = (structural - formula).norm();
  e.relative = scale > 0.0 ? e.absolute / scale : e.absolute;
  return e;
}

ExpansionError lemma_expansion_check(const SymMultilinearMap& t, const CVector& x0, const CVector& x1) {
  require_dim(x0.size(), t.domain_dim(), "lemma_expansion_check");
  require_dim(x1.size(), t.domain_dim(), "lemma_expansion_check");
  const int m = t.degree();
  const CVector s = x0 + x1;
  const std::vector<CVector> all_s(m, s);
  const std::vector<CVector> all_x0(m, x0);
  const CVector lhs = t(all_s);
  CVector rhs = t(all_x0);
  double scale = std::max(lhs.norm(), rhs.norm());
  for (int k = 1; k <= m; ++k) {
    std::vector<CVector> args(m, s);
    for (int l = m - k; l < m; ++l) args[l] = x1;
    const CVector term = (k % 2 == 0 ? 1.0 : -1.0) * binomial(m, k) * t(args);
    scale = std::max(scale, term.norm());
    rhs -= term;
  }
  ExpansionError e;
  e.absolute = (lhs - rhs).norm();
  e.relative = scale > 0.0 ? e.absolute / scale : e.absolute;
  return e;
}

// ---------------------------------------------------------------- norms

const char* to_string(Certification c) {
  switch (c) {
    case Certification::kExact:
      return "exact";
    case Certification::kBound:
      return "bound";
    case Certification::kHeuristic:
      return "heuristic";
  }
  return "heuristic";
}

double martin_constant(int m) { return std::pow(static_cast<double>(m), m) / std::tgamma(m + 1.0); }

namespace {

RVector pack(std::span<const CVector> parts) {
  Eigen::Index total = 0;
  for (const auto& p : parts) total += p.size();
  RVector r(2 * total);
  Eigen::Index o = 0;
  for (const auto& p : parts) {
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      r[o++] = p[i].real();
      r[o++] = p[i].imag();
    }
  }
  return r;
}

std::vector<CVector> unpack(const RVector& r, int parts, Eigen::Index n) {
  std::vector<CVector> out(parts, CVector(n));
  Eigen::Index o = 0;
  for (auto& p : out) {
    for (Eigen::Index i = 0; i < n; ++i, o += 2) p[i] = {r[o], r[o + 1]};
  }
  return out;
}

double unweighted_identity(Eigen::Index dim, Exponent from, Exponent to) {
  return identity_norm(WeightedSpace::lp(dim, from), WeightedSpace::lp(dim, to));
}

std::pair<double, Certification> linear_upper(const CMatrix& a, const WeightedSpace& x_space,
                                              const WeightedSpace& y_space) {
  const CMatrix b = y_space.multipliers().cast<Complex>().asDiagonal() * a *
                    x_space.multipliers().cwiseInverse().cast<Complex>().asDiagonal();
  const Exponent p = x_space.exponent();
  const Exponent q = y_space.exponent();
  const Eigen::Index n = b.cols();
  const Eigen::Index rows = b.rows();
  const WeightedSpace y_unit = WeightedSpace::lp(rows, q);
  const WeightedSpace x_dual = WeightedSpace::lp(n, p);

  double col_max = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) col_max = std::max(col_max, y_unit.norm(b.col(j)));
  double row_max = 0.0;
  for (Eigen::Index i = 0; i < rows; ++i) row_max = std::max(row_max, x_dual.dual_norm(b.row(i).transpose()));
  const double sigma = Eigen::JacobiSVD<CMatrix>(b).singularValues()(0);

  const double via_l1 = unweighted_identity(n, p, Exponent(1.0)) * col_max;
  const double via_linf = row_max * unweighted_identity(rows, Exponent::infinity(), q);
  const double via_l2 = unweighted_identity(n, p, Exponent(2.0)) * sigma * unweighted_identity(rows, Exponent(2.0), q);

  if (p.value() == 1.0) return {col_max, Certification::kExact};
  if (q.is_infinite()) return {row_max, Certification::kExact};
  if (p.value() == 2.0 && q.value() == 2.0) return {sigma, Certification::kExact};
  return {std::min({via_l1, via_linf, via_l2}), Certification::kBound};
}

/// Coefficients d_i when t(x..x)_i = d_i x_i^m and nothing else.
std::optional<CVector> diagonal_part(const SymMultilinearMap& t) {
  const int n = t.domain_dim();
  if (t.codomain_dim() != n) return std::nullopt;
  const MultisetIndex& idx = t.index();
  CVector d = CVector::Zero(n);
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const auto& s = idx.multiset(r);
    const bool constant = s.front() == s.back();
    const CVector col = t.coefficients().col(static_cast<Eigen::Index>(r));
    for (int i = 0; i < n; ++i) {
      if (col[i] == Complex(0.0, 0.0)) continue;
      if (!constant || s.front() != i) return std::nullopt;
      d[i] = col[i];
    }
  }
  return d;
}

/// max over multisets of ||c_S||_Y / prod a_S times kappa^m, kappa the
/// l^p -> l^1 identity constant; exact for multilinear norms when p = 1.
double l1_polar_bound(const SymMultilinearMap& t, const WeightedSpace& x_space, const WeightedSpace& y_space) {
  const MultisetIndex& idx = t.index();
  const RVector& a = x_space.multipliers();
  double best = 0.0;
  for (std::size_t r = 0; r < idx.size(); ++r) {
    double denom = 1.0;
    for (int i : idx.multiset(r)) denom *= a[i];
    best = std::max(best, y_space.norm(t.coefficients().col(static_cast<Eigen::Index>(r))) / denom);
  }
  const double kappa = unweighted_identity(t.domain_dim(), x_space.exponent(), Exponent(1.0));
  return std::pow(kappa, t.degree()) * best;
}

/// Channelwise spectral bound for quadratic maps on weighted l^2: the
/// scalar sup |x^T A y| over unit balls equals sigma_max of the rescaled A.
std::optional<std::pair<double, Certification>> quadratic_l2_bound(const SymMultilinearMap& t,
                                                                   const WeightedSpace& x_space,
                                                                   const WeightedSpace& y_space) {
  if (t.degree() != 2 || x_space.exponent().value() != 2.0) return std::nullopt;
  const int n = t.domain_dim();
  const RVector inv_a = x_space.multipliers().cwiseInverse();
  CVector channel(t.codomain_dim());
  for (int i = 0; i < t.codomain_dim(); ++i) {
    CMatrix a(n, n);
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const std::array<int, 2> tuple{j, k};
        a(j, k) = t.entry(tuple)[i] * inv_a[j] * inv_a[k];
      }
    }
    channel[i] = Eigen::JacobiSVD<CMatrix>(a).singularValues()(0);
  }
  const double value = y_space.norm(channel);
  const bool exact = y_space.exponent().is_infinite() || t.codomain_dim() == 1;
  return std::make_pair(value, exact ? Certification::kExact : Certification::kBound);
}

std::pair<double, Certification> best_of(std::vector<std::pair<double, Certification>> c) {
  std::pair<double, Certification> out{kInf, Certification::kHeuristic};
  for (const auto& [v, cert] : c) {
    if (cert == Certification::kExact) return {v, cert};
    if (v < out.first) out = {v, cert};
  }
  return out;
}

}  // namespace

double diagonal_polynomial_norm(const CVector& d, int degree, const WeightedSpace& x_space,
                                const WeightedSpace& y_space) {
  require_dim(d.size(), x_space.dim(), "diagonal_polynomial_norm");
  require_dim(d.size(), y_space.dim(), "diagonal_polynomial_norm");
  const RVector c = y_space.multipliers().cwiseProduct(d.cwiseAbs()).cwiseQuotient(
      RVector(x_space.multipliers().array().pow(degree)));
  const Exponent p = x_space.exponent();
  const Exponent q = y_space.exponent();
  if (p.is_infinite()) return WeightedSpace::lp(c.size(), q).norm(c.cast<Complex>());
  if (q.is_infinite()) return c.maxCoeff();
  const double s = degree * q.value() / p.value();
  if (s >= 1.0) return c.maxCoeff();
  // concave case: sup sum c_i^q v_i^s over the simplex
  const double r = q.value() / (1.0 - s);
  return std::pow(WeightedSpace::lp(c.size(), Exponent(r)).norm(c.cast<Complex>()), r * (1.0 - s) / q.value());
}

std::pair<double, Certification> certified_polynomial_upper(const HomPolynomial& p,
                                                            const WeightedSpace& x_space,
                                                            const WeightedSpace& y_space) {
  require_dim(x_space.dim(), p.domain_dim(), "certified_polynomial_upper");
  require_dim(y_space.dim(), p.codomain_dim(), "certified_polynomial_upper");
  const SymMultilinearMap& t = p.polar();
  if (t.degree() == 1) return linear_upper(t.as_matrix(), x_space, y_space);
  std::vector<std::pair<double, Certification>> candidates;
  if (auto d = diagonal_part(t)) {
    candidates.emplace_back(diagonal_polynomial_norm(*d, t.degree(), x_space, y_space), Certification::kExact);
  }
  if (auto q = quadratic_l2_bound(t, x_space, y_space)) candidates.push_back(*q);
  candidates.emplace_back(l1_polar_bound(t, x_space, y_space), Certification::kBound);
  return best_of(std::move(candidates));
}

std::pair<double, Certification> certified_multilinear_upper(const SymMultilinearMap& t,
                                                             const WeightedSpace& x_space,
                                                             const WeightedSpace& y_space) {
  require_dim(x_space.dim(), t.domain_dim(), "certified_multilinear_upper");
  require_dim(y_space.dim(), t.codomain_dim(), "certified_multilinear_upper");
  if (t.degree() == 1) return linear_upper(t.as_matrix(), x_space, y_space);
  std::vector<std::pair<double, Certification>> candidates;
  if (auto d = diagonal_part(t)) {
    candidates.emplace_back(diagonal_polynomial_norm(*d, t.degree(), x_space, y_space), Certification::kExact);
  }
  if (auto q = quadratic_l2_bound(t, x_space, y_space)) candidates.push_back(*q);
  candidates.emplace_back(l1_polar_bound(t, x_space, y_space),
                          x_space.exponent().value() == 1.0 ? Certification::kExact : Certification::kBound);
  return best_of(std::move(candidates));
}

namespace {

/// Multistart ascent of ||T(x_1..x_slots)||_Y / prod ||x_l||_X, where
/// `value_and_jacobians` evaluates T and its per-slot Jacobians. With
/// slots == 1 and a polynomial evaluator this covers ||P||.
struct AscentProblem {
  int slots = 1;
  int homogeneity = 1;  // power of ||x|| in the denominator per slot
  std::function<CVector(std::span<const CVector>)> value;
  std::function<std::vector<CMatrix>(std::span<const CVector>)> jacobians;
};

double exact_ratio(const AscentProblem& prob, std::span<const CVector> xs, const WeightedSpace& xsp,
                   const WeightedSpace& ysp) {
  double denom = 1.0;
  for (const auto& x : xs) denom *= std::pow(xsp.norm(x), prob.homogeneity);
  if (!(denom > 0.0)) return 0.0;
  return ysp.norm(prob.value(xs)) / denom;
}

OpNormEstimate run_ascent(const AscentProblem& prob, const WeightedSpace& xsp, const WeightedSpace& ysp,
                          const AscentOptions& options, std::uint64_t seed,
                          const std::vector<std::vector<CVector>>& extra_starts) {
  const Eigen::Index n = xsp.dim();
  OpNormEstimate out;
  out.estimate.lower = 0.0;
  out.argmax = CVector::Zero(n);
  Rng rng(seed);

  auto consider = [&](const std::vector<CVector>& xs) {
    const double v = exact_ratio(prob, xs, xsp, ysp);
    if (v > out.estimate.lower) {
      out.estimate.lower = v;
      out.argmax = xs.front() / xsp.norm(xs.front());
    }
  };

  auto ascend = [&](std::vector<CVector> xs) {
    consider(xs);
    for (double rel_eta : {1e-3, 1e-7}) {
      for (auto& x : xs) {
        const double nx = xsp.norm(x);
        if (!(nx > 0.0)) return;
        x /= nx;
      }
      const double y_scale = std::max(prob.value(xs).cwiseAbs().maxCoeff(), 1e-300);
      const double eta_y = rel_eta * y_scale;
      SmoothObjective objective = [&](const RVector& r, RVector& grad) {
        const auto parts = unpack(r, prob.slots, n);
        const CVector v = prob.value(parts);
        CVector gy;
        const double ny = ysp.smoothed_norm(v, eta_y, &gy);
        const auto jac = prob.jacobians(parts);
        std::vector<CVector> g(prob.slots);
        double f = -std::log(ny);
        for (int l = 0; l < prob.slots; ++l) {
          CVector gx;
          const double scale_x = std::max(parts[l].cwiseAbs().maxCoeff(), 1e-300);
          const double nx = xsp.smoothed_norm(parts[l], rel_eta * scale_x, &gx);
          f += prob.homogeneity * std::log(nx);
          g[l] = -(jac[l].adjoint() * gy) / ny + prob.homogeneity * gx / nx;
        }
        grad = pack(g);
        return f;
      };
      LbfgsOptions lb;
      lb.max_iterations = options.iterations;
      lb.relative_tolerance = 1e-14;
      LbfgsResult r = minimize_lbfgs(objective, pack(xs), lb);
      out.status.iterations += r.status.iterations;
      if (!r.x.allFinite()) return;
      xs = unpack(r.x, prob.slots, n);
      consider(xs);
    }
  };

  for (const auto& start : extra_starts) consider(start);
  for (int s = 0; s < options.starts; ++s) {
    std::vector<CVector> xs;
    for (int l = 0; l < prob.slots; ++l) xs.push_back(rng.complex_vector(n));
    ascend(std::move(xs));
  }
  return out;
}

}  // namespace

OpNormEstimate estimate_op_norm(const HomPolynomial& p, const WeightedSpace& x_space,
                                const WeightedSpace& y_space, const AscentOptions& options,
                                std::uint64_t seed) {
  require_dim(x_space.dim(), p.domain_dim(), "estimate_op_norm");
  require_dim(y_space.dim(), p.codomain_dim(), "estimate_op_norm");
  AscentProblem prob;
  prob.slots = 1;
  prob.homogeneity = p.degree();
  prob.value = [&](std::span<const CVector> xs) { return p(xs[0]); };
  prob.jacobians = [&](std::span<const CVector> xs) {
    return std::vector<CMatrix>{p.polar().diagonal_jacobian(xs[0])};
  };
  std::vector<std::vector<CVector>> extra;
  for (Eigen::Index i = 0; i < x_space.dim(); ++i) {
    CVector e = CVector::Zero(x_space.dim());
    e[i] = 1.0;
    extra.push_back({e});
  }
  OpNormEstimate out = run_ascent(prob, x_space, y_space, options, seed, extra);
  const auto [upper, cert] = certified_polynomial_upper(p, x_space, y_space);
  out.estimate.upper = std::max(upper, out.estimate.lower);
  out.certification = cert;
  return out;
}

OpNormEstimate estimate_multilinear_norm(const SymMultilinearMap& t, const WeightedSpace& x_space,
                                         const WeightedSpace& y_space, const AscentOptions& options,
                                         std::uint64_t seed) {
  require_dim(x_space.dim(), t.domain_dim(), "estimate_multilinear_norm");
  require_dim(y_space.dim(), t.codomain_dim(), "estimate_multilinear_norm");
  AscentProblem prob;
  prob.slots = t.degree();
  prob.homogeneity = 1;
  prob.value = [&](std::span<const CVector> xs) { return t(xs); };
  prob.jacobians = [&](std::span<const CVector> xs) {
    std::vector<CMatrix> j;
    for (int l = 0; l < t.degree(); ++l) j.push_back(t.slot_jacobian(xs, l));
    return j;
  };
  // all basis tuples when cheap: exact for l^1 domains
  std::vector<std::vector<CVector>> extra;
  const Eigen::Index n = x_space.dim();
  if (t.index().full_size() <= 4096) {
    for (std::size_t r = 0; r < t.index().size(); ++r) {
      std::vector<CVector> xs;
      for (int i : t.index().multiset(r)) {
        CVector e = CVector::Zero(n);
        e[i] = 1.0;
        xs.push_back(e);
      }
      extra.push_back(std::move(xs));
    }
  }
  OpNormEstimate out = run_ascent(prob, x_space, y_space, options, seed, extra);
  const auto [upper, cert] = certified_multilinear_upper(t, x_space, y_space);
  out.estimate.upper = std::max(upper, out.estimate.lower);
  out.certification = cert;
  return out;
}

MartinReport martin_bound_check(const HomPolynomial& p, const WeightedSpace& x_space,
                                const WeightedSpace& y_space, const AscentOptions& options,
                                std::uint64_t seed) {
  MartinReport r;
  const OpNormEstimate poly = estimate_op_norm(p, x_space, y_space, options, seed);
  const OpNormEstimate polar = estimate_multilinear_norm(p.polar(), x_space, y_space, options, derive_seed(seed, 1));
  r.checkable = poly.certification != Certification::kHeuristic;
  if (!r.checkable) return r;
  r.polar_lower = polar.estimate.lower;
  r.polynomial_upper = poly.estimate.upper;
  r.polynomial_lower = poly.estimate.lower;
  r.bound = martin_constant(p.degree()) * r.polynomial_upper;
  r.holds = r.polar_lower <= r.bound + 1e-9;
  r.margin = r.bound - r.polar_lower;
  if (polar.certification != Certification::kHeuristic) {
    r.polar_upper = polar.estimate.upper;
    r.dominance_holds = r.polynomial_lower <= r.polar_upper * (1.0 + 1e-12) + 1e-12;
  }
  return r;
}

MultilinearInterpolationReport multilinear_interpolation_check(const SymMultilinearMap& t,
                                                               const Couple& x, const Couple& y,
                                                               double theta,
                                                               const AscentOptions& options,
                                                               std::uint64_t seed) {
  MultilinearInterpolationReport r;
  const auto [m0, c0] = certified_multilinear_upper(t, x.space0(), y.space0());
  const auto [m1, c1] = certified_multilinear_upper(t, x.space1(), y.space1());
  r.m0 = m0;
  r.m1 = m1;
  r.heuristic = c0 == Certification::kHeuristic || c1 == Certification::kHeuristic;
  r.bound = std::pow(m0, 1.0 - theta) * std::pow(m1, theta);
  const WeightedSpace x_theta = interpolated_space(InterpolationRequest(x, theta));
  const WeightedSpace y_theta = interpolated_space(InterpolationRequest(y, theta));
  r.lower_theta = estimate_multilinear_norm(t, x_theta, y_theta, options, seed).estimate.lower;
  r.holds = r.lower_theta <= r.bound + 1e-9;
  return r;
}

// ---------------------------------------------------------------- radii

double radius_from_norms(const TaylorData& data) {
  const int top = data.truncation();
  if (top < 8) throw DomainError("radius_from_norms: truncation M_max must be >= 8");
  const int first = (top + 1) / 2;
  double worst = 0.0;
  for (int m = std::max(first, 1); m <= top; ++m) {
    const double v = data.norms[static_cast<std::size_t>(m)];
    if (v < 0.0 || !std::isfinite(v)) throw DomainError("radius_from_norms: norms must be finite and >= 0");
    if (v > 0.0) worst = std::max(worst, std::pow(v, 1.0 / m));
  }
  return worst > 0.0 ? 1.0 / worst : kInf;
}

RadiusReport radius_bound_check(const TaylorData& data0, const TaylorData& data1,
                                const TaylorData& data_theta, double theta, double tolerance) {
  RadiusReport r;
  r.r0 = radius_from_norms(data0);
  r.r1 = radius_from_norms(data1);
  r.r_theta = radius_from_norms(data_theta);
  r.heuristic = !(data0.certified && data1.certified && data_theta.certified);
  const double log_bound = (1.0 - theta) * std::log(r.r0) + theta * std::log(r.r1) - 1.0;
  r.bound = std::exp(log_bound);
  if (std::isinf(r.r_theta)) {
    r.holds = true;
  } else {
    r.holds = r.r_theta >= r.bound * (1.0 - tolerance);
  }
  return r;
}

}  // namespace interp
