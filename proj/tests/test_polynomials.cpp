#include <doctest.h>

#include <cmath>
#include <vector>

#include "interp_lab/polynomials.hpp"

using namespace interp;

namespace {

// independent oracle: T(x_1..x_m) by looping over every full tuple
CVector brute_contraction(const SymMultilinearMap& t, const std::vector<CVector>& args) {
  const int n = t.domain_dim();
  const int m = t.degree();
  CVector out = CVector::Zero(t.codomain_dim());
  std::vector<int> tuple(m, 0);
  while (true) {
    Complex w = 1.0;
    for (int l = 0; l < m; ++l) w *= args[l][tuple[l]];
    out += w * t.entry(tuple);
    int l = m - 1;
    while (l >= 0 && ++tuple[l] == n) tuple[l--] = 0;
    if (l < 0) break;
  }
  return out;
}

long long binom(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("multiset index counts") {
  for (int n = 1; n <= 4; ++n) {
    for (int m = 1; m <= 4; ++m) {
      const MultisetIndex idx(n, m);
      CHECK(static_cast<long long>(idx.size()) == binom(n + m - 1, m));
      double total = 0.0;
      for (std::size_t r = 0; r < idx.size(); ++r) total += idx.multiplicity(r);
      CHECK(total == doctest::Approx(std::pow(n, m)));
    }
  }
  const MultisetIndex idx(3, 3);
  const std::vector<int> a{2, 0, 1}, b{0, 1, 2};
  CHECK(idx.rank(a) == idx.rank(b));
}

TEST_CASE("diagonal value matches the full contraction") {
  Rng rng(3);
  for (int m = 1; m <= 4; ++m) {
    const SymMultilinearMap t = SymMultilinearMap::random(m, 3, 2, rng);
    const CVector x = rng.complex_vector(3);
    const std::vector<CVector> args(m, x);
    const CVector brute = brute_contraction(t, args);
    CHECK((t.diagonal_value(x) - brute).norm() <= 1e-12 * (1 + brute.norm()));
    std::vector<CVector> mixed;
    for (int l = 0; l < m; ++l) mixed.push_back(rng.complex_vector(3));
    const CVector bm = brute_contraction(t, mixed);
    CHECK((t(mixed) - bm).norm() <= 1e-12 * (1 + bm.norm()));
  }
}

TEST_CASE("Jacobians against finite differences") {
  Rng rng(5);
  const SymMultilinearMap t = SymMultilinearMap::random(3, 3, 2, rng);
  const CVector x = rng.complex_vector(3);
  const CMatrix J = t.diagonal_jacobian(x);
  const double h = 1e-6;
  for (int j = 0; j < 3; ++j) {
    CVector e = CVector::Zero(3);
    e[j] = h;
    const CVector fd = (t.diagonal_value(x + e) - t.diagonal_value(x - e)) / (2 * h);
    CHECK((J.col(j) - fd).norm() <= 1e-6 * (1 + fd.norm()));
  }
  std::vector<CVector> args{rng.complex_vector(3), rng.complex_vector(3), rng.complex_vector(3)};
  const CMatrix S = t.slot_jacobian(args, 1);
  const CVector y = rng.complex_vector(3);
  std::vector<CVector> swapped = args;
  swapped[1] = y;
  CHECK((S * y - t(swapped)).norm() <= 1e-12 * (1 + S.norm()));
}

TEST_CASE("polarization and expansion identities") {
  Rng rng(6);
  for (int m = 1; m <= 5; ++m) {
    const HomPolynomial p(SymMultilinearMap::random(m, 3, 2, rng));
    std::vector<CVector> args;
    for (int l = 0; l < m; ++l) args.push_back(rng.complex_vector(3));
    CHECK(polarization_discrepancy(p, args).relative <= 1e-12);
    CHECK(lemma_expansion_check(p.polar(), rng.complex_vector(3), rng.complex_vector(3)).relative <= 1e-12);
  }
}

TEST_CASE("linear operator norms are exact") {
  CMatrix A(2, 2);
  A << 1.0, -2.0, Complex(0, 3.0), 0.5;
  const HomPolynomial p(SymMultilinearMap::linear(A));
  const WeightedSpace l1 = WeightedSpace::lp(2, Exponent(1.0));
  const WeightedSpace l2 = WeightedSpace::lp(2, Exponent(2.0));
  const WeightedSpace li = WeightedSpace::lp(2, Exponent::infinity());
  AscentOptions opts;
  // l1 -> l1: max column sum
  const double col = std::max(std::abs(A(0, 0)) + std::abs(A(1, 0)), std::abs(A(0, 1)) + std::abs(A(1, 1)));
  const OpNormEstimate a = estimate_op_norm(p, l1, l1, opts, 1);
  CHECK(a.certification == Certification::kExact);
  CHECK(a.estimate.upper == doctest::Approx(col));
  CHECK(a.estimate.lower == doctest::Approx(col).epsilon(1e-6));
  // l2 -> l2: largest singular value
  const double s = Eigen::JacobiSVD<CMatrix>(A).singularValues()[0];
  const OpNormEstimate b = estimate_op_norm(p, l2, l2, opts, 1);
  CHECK(b.estimate.upper == doctest::Approx(s));
  CHECK(b.estimate.lower == doctest::Approx(s).epsilon(1e-6));
  // l_inf -> l_inf: max row sum
  const double row = std::max(std::abs(A(0, 0)) + std::abs(A(0, 1)), std::abs(A(1, 0)) + std::abs(A(1, 1)));
  CHECK(estimate_op_norm(p, li, li, opts, 1).estimate.upper == doctest::Approx(row));
}

TEST_CASE("diagonal polynomial norm") {
  CVector d(3);
  d << 1.0, -2.0, 0.5;
  const WeightedSpace x = WeightedSpace::lp(3, Exponent(2.0));
  const WeightedSpace y = WeightedSpace::lp(3, Exponent::infinity());
  // sup |d_i| |x_i|^2 over the l2 ball: max |d_i|
  CHECK(diagonal_polynomial_norm(d, 2, x, y) == doctest::Approx(2.0));
  const WeightedSpace y1 = WeightedSpace::lp(3, Exponent(1.0));
  // l2 -> l1, m = 2: sum |d_i| x_i^2 <= max |d_i|
  CHECK(diagonal_polynomial_norm(d, 2, x, y1) == doctest::Approx(2.0));
  const HomPolynomial p(SymMultilinearMap::diagonal(3, d));
  const OpNormEstimate e = estimate_op_norm(p, x, y, AscentOptions{}, 2);
  CHECK(e.estimate.lower == doctest::Approx(diagonal_polynomial_norm(d, 3, x, y)).epsilon(1e-6));
}

TEST_CASE("martin constant and radius") {
  CHECK(martin_constant(1) == doctest::Approx(1.0));
  CHECK(martin_constant(2) == doctest::Approx(2.0));
  CHECK(martin_constant(3) == doctest::Approx(4.5));
  TaylorData geo;
  for (int m = 0; m <= 40; ++m) geo.norms.push_back(std::pow(0.5, m));
  CHECK(radius_from_norms(geo) == doctest::Approx(2.0));
  TaylorData zero;
  zero.norms.assign(41, 0.0);
  CHECK(std::isinf(radius_from_norms(zero)));
  TaylorData tiny;
  tiny.norms.assign(4, 1.0);
  CHECK_THROWS(radius_from_norms(tiny));
}

TEST_CASE("martin bound on a random quadratic") {
  Rng rng(8);
  const HomPolynomial p(SymMultilinearMap::random(2, 3, 2, rng));
  const WeightedSpace l2 = WeightedSpace::lp(3, Exponent(2.0));
  const MartinReport r = martin_bound_check(p, l2, WeightedSpace::lp(2, Exponent::infinity()), AscentOptions{}, 3);
  CHECK(r.checkable);
  CHECK(r.holds);
  CHECK(r.dominance_holds);
}
