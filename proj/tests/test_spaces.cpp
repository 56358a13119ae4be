#include <doctest.h>

#include <cmath>

#include "interp_lab/random.hpp"
#include "interp_lab/spaces.hpp"

using namespace interp;

namespace {

CVector vec(std::initializer_list<Complex> v) {
  CVector x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (auto c : v) x[i++] = c;
  return x;
}

RVector rvec(std::initializer_list<double> v) {
  RVector x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (auto c : v) x[i++] = c;
  return x;
}

// brute force K(t, x) over moduli r in [0, |x|] on a grid, dim 2
double k_grid(const Couple& c, const CVector& x, double t, int steps) {
  double best = 1e300;
  for (int i = 0; i <= steps; ++i) {
    for (int j = 0; j <= steps; ++j) {
      CVector x0(2);
      x0[0] = x[0] * (static_cast<double>(i) / steps);
      x0[1] = x[1] * (static_cast<double>(j) / steps);
      best = std::min(best, c.space0().norm(x0) + t * c.space1().norm(x - x0));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("weighted norms by hand") {
  const WeightedSpace s(Exponent(2.0), rvec({4.0, 1.0}));
  // sqrt(4*9 + 16) = sqrt(52)
  CHECK(s.norm(vec({3.0, {0.0, 4.0}})) == doctest::Approx(std::sqrt(52.0)).epsilon(1e-15));
  const WeightedSpace inf(Exponent::infinity(), rvec({2.0, 0.5}));
  CHECK(inf.norm(vec({1.0, 3.0})) == doctest::Approx(2.0));
  const WeightedSpace one(Exponent(1.0), rvec({1.0, 2.0, 3.0}));
  CHECK(one.norm(vec({1.0, -1.0, {0, 2.0}})) == doctest::Approx(9.0));
  CHECK(WeightedSpace::lp(3, Exponent(2.0)).norm(CVector::Zero(3)) == 0.0);
}

TEST_CASE("space validation") {
  CHECK_THROWS_AS(WeightedSpace(Exponent(2.0), rvec({1.0, 0.0})), std::invalid_argument);
  CHECK_THROWS_AS(WeightedSpace(Exponent(2.0), rvec({1.0, -1.0})), std::invalid_argument);
  CHECK_THROWS_AS(Exponent(0.5), std::exception);
  CHECK_THROWS_AS(Couple(WeightedSpace::lp(2, Exponent(1.0)), WeightedSpace::lp(3, Exponent(1.0))), DimensionMismatch);
  CHECK_THROWS_AS(WeightedSpace::lp(2, Exponent(1.0)).norm(CVector::Zero(3)), DimensionMismatch);
}

TEST_CASE("from_multipliers survives exponents whose weights overflow") {
  const WeightedSpace s = WeightedSpace::from_multipliers(Exponent(2000.0), rvec({3.0, 1.0}));
  CHECK(s.norm(vec({1.0, 0.0})) == doctest::Approx(3.0));
}

TEST_CASE("dual norm satisfies Hoelder and is attained") {
  Rng rng(7);
  for (double p : {1.0, 1.5, 2.0, 4.0}) {
    const WeightedSpace s(Exponent(p), rvec({0.5, 2.0, 1.3}));
    for (int i = 0; i < 200; ++i) {
      const CVector x = rng.complex_vector(3);
      const CVector y = rng.complex_vector(3);
      CHECK(std::abs(y.dot(x)) <= s.norm(x) * s.dual_norm(y) * (1 + 1e-12));
    }
  }
}

TEST_CASE("identity norm against sampled ratios") {
  Rng rng(11);
  const Exponent ps[] = {Exponent(1.0), Exponent(2.0), Exponent(3.0), Exponent::infinity()};
  for (auto p : ps) {
    for (auto q : ps) {
      const WeightedSpace from(p, rvec({1.0, 2.0, 0.5}));
      const WeightedSpace to(q, rvec({3.0, 1.0, 1.0}));
      const double exact = identity_norm(from, to);
      double sampled = 0.0;
      for (int i = 0; i < 3000; ++i) {
        const CVector x = rng.complex_vector(3);
        sampled = std::max(sampled, to.norm(x) / from.norm(x));
      }
      for (int i = 0; i < 3; ++i) {
        CVector e = CVector::Zero(3);
        e[i] = 1.0;
        sampled = std::max(sampled, to.norm(e) / from.norm(e));
      }
      CHECK(sampled <= exact * (1 + 1e-12));
      CHECK(sampled >= 0.85 * exact);
    }
  }
}

TEST_CASE("identity norm examples") {
  // l^1 -> l^inf on unweighted dim 3 is 1, l^inf -> l^1 is 3
  CHECK(identity_norm(WeightedSpace::lp(3, Exponent(1.0)), WeightedSpace::lp(3, Exponent::infinity())) == doctest::Approx(1.0));
  CHECK(identity_norm(WeightedSpace::lp(3, Exponent::infinity()), WeightedSpace::lp(3, Exponent(1.0))) == doctest::Approx(3.0));
  CHECK(identity_norm(WeightedSpace::lp(4, Exponent(2.0)), WeightedSpace::lp(4, Exponent(1.0))) == doctest::Approx(2.0));
}

TEST_CASE("K-functional matches the exact l1 / l_inf level formula") {
  const Couple c(WeightedSpace(Exponent(1.0), rvec({1.0, 2.0, 0.5})),
                 WeightedSpace(Exponent::infinity(), rvec({3.0, 1.0, 1.0})));
  const RVector a = c.space0().multipliers();
  const RVector b = c.space1().multipliers();
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const CVector x = rng.complex_vector(3);
    for (double t : {1e-3, 0.1, 1.0, 3.0, 100.0}) {
      // K = min over levels lambda of t lambda + sum a_i (|x_i| - lambda / b_i)_+
      double exact = 1e300;
      for (int k = -1; k < 3; ++k) {
        const double lam = k < 0 ? 0.0 : b[k] * std::abs(x[k]);
        double f = t * lam;
        for (int m = 0; m < 3; ++m) f += a[m] * std::max(0.0, std::abs(x[m]) - lam / b[m]);
        exact = std::min(exact, f);
      }
      const Decomposition d = k_functional(c, x, t);
      CHECK(d.objective == doctest::Approx(exact).epsilon(1e-7));
      CHECK(d.lower_bound <= exact * (1 + 1e-12));
      CHECK(d.status.converged);
      CHECK((d.part0 + d.part1 - x).norm() <= 1e-14 * x.norm() + 1e-300);
    }
  }
}

TEST_CASE("K-functional against a grid oracle for mixed exponents") {
  Rng rng(5);
  const Couple c(WeightedSpace(Exponent(1.5), rvec({1.0, 0.4})), WeightedSpace(Exponent(3.0), rvec({0.7, 2.5})));
  for (int i = 0; i < 20; ++i) {
    const CVector x = rng.complex_vector(2);
    for (double t : {0.3, 1.0, 2.0}) {
      const Decomposition d = k_functional(c, x, t);
      const double grid = k_grid(c, x, t, 400);
      CHECK(d.objective <= grid + 1e-9);
      CHECK(d.objective >= grid - 2e-2 * grid);
      CHECK(d.lower_bound <= d.objective);
    }
  }
}

TEST_CASE("K-functional edge cases") {
  const Couple c(WeightedSpace::lp(2, Exponent(2.0)), WeightedSpace::lp(2, Exponent(2.0)));
  CHECK(k_functional(c, CVector::Zero(2), 1.0).objective == 0.0);
  CHECK_THROWS_AS(k_functional(c, CVector::Ones(2), 0.0), DomainError);
  // equal spaces: K(t, x) = min(1, t) ||x||
  const CVector x = vec({1.0, {0.0, 2.0}});
  CHECK(k_functional(c, x, 0.25).objective == doctest::Approx(0.25 * std::sqrt(5.0)).epsilon(1e-8));
  CHECK(sum_norm(c, x).objective == doctest::Approx(std::sqrt(5.0)).epsilon(1e-8));
  CHECK(intersection_norm(c, x) == doctest::Approx(std::sqrt(5.0)));
}
