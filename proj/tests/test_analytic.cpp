#include <doctest.h>

#include <cmath>
#include <numbers>

#include "interp_lab/analytic.hpp"
#include "interp_lab/interpolation.hpp"
#include "interp_lab/random.hpp"

using namespace interp;

namespace {

RVector rvec(std::initializer_list<double> v) {
  RVector x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (auto c : v) x[i++] = c;
  return x;
}

Couple l2_couple(const RVector& w0, const RVector& w1) {
  return {WeightedSpace(Exponent(2.0), w0), WeightedSpace(Exponent(2.0), w1)};
}

}  // namespace

TEST_CASE("Laurent evaluation against the direct sum") {
  Rng rng(1);
  LaurentFamily phi(2, 3);
  for (int k = -3; k <= 3; ++k) phi.set_coefficient(k, rng.complex_vector(2));
  const Complex z = std::polar(1.7, 0.4);
  CVector direct = CVector::Zero(2);
  for (int k = -3; k <= 3; ++k) direct += phi.coefficient(k) * std::pow(z, k);
  CHECK((phi(z) - direct).norm() <= 1e-12 * direct.norm());
  CHECK_THROWS_AS(phi(Complex(0.5, 0.0)), DomainError);
  CHECK_THROWS_AS(phi(Complex(3.0, 0.0)), DomainError);
  CHECK(phi.padded(5).degree() == 5);
  CHECK((phi.padded(5)(z) - phi(z)).norm() <= 1e-12 * direct.norm());
}

TEST_CASE("boundary values sample both circles") {
  LaurentFamily phi(1, 1);
  CVector one(1);
  one[0] = 1.0;
  phi.set_coefficient(1, one);  // phi(z) = z
  const CMatrix inner = boundary_values(phi, 0.0, BoundaryGrid{8});
  const CMatrix outer = boundary_values(phi, 1.0, BoundaryGrid{8});
  CHECK(std::abs(inner(0, 2) - Complex(0.0, 1.0)) < 1e-14);
  CHECK(std::abs(std::abs(outer(0, 5)) - std::exp(1.0)) < 1e-13);
}

TEST_CASE("family norm grid requirement") {
  const Couple c = l2_couple(rvec({1.0}), rvec({2.0}));
  CHECK_THROWS_AS(family_norm(LaurentFamily(1, 8), c, BoundaryGrid{16}), DomainError);
}

TEST_CASE("constant family realizes max of endpoint norms") {
  const Couple c = l2_couple(rvec({1.0, 3.0}), rvec({2.0, 0.5}));
  CVector x(2);
  x << 1.0, Complex(0.0, -2.0);
  CHECK(family_norm(LaurentFamily::constant(x), c, BoundaryGrid{16}) ==
        doctest::Approx(std::max(c.space0().norm(x), c.space1().norm(x))));
}

TEST_CASE("minimize_family brackets the closed form") {
  Rng rng(2);
  MinimizeOptions opts;
  opts.degree = 16;
  opts.grid.samples = 128;
  for (int i = 0; i < 4; ++i) {
    const Couple c = l2_couple(rvec({rng.uniform(0.3, 3), rng.uniform(0.3, 3)}), rvec({rng.uniform(0.3, 3), rng.uniform(0.3, 3)}));
    const double theta = rng.uniform(0.2, 0.8);
    const CVector x = rng.complex_vector(2);
    const double closed = closed_form_norm(InterpolationRequest(c, theta), x);
    const FamilyMinimum m = minimize_family(c, theta, x, opts);
    CHECK(m.value >= closed - 1e-6);
    CHECK(m.value <= 1.05 * closed);
    // the family really interpolates x
    CHECK((m.family(std::exp(theta)) - x).norm() <= 1e-9 * x.norm());
  }
  const Couple c = l2_couple(rvec({1.0}), rvec({1.0}));
  CHECK(minimize_family(c, 0.5, CVector::Zero(1)).value == 0.0);
}

TEST_CASE("three lines check examples") {
  const Couple same = l2_couple(rvec({1.0, 2.0}), rvec({1.0, 2.0}));
  CVector x(2);
  x << 1.0, 2.0;
  const ThreeLinesReport r = three_lines_check(LaurentFamily::constant(x), same, 0.4, BoundaryGrid{32});
  CHECK(r.implied_c == doctest::Approx(1.0).epsilon(1e-12));
  const ThreeLinesReport z = three_lines_check(LaurentFamily(2, 2), same, 0.4, BoundaryGrid{32});
  CHECK(z.left == 0.0);
  CHECK(z.right == 0.0);
  CHECK_FALSE(z.anomaly);
}

TEST_CASE("mho membership examples") {
  const Couple c(WeightedSpace(Exponent(1.0), rvec({1.0, 2.0})), WeightedSpace(Exponent::infinity(), rvec({0.5, 1.0})));
  const MembershipBracket zero = mho_membership(LaurentFamily(2, 3), c, 64, 1);
  CHECK(zero.verdict == Membership::kMember);
  CHECK(zero.upper == 0.0);

  CVector c0(2);
  c0 << 0.1, Complex(0.0, 0.1);
  c0 *= 0.5 / std::max(c.space0().norm(c0), c.space1().norm(c0));
  const MembershipBracket single = mho_membership(LaurentFamily::constant(c0), c, 64, 1);
  CHECK(single.lower == doctest::Approx(0.5));
  CHECK(single.upper == doctest::Approx(0.5));
  CHECK(single.verdict == Membership::kMember);

  // nonnegative coefficients: lambda = 1 attains the entrywise bound
  LaurentFamily pos(2, 1);
  CVector a(2);
  a << 0.3, 0.2;
  CVector b(2);
  b << 0.1, 0.4;
  pos.set_coefficient(-1, a);
  pos.set_coefficient(1, b);
  const MembershipBracket p = mho_membership(pos, c, 64, 1);
  CHECK(p.lower == doctest::Approx(p.upper).epsilon(1e-12));

  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    LaurentFamily phi(2, 2);
    for (int k = -2; k <= 2; ++k) phi.set_coefficient(k, rng.complex_vector(2));
    const MembershipBracket m = mho_membership(phi, c, 64, i);
    CHECK(m.lower <= m.upper);
  }
}
