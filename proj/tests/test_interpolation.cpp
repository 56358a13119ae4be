#include <doctest.h>

#include <cmath>

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

}  // namespace

TEST_CASE("calderon exponent") {
  CHECK(calderon_exponent(0.5, Exponent(1.0), Exponent::infinity()).value() == doctest::Approx(2.0));
  CHECK(calderon_exponent(0.25, Exponent(2.0), Exponent(2.0)).value() == doctest::Approx(2.0));
  CHECK(calderon_exponent(0.0, Exponent(1.0), Exponent::infinity()).value() == doctest::Approx(1.0));
  CHECK(calderon_exponent(1.0, Exponent(1.0), Exponent::infinity()).is_infinite());
}

TEST_CASE("closed form examples") {
  const Couple c(WeightedSpace::lp(2, Exponent(1.0)), WeightedSpace::lp(2, Exponent::infinity()));
  CVector x(2);
  x << 3.0, 4.0;
  CHECK(closed_form_norm(InterpolationRequest(c, 0.5), x) == doctest::Approx(5.0));
  CHECK(closed_form_norm(InterpolationRequest(c, 0.0), x) == doctest::Approx(7.0));
  CHECK(closed_form_norm(InterpolationRequest(c, 1.0), x) == doctest::Approx(4.0));
  // weighted l2: w_theta = w0^(1-theta) w1^theta
  const Couple w(WeightedSpace(Exponent(2.0), rvec({4.0})), WeightedSpace(Exponent(2.0), rvec({1.0})));
  CVector y(1);
  y << 1.0;
  CHECK(closed_form_norm(InterpolationRequest(w, 0.5), y) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(InterpolationRequest(w, 1.5), DomainError);
}

TEST_CASE("numeric mode brackets the closed form") {
  const Couple c(WeightedSpace(Exponent(2.0), rvec({1.0, 3.0})), WeightedSpace(Exponent(2.0), rvec({2.0, 0.5})));
  CVector x(2);
  x << 1.0, Complex(0.5, -1.0);
  NumericNormOptions opts;
  opts.minimize.degree = 16;
  opts.minimize.grid.samples = 128;
  const InterpolatedNorm n = interpolated_norm(InterpolationRequest(c, 0.4), x, NormMode::kBoth, opts);
  REQUIRE(n.closed_form.has_value());
  CHECK(n.estimate.lower <= *n.closed_form * (1 + 1e-9));
  CHECK(n.estimate.upper >= *n.closed_form * (1 - 1e-6));
  CHECK(n.estimate.upper <= *n.closed_form * 1.05);
}

TEST_CASE("interpolation inequality on random couples") {
  Rng rng(9);
  const Exponent ps[] = {Exponent(1.0), Exponent(2.0), Exponent(3.0), Exponent::infinity()};
  for (int i = 0; i < 500; ++i) {
    const Couple c(WeightedSpace(ps[rng.integer(0, 3)], rvec({rng.uniform(0.2, 5), rng.uniform(0.2, 5), rng.uniform(0.2, 5)})),
                   WeightedSpace(ps[rng.integer(0, 3)], rvec({rng.uniform(0.2, 5), rng.uniform(0.2, 5), rng.uniform(0.2, 5)})));
    const InequalityReport r = interpolation_inequality_check(InterpolationRequest(c, rng.uniform()), rng.complex_vector(3));
    CHECK(r.implied_c <= 1.0 + 1e-9);
  }
}

TEST_CASE("Lions-Peetre decomposition reproduces x with finite constants") {
  Rng rng(12);
  const Couple c(WeightedSpace(Exponent(1.0), rvec({1.0, 2.0})), WeightedSpace(Exponent(4.0), rvec({0.5, 3.0})));
  const InterpolationRequest req(c, 0.3);
  for (int i = 0; i < 30; ++i) {
    const CVector x = rng.complex_vector(2);
    for (double t : {1e-3, 1.0, 1e3}) {
      const LionsPeetreReport r = lions_peetre_decompose(req, x, t);
      CHECK((r.decomposition.part0 + r.decomposition.part1 - x).norm() <= 1e-13 * x.norm());
      CHECK(std::isfinite(r.constant0));
      CHECK(std::isfinite(r.constant1));
    }
  }
}

TEST_CASE("Peetre representation") {
  Rng rng(13);
  const Couple c(WeightedSpace(Exponent(2.0), rvec({1.0, 10.0, 0.1})), WeightedSpace(Exponent(2.0), rvec({1.0, 0.1, 10.0})));
  const InterpolationRequest req(c, 0.5);
  const CVector x = rng.complex_vector(3);
  const PeetreRepresentation rep = dyadic_threshold_representation(req, x, 8);
  CHECK((rep.reconstruct() - x).norm() <= 1e-14 * x.norm());
  const NormEstimate e = peetre_norm_bracket(req, rep, 64, 1);
  CHECK(e.lower <= e.upper);
  CHECK(e.lower > 0.0);
}
