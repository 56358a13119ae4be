#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "interp_lab/compactness.hpp"

using namespace interp;

namespace {

// naive oracle: recompute every distance from scratch each round
std::vector<std::size_t> naive_greedy(const std::vector<CVector>& pts, double eps, const WeightedSpace& s) {
  std::vector<std::size_t> chosen{0};
  while (true) {
    double best = -1.0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      double d = std::numeric_limits<double>::infinity();
      for (std::size_t c : chosen) d = std::min(d, s.norm(pts[i] - pts[c]));
      if (d > best) {
        best = d;
        arg = i;
      }
    }
    if (best <= eps) return chosen;
    chosen.push_back(arg);
  }
}

}  // namespace

TEST_CASE("truncation projection is a contraction") {
  Rng rng(1);
  const CMatrix P = truncation_projection(3, 5);
  CHECK((P * P - P).norm() == 0.0);
  const WeightedSpace spaces[] = {WeightedSpace::lp(5, Exponent(1.0)), WeightedSpace::lp(5, Exponent(2.0)),
                                  WeightedSpace::lp(5, Exponent::infinity())};
  for (int i = 0; i < 10000; ++i) {
    const CVector x = rng.complex_vector(5);
    const WeightedSpace& s = spaces[i % 3];
    CHECK(s.norm(P * x) <= s.norm(x) + 1e-15);
  }
}

TEST_CASE("greedy net matches the naive oracle") {
  std::vector<CVector> pts;
  for (int j = 0; j < 1000; ++j) {
    CVector v(2);
    const double t = 2.0 * std::numbers::pi * j / 1000;
    v << std::cos(t), std::sin(t);
    pts.push_back(v);
  }
  const WeightedSpace l2 = WeightedSpace::lp(2, Exponent(2.0));
  const EpsilonNet net = build_net(pts, 0.1, l2);
  CHECK(net.center_indices == naive_greedy(pts, 0.1, l2));
  for (const auto& p : pts) CHECK(net.distance(p) <= 0.1);
  // chord 0.1 on the unit circle covers an arc of about 0.2
  CHECK(net.size() >= 31);
  CHECK(net.size() <= 64);
}

TEST_CASE("singular values of a diagonal map") {
  CMatrix L = CMatrix::Zero(3, 3);
  L(0, 0) = 3.0;
  L(1, 1) = 2.0;
  L(2, 2) = 1.0;
  const WeightedSpace l2 = WeightedSpace::lp(3, Exponent(2.0));
  const RVector s = singular_values(L, l2, l2);
  CHECK(s[0] == doctest::Approx(3.0));
  CHECK(s[1] == doctest::Approx(2.0));
  CHECK(s[2] == doctest::Approx(1.0));
  RVector w(3);
  w << 4.0, 1.0, 1.0;  // a_0 = 2
  const RVector t = singular_values(L, WeightedSpace(Exponent(2.0), w), l2);
  CHECK(t[0] == doctest::Approx(2.0));
  CHECK(t[1] == doctest::Approx(1.5));
  CHECK_THROWS(singular_values(L, WeightedSpace::lp(3, Exponent(1.0)), l2));
}

TEST_CASE("truncation chain at full rank has zero residual") {
  Rng rng(2);
  const CompactProxy p = CompactProxy::geometric(2, 3, 4, 0.5, rng);
  CHECK(p.sigma()[2] == doctest::Approx(0.25));
  const Couple x(WeightedSpace::lp(3, Exponent(2.0)), WeightedSpace::lp(3, Exponent(2.0)));
  const Couple y(WeightedSpace::lp(4, Exponent::infinity()), WeightedSpace::lp(4, Exponent::infinity()));
  AscentOptions opts;
  opts.starts = 8;
  const TruncationChainReport r = truncation_chain_check(p, x, y, 0.5, {1, 2, 4}, opts, 3);
  REQUIRE(r.rows.size() == 3);
  CHECK(r.rows.back().lhs == 0.0);
  CHECK(r.inequality_holds);
  CHECK(r.rows[0].lhs >= r.rows[1].lhs);
}
