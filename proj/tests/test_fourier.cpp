#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "interp_lab/fourier.hpp"
#include "interp_lab/serialization.hpp"

using namespace interp;

namespace {

CircleFunction from_lambda(int n, auto f) {
  CMatrix s(1, n);
  for (int j = 0; j < n; ++j) s(0, j) = f(2.0 * std::numbers::pi * j / n);
  return CircleFunction(s);
}

}  // namespace

TEST_CASE("constant and single harmonic") {
  const CoefficientTable c = coefficients(from_lambda(16, [](double) { return Complex(3.0, -1.0); }));
  CHECK(std::abs(c.coefficient(0)[0] - Complex(3.0, -1.0)) < 1e-14);
  for (int k = -8; k < 8; ++k)
    if (k != 0) CHECK(std::abs(c.coefficient(k)[0]) < 1e-14);

  const CoefficientTable h = coefficients(from_lambda(32, [](double t) { return 2.0 * std::exp(Complex(0, -3.0 * t)); }));
  CHECK(std::abs(h.coefficient(-3)[0] - 2.0) < 1e-13);
  CHECK(std::abs(h.coefficient(3)[0]) < 1e-13);
  CHECK(h.coefficient(100).norm() == 0.0);
}

TEST_CASE("size validation") {
  CHECK_THROWS(CircleFunction(CMatrix::Zero(1, 12)));
  CHECK_THROWS(CircleFunction(CMatrix::Zero(1, 4)));
}

TEST_CASE("round trip and Parseval") {
  Rng rng(1);
  for (int n : {8, 64, 1024}) {
    const CircleFunction f = random_band_limited(3, n, n / 4, rng);
    const CircleFunction g = synthesize(coefficients(f));
    CHECK((g.samples() - f.samples()).norm() <= 1e-12 * f.samples().norm());
    // direct O(N^2) DFT oracle for one coefficient
    Complex direct = 0.0;
    for (int j = 0; j < n; ++j) direct += f.samples()(1, j) * std::exp(Complex(0, -2.0 * std::numbers::pi * 2 * j / n));
    direct /= n;
    CHECK(std::abs(coefficients(f).coefficient(2)[1] - direct) <= 1e-12 * (1 + std::abs(direct)));
    const ParsevalReport p = parseval_check(f, rng.complex_vector(3));
    CHECK(p.relative <= 1e-12);
  }
}

TEST_CASE("Vallee Poussin window and projection") {
  CHECK(vallee_poussin_window(0, 4) == 1.0);
  CHECK(vallee_poussin_window(4, 4) == 1.0);
  CHECK(vallee_poussin_window(-6, 4) == doctest::Approx(0.5));
  CHECK(vallee_poussin_window(8, 4) == 0.0);
  CHECK(vallee_poussin_window(9, 4) == 0.0);

  Rng rng(2);
  const CircleFunction f = random_band_limited(2, 64, 4, rng);
  const CoefficientTable t = coefficients(f);
  const CoefficientTable s = vallee_poussin(t, 4);
  CHECK((s.coefficients() - t.coefficients()).norm() <= 1e-14);  // band-limited input is fixed
  CHECK_THROWS_AS(vallee_poussin(t, 16), DomainError);

  LaurentFamily phi(1, 10);
  for (int k = -10; k <= 10; ++k) phi.set_coefficient(k, CVector::Ones(1));
  const LaurentFamily v = vallee_poussin(phi, 3);
  CHECK(std::abs(v.coefficient(3)[0] - 1.0) < 1e-15);
  CHECK(std::abs(v.coefficient(-5)[0] - (2.0 - 5.0 / 3.0)) < 1e-15);
  CHECK(std::abs(v.coefficient(6)[0]) < 1e-15);
}

TEST_CASE("binary circle function round trip") {
  Rng rng(3);
  const CircleFunction f = random_band_limited(2, 16, 3, rng);
  std::stringstream buf;
  write_circle_function(buf, f);
  const CircleFunction g = read_circle_function(buf);
  CHECK(g.samples() == f.samples());
}
