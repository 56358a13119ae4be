#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace interp {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Lebesgue exponent p in [1, inf]. Infinity is a first-class value, not a
/// large finite stand-in.
class Exponent {
 public:
  constexpr Exponent() = default;
  explicit Exponent(double p) : p_(p) {
    if (!(p >= 1.0)) throw std::invalid_argument("exponent must lie in [1, inf]");
  }
  static Exponent infinity() { return Exponent(kInf); }

  [[nodiscard]] double value() const { return p_; }
  [[nodiscard]] bool is_infinite() const { return p_ == kInf; }
  /// 1/p with 1/inf = 0.
  [[nodiscard]] double reciprocal() const { return is_infinite() ? 0.0 : 1.0 / p_; }
  /// Hoelder conjugate exponent.
  [[nodiscard]] Exponent conjugate() const {
    if (is_infinite()) return Exponent(1.0);
    if (p_ == 1.0) return infinity();
    return Exponent(p_ / (p_ - 1.0));
  }
  static Exponent from_reciprocal(double r) {
    if (r <= 0.0) return infinity();
    return Exponent(1.0 / r);
  }

  friend bool operator==(const Exponent&, const Exponent&) = default;

 private:
  double p_ = 2.0;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Lower/upper bracket on a quantity whose exact value is not always
/// computable.
struct NormEstimate {
  double lower = 0.0;
  double upper = kInf;

  [[nodiscard]] bool tight(double rel_tol = 1e-9) const {
    return upper - lower <= rel_tol * std::max(1.0, upper);
  }
};

/// Convergence record attached to every iterative result.
struct SolverStatus {
  bool converged = true;
  int iterations = 0;
  double achieved_tolerance = 0.0;
};

inline void require_dim(std::ptrdiff_t got, std::ptrdiff_t want, const char* what) {
  if (got != want) {
    throw DimensionMismatch(std::string(what) + ": expected dimension " + std::to_string(want) +
                            ", got " + std::to_string(got));
  }
}

}  // namespace interp
