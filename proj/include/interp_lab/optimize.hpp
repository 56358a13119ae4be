#pragma once

#include <functional>

#include "interp_lab/types.hpp"

namespace interp {

/// Smooth objective: returns f(x) and writes grad f(x) into `grad`.
using SmoothObjective = std::function<double(const RVector& x, RVector& grad)>;

struct LbfgsOptions {
  int max_iterations = 500;
  int history = 8;
  /// Stop once a step moves the objective by less than this (relative).
  double relative_tolerance = 1e-12;
  double gradient_tolerance = 1e-12;
};

struct LbfgsResult {
  RVector x;
  double value = 0.0;
  SolverStatus status;
};

/// Limited-memory BFGS with Armijo backtracking.
LbfgsResult minimize_lbfgs(const SmoothObjective& objective, RVector x0,
                           const LbfgsOptions& options = {});

/// Numerically stable log-sum-exp soft maximum at temperature tau:
/// max(v) <= softmax <= max(v) + tau * log(v.size()). Writes the softmax
/// weights (a probability vector) into `weights`.
double soft_maximum(const RVector& values, double tau, RVector& weights);

}  // namespace interp
