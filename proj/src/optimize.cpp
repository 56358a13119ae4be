#include "interp_lab/optimize.hpp"

#include <cmath>
#include <deque>

namespace interp {

double soft_maximum(const RVector& values, double tau, RVector& weights) {
  const double top = values.maxCoeff();
  weights = ((values.array() - top) / tau).exp();
  const double total = weights.sum();
  weights /= total;
  return top + tau * std::log(total);
}

LbfgsResult minimize_lbfgs(const SmoothObjective& objective, RVector x0,
                           const LbfgsOptions& options) {
  LbfgsResult result;
  RVector x = std::move(x0);
  RVector grad(x.size());
  double value = objective(x, grad);

  std::deque<RVector> s_hist;
  std::deque<RVector> y_hist;
  std::deque<double> rho_hist;

  RVector trial(x.size());
  RVector trial_grad(x.size());
  int iter = 0;
  bool converged = false;
  double last_change = kInf;

  for (; iter < options.max_iterations; ++iter) {
    if (grad.norm() <= options.gradient_tolerance * std::max(1.0, std::abs(value))) {
      converged = true;
      break;
    }

    // two-loop recursion
    RVector q = grad;
    std::vector<double> alpha(s_hist.size());
    for (std::size_t i = s_hist.size(); i-- > 0;) {
      alpha[i] = rho_hist[i] * s_hist[i].dot(q);
      q -= alpha[i] * y_hist[i];
    }
    if (!s_hist.empty()) {
      const double gamma = s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
      q *= gamma;
    } else {
      q /= std::max(1.0, grad.norm());
    }
    for (std::size_t i = 0; i < s_hist.size(); ++i) {
      const double beta = rho_hist[i] * y_hist[i].dot(q);
      q += (alpha[i] - beta) * s_hist[i];
    }
    RVector direction = -q;
    double slope = grad.dot(direction);
    if (!(slope < 0.0)) {
      // lost descent; restart from steepest descent
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      direction = -grad / std::max(1.0, grad.norm());
      slope = grad.dot(direction);
    }

    double step = 1.0;
    double trial_value = value;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      trial = x + step * direction;
      trial_value = objective(trial, trial_grad);
      if (std::isfinite(trial_value) && trial_value <= value + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      converged = true;  // no further progress representable at this precision
      break;
    }

    RVector s = trial - x;
    RVector y = trial_grad - grad;
    const double sy = s.dot(y);
    if (sy > 1e-16 * s.norm() * y.norm()) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > options.history) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }

    last_change = std::abs(value - trial_value);
    x.swap(trial);
    grad.swap(trial_grad);
    value = trial_value;
    if (last_change <= options.relative_tolerance * std::max(1.0, std::abs(value))) {
      converged = true;
      ++iter;
      break;
    }
  }

  result.x = std::move(x);
  result.value = value;
  result.status.converged = converged;
  result.status.iterations = iter;
  result.status.achieved_tolerance = last_change;
  return result;
}

}  // namespace interp
