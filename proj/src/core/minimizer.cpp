// Copyright 2026 The dfs-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "dfs_forge/minimizer.hpp"

#include <algorithm>
#include <cmath>

namespace dfs_forge {

namespace {
constexpr double kArmijo = 1e-4;
constexpr int kMaxHalvings = 40;
}  // namespace

Eigen::VectorXd central_difference_gradient(const ValueFn& f, const Eigen::VectorXd& x, double h) {
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double up = f(probe);
    probe[i] = x[i] - h;
    const double down = f(probe);
    probe[i] = x[i];
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

MinimizerResult minimize_bfgs(const ValueFn& f, const GradientFn& gradient, Eigen::VectorXd x0,
                              const MinimizerOptions& options) {
  const Eigen::Index n = x0.size();
  MinimizerResult res;
  res.x = std::move(x0);
  res.value = f(res.x);
  res.evaluations = 1;
  res.history.push_back(res.value);
  if (n == 0) {
    res.converged = true;
    return res;
  }

  auto grad_at = [&](const Eigen::VectorXd& x, double fx) {
    Eigen::VectorXd g(n);
    if (gradient) {
      gradient(x, fx, g);
    } else {
      g = central_difference_gradient(f, x, options.gradient_step);
    }
    res.evaluations += static_cast<int>(2 * n);
    return g;
  };

  auto reached = [&](double v) { return options.value_tolerance > 0.0 && v <= options.value_tolerance; };
  Eigen::VectorXd g = grad_at(res.x, res.value);
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
  bool fresh = true;  // hinv is the identity

  while (res.iterations < options.max_iterations) {
    if (reached(res.value) || g.cwiseAbs().maxCoeff() <= options.gradient_tolerance) {
      res.converged = true;
      break;
    }
    Eigen::VectorXd d = -hinv * g;
    double slope = g.dot(d);
    if (!(slope < 0.0)) {
      hinv.setIdentity();
      fresh = true;
      d = -g;
      slope = g.dot(d);
    }
    const double longest = d.cwiseAbs().maxCoeff();
    if (longest > options.max_step) {
      d *= options.max_step / longest;
      slope = g.dot(d);
    }

    double t = 1.0;
    double f_new = 0.0;
    Eigen::VectorXd x_new;
    bool accepted = false;
    for (int k = 0; k < kMaxHalvings; ++k, t *= 0.5) {
      x_new = res.x + t * d;
      f_new = f(x_new);
      ++res.evaluations;
      if (std::isfinite(f_new) && f_new <= res.value + kArmijo * t * slope) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (fresh) break;  // no descent even along -g: noise floor reached
      hinv.setIdentity();
      fresh = true;
      continue;
    }

    const double previous = res.value;
    Eigen::VectorXd g_new = grad_at(x_new, f_new);
    const Eigen::VectorXd s = x_new - res.x;
    const Eigen::VectorXd y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-300) {
      if (fresh) {
        hinv *= sy / y.squaredNorm();
        fresh = false;
      }
      const double rho = 1.0 / sy;
      const Eigen::VectorXd hy = hinv * y;
      // (I - ρ s yᵀ) H (I - ρ y sᵀ) + ρ s sᵀ, expanded.
      hinv += (rho * rho * y.dot(hy) + rho) * (s * s.transpose()) - rho * (hy * s.transpose() + s * hy.transpose());
    }
    res.x = std::move(x_new);
    res.value = f_new;
    g = std::move(g_new);
    ++res.iterations;
    res.history.push_back(res.value);
    if (options.relative_tolerance > 0.0 && previous - f_new <= options.relative_tolerance * previous) {
      res.converged = true;
      break;
    }
  }
  if (reached(res.value)) res.converged = true;
  return res;
}

}  // namespace dfs_forge
