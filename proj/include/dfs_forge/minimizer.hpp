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


#ifndef DFS_FORGE_MINIMIZER_HPP
#define DFS_FORGE_MINIMIZER_HPP

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace dfs_forge {

struct MinimizerOptions {
  int max_iterations = 200;
  double gradient_step = 1e-6;
  /// Stop once the value is at or below this; 0 disables.
  double value_tolerance = 0.0;
  /// Stop once the largest gradient component is at or below this.
  double gradient_tolerance = 1e-15;
  /// Stop once an iteration improves the value by less than this fraction.
  double relative_tolerance = 0.0;
  /// Largest change of any single variable in one line search.
  double max_step = 0.5;
};

struct MinimizerResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  std::vector<double> history;  // value after every accepted iteration, starting point first
};

using ValueFn = std::function<double(const Eigen::VectorXd&)>;
/// Fills `grad` at `x`; `fx` is the value already known there.
using GradientFn = std::function<void(const Eigen::VectorXd& x, double fx, Eigen::VectorXd& grad)>;

/// Central differences with step h.
Eigen::VectorXd central_difference_gradient(const ValueFn& f, const Eigen::VectorXd& x, double h);

/// Quasi-Newton (BFGS inverse-Hessian update, Armijo backtracking). Values
/// in the history never increase. A null `gradient` uses central differences.
MinimizerResult minimize_bfgs(const ValueFn& f, const GradientFn& gradient, Eigen::VectorXd x0,
                              const MinimizerOptions& options);

}  // namespace dfs_forge

#endif  // DFS_FORGE_MINIMIZER_HPP
