// Copyright 2026 The dpsco Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPSCO_OPTIMIZER_PROBLEM_H_
#define DPSCO_OPTIMIZER_PROBLEM_H_

#include <functional>
#include <optional>

#include <Eigen/Dense>

namespace dpsco {

// Per-sample gradients at w. Samples are the columns of `samples`; column i
// of the result is the gradient of l(w, Z_i).
using GradientOracle = std::function<Eigen::MatrixXd(
    const Eigen::VectorXd& w, const Eigen::MatrixXd& samples)>;

// Projection onto the convex feasible set. Must be idempotent.
using Projection = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

// Closed-form population quantities, available for synthetic problems.
struct PopulationTruth {
  Eigen::VectorXd minimizer;
  double minimum = 0.0;
  std::function<double(const Eigen::VectorXd&)> risk;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;

  double ExcessRisk(const Eigen::VectorXd& w) const {
    return risk(w) - minimum;
  }
};

struct ProblemInstance {
  GradientOracle gradient_oracle;
  Projection projection;
  // Diameter L of the feasible set.
  double diameter = 0.0;
  // Smoothness lambda of the population risk.
  double smoothness = 0.0;
  // Directional p-th moment bound M of the per-sample gradients on W.
  double moment_bound = 0.0;
  double moment_order = 2.0;
  int dimension = 0;
  std::optional<PopulationTruth> truth;
};

// Euclidean projection onto the closed ball of `radius` about `center`.
Projection BallProjection(Eigen::VectorXd center, double radius);

}  // namespace dpsco

#endif  // DPSCO_OPTIMIZER_PROBLEM_H_
