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

#include "dpsco/synthetic/quadratic.h"

#include <cmath>

#include "absl/strings/str_format.h"

namespace dpsco {

absl::StatusOr<ProblemInstance> MakeQuadraticProblem(
    const HeavyTailSpec& spec, double diameter, double curvature,
    const Eigen::VectorXd& minimizer, const Eigen::VectorXd& center) {
  const int d = spec.dimension();
  if (!(diameter > 0) || !(curvature > 0)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "diameter and curvature must be positive, got %g and %g", diameter,
        curvature));
  }
  if (minimizer.size() != d || center.size() != d) {
    return absl::InvalidArgumentError(
        "minimizer and center must match the spec dimension");
  }
  const double radius = diameter / 2;
  if (!((minimizer - center).norm() < radius)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "minimizer lies %g from the center, outside the open ball of radius %g",
        (minimizer - center).norm(), radius));
  }

  ProblemInstance problem;
  problem.dimension = d;
  problem.diameter = diameter;
  problem.smoothness = curvature;
  problem.moment_order = spec.moment_order();
  problem.moment_bound = spec.moment_bound() + curvature * diameter;
  problem.projection = BallProjection(center, radius);

  const Eigen::VectorXd mean = spec.mean();
  problem.gradient_oracle = [minimizer, mean, curvature](
                                const Eigen::VectorXd& w,
                                const Eigen::MatrixXd& samples) {
    Eigen::MatrixXd grads = -samples;
    grads.colwise() += mean + curvature * (w - minimizer);
    return grads;
  };

  PopulationTruth truth;
  truth.minimizer = minimizer;
  truth.minimum = 0.0;
  truth.risk = [minimizer, curvature](const Eigen::VectorXd& w) {
    return 0.5 * curvature * (w - minimizer).squaredNorm();
  };
  truth.gradient = [minimizer, curvature](const Eigen::VectorXd& w) {
    return Eigen::VectorXd(curvature * (w - minimizer));
  };
  problem.truth = std::move(truth);
  return problem;
}

absl::StatusOr<ProblemInstance> MakeQuadraticProblem(const HeavyTailSpec& spec,
                                                     double diameter,
                                                     double curvature,
                                                     Rng& rng) {
  const int d = spec.dimension();
  Eigen::VectorXd direction(d);
  do {
    for (int i = 0; i < d; ++i) direction[i] = rng.Normal();
  } while (direction.norm() == 0);
  const Eigen::VectorXd minimizer = direction.normalized() * (diameter / 4);
  return MakeQuadraticProblem(spec, diameter, curvature, minimizer,
                              Eigen::VectorXd::Zero(d));
}

}  // namespace dpsco
