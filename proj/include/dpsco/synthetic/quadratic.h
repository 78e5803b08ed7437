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

#ifndef DPSCO_SYNTHETIC_QUADRATIC_H_
#define DPSCO_SYNTHETIC_QUADRATIC_H_

#include <Eigen/Dense>

#include "absl/status/statusor.h"
#include "dpsco/optimizer/problem.h"
#include "dpsco/random/rng.h"
#include "dpsco/synthetic/heavy_tail.h"

namespace dpsco {

// Quadratic stochastic problem
//
//   l(w, Z) = (curvature / 2) ||w - w_bar||^2 - <Z - E Z, w>
//
// on the ball of diameter `diameter` about `center`, with Z ~ spec. The
// population risk is F(w) = (curvature / 2) ||w - w_bar||^2, so w* = w_bar,
// F(w*) = 0 and lambda = curvature. The reported moment bound is
// M + curvature * diameter, which dominates the directional p-th moment of
// the per-sample gradients anywhere on the ball.
//
// Fails with InvalidArgument unless w_bar lies strictly inside the ball.
absl::StatusOr<ProblemInstance> MakeQuadraticProblem(
    const HeavyTailSpec& spec, double diameter, double curvature,
    const Eigen::VectorXd& minimizer, const Eigen::VectorXd& center);

// Ball centered at the origin; w_bar drawn uniformly on the sphere of radius
// diameter / 4.
absl::StatusOr<ProblemInstance> MakeQuadraticProblem(const HeavyTailSpec& spec,
                                                     double diameter,
                                                     double curvature,
                                                     Rng& rng);

}  // namespace dpsco

#endif  // DPSCO_SYNTHETIC_QUADRATIC_H_
