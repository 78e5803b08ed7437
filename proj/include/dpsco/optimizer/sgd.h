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

// Projected gradient descent with private gradient estimates and an
// averaged-iterate output.

#ifndef DPSCO_OPTIMIZER_SGD_H_
#define DPSCO_OPTIMIZER_SGD_H_

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "absl/status/statusor.h"
#include "dpsco/optimizer/gradient_estimator.h"
#include "dpsco/optimizer/problem.h"
#include "dpsco/optimizer/schedule.h"
#include "dpsco/random/rng.h"

namespace dpsco {

struct RunTrace {
  // w_1..w_T, the points at which gradients were estimated.
  std::vector<Eigen::VectorXd> iterates;
  // w_{T+1}; not part of the average.
  Eigen::VectorXd last_iterate;
  // (1/T) sum_t w_t.
  Eigen::VectorXd averaged_output;
  // F(w_hat) - F(w*) when the problem carries its population truth.
  std::optional<double> excess_risk;
  // Filled by EmpiricalBiasVariance at w_hat when requested.
  std::optional<double> bias_proxy;
  std::optional<double> variance_proxy;
};

struct SgdOptions {
  // w_0 before projection; the origin when unset.
  std::optional<Eigen::VectorXd> initial_point;
  // When positive, bias and variance proxies are measured at w_hat over
  // this many estimator draws on the training samples.
  int diagnostic_reps = 0;
};

// T iterations of w_{t+1} = Proj(w_t - eta g(w_t)), where g is computed by
// `estimator` from all n per-sample gradients at w_t. w_1 is the projection
// of the initial point. A non-finite estimate aborts the run with Internal,
// naming the step.
absl::StatusOr<RunTrace> SgdLoop(const ProblemInstance& problem,
                                 const Eigen::MatrixXd& samples,
                                 const Schedule& schedule,
                                 const GradientEstimator& estimator, Rng& rng,
                                 const SgdOptions& opts = {});

// Draws a fresh d x n sample matrix.
using SampleSource = std::function<Eigen::MatrixXd(Rng&)>;

struct BiasVariance {
  double bias_proxy = 0;      // ||mean(g) - grad F(w)||
  double variance_proxy = 0;  // mean ||g - grad F(w)||^2
};

// Proxies for the estimator's bias and second moment at a fixed w, over
// `reps` independent (samples, estimator) draws. FailedPrecondition when
// the problem has no closed-form gradient.
absl::StatusOr<BiasVariance> EmpiricalBiasVariance(
    const ProblemInstance& problem, const Eigen::VectorXd& w,
    const SampleSource& sample_source, const GradientEstimator& estimator,
    int reps, Rng& rng);

}  // namespace dpsco

#endif  // DPSCO_OPTIMIZER_SGD_H_
