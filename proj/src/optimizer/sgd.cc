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

#include "dpsco/optimizer/sgd.h"

#include <string>
#include <utility>

#include "absl/strings/str_format.h"

namespace dpsco {

absl::StatusOr<RunTrace> SgdLoop(const ProblemInstance& problem,
                                 const Eigen::MatrixXd& samples,
                                 const Schedule& schedule,
                                 const GradientEstimator& estimator, Rng& rng,
                                 const SgdOptions& opts) {
  if (absl::Status s = schedule.Validate(); !s.ok()) return s;
  if (!problem.gradient_oracle || !problem.projection) {
    return absl::InvalidArgumentError(
        "problem needs a gradient oracle and a projection");
  }
  const int d = problem.dimension;
  Eigen::VectorXd w = opts.initial_point.value_or(Eigen::VectorXd::Zero(d));
  if (w.size() != d) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "initial point has dimension %d, problem has %d", w.size(), d));
  }
  w = problem.projection(w);

  RunTrace trace;
  trace.iterates.reserve(schedule.steps);
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(d);
  for (int64_t t = 1; t <= schedule.steps; ++t) {
    trace.iterates.push_back(w);
    sum += w;
    const Eigen::MatrixXd grads = problem.gradient_oracle(w, samples);
    absl::StatusOr<Eigen::VectorXd> g = estimator.Estimate(w, grads, rng);
    if (!g.ok()) {
      return absl::Status(g.status().code(),
                          absl::StrFormat("step %d: %s", t,
                                          g.status().message()));
    }
    if (!g->allFinite()) {
      return absl::InternalError(absl::StrFormat(
          "step %d: %s estimator returned a non-finite gradient", t,
          std::string(estimator.name())));
    }
    w = problem.projection(w - schedule.learning_rate * *g);
  }
  trace.last_iterate = std::move(w);
  trace.averaged_output = sum / static_cast<double>(schedule.steps);

  if (problem.truth.has_value()) {
    trace.excess_risk = problem.truth->ExcessRisk(trace.averaged_output);
  }
  if (opts.diagnostic_reps > 0) {
    const SampleSource fixed = [&samples](Rng&) { return samples; };
    absl::StatusOr<BiasVariance> bv =
        EmpiricalBiasVariance(problem, trace.averaged_output, fixed, estimator,
                              opts.diagnostic_reps, rng);
    if (!bv.ok()) return bv.status();
    trace.bias_proxy = bv->bias_proxy;
    trace.variance_proxy = bv->variance_proxy;
  }
  return trace;
}

absl::StatusOr<BiasVariance> EmpiricalBiasVariance(
    const ProblemInstance& problem, const Eigen::VectorXd& w,
    const SampleSource& sample_source, const GradientEstimator& estimator,
    int reps, Rng& rng) {
  if (!problem.truth.has_value() || !problem.truth->gradient) {
    return absl::FailedPreconditionError(
        "bias and variance proxies need the population gradient in closed "
        "form");
  }
  if (reps < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("reps must be positive, got %d", reps));
  }
  const Eigen::VectorXd truth = problem.truth->gradient(w);
  Eigen::VectorXd mean_err = Eigen::VectorXd::Zero(truth.size());
  double sq = 0;
  for (int r = 0; r < reps; ++r) {
    const Eigen::MatrixXd samples = sample_source(rng);
    const Eigen::MatrixXd grads = problem.gradient_oracle(w, samples);
    absl::StatusOr<Eigen::VectorXd> g = estimator.Estimate(w, grads, rng);
    if (!g.ok()) return g.status();
    const Eigen::VectorXd err = *g - truth;
    mean_err += err;
    sq += err.squaredNorm();
  }
  return BiasVariance{.bias_proxy = (mean_err / reps).norm(),
                      .variance_proxy = sq / reps};
}

}  // namespace dpsco
