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

// Gradient estimators plugged into the SGD loop. Each call consumes the
// per-sample gradients at the current iterate and returns one estimate g(w).

#ifndef DPSCO_OPTIMIZER_GRADIENT_ESTIMATOR_H_
#define DPSCO_OPTIMIZER_GRADIENT_ESTIMATOR_H_

#include <cstdint>
#include <string_view>
#include <utility>

#include <Eigen/Dense>

#include "absl/status/statusor.h"
#include "dpsco/estimators/iterative_updating.h"
#include "dpsco/estimators/types.h"
#include "dpsco/privacy/budget.h"
#include "dpsco/random/rng.h"

namespace dpsco {

class GradientEstimator {
 public:
  virtual ~GradientEstimator() = default;

  virtual std::string_view name() const = 0;

  // `gradients` holds one column per sample, evaluated at `w`.
  virtual absl::StatusOr<Eigen::VectorXd> Estimate(
      const Eigen::VectorXd& w, const Eigen::MatrixXd& gradients,
      Rng& rng) const = 0;
};

// Non-private sample mean. Used for exact-gradient control runs.
class SampleMeanEstimator : public GradientEstimator {
 public:
  std::string_view name() const override { return "mean"; }
  absl::StatusOr<Eigen::VectorXd> Estimate(const Eigen::VectorXd& w,
                                           const Eigen::MatrixXd& gradients,
                                           Rng& rng) const override;
};

// SimpleClipMean at a fixed per-step rho.
class SimpleClippingEstimator : public GradientEstimator {
 public:
  SimpleClippingEstimator(ClipConfig cfg, CdpBudget per_step,
                          NoiseMode noise = NoiseMode::kPrivate)
      : cfg_(cfg), per_step_(per_step), noise_(noise) {}

  std::string_view name() const override { return "simple"; }
  absl::StatusOr<Eigen::VectorXd> Estimate(const Eigen::VectorXd& w,
                                           const Eigen::MatrixXd& gradients,
                                           Rng& rng) const override;

 private:
  ClipConfig cfg_;
  CdpBudget per_step_;
  NoiseMode noise_;
};

// IterativeUpdateMean at a fixed per-step (eps0, delta0).
class IterativeEstimator : public GradientEstimator {
 public:
  IterativeEstimator(ClipConfig cfg, ApproxDpBudget per_step, int64_t k,
                     IterativeOptions opts = {})
      : cfg_(cfg), per_step_(per_step), k_(k), opts_(std::move(opts)) {}

  std::string_view name() const override { return "iterative"; }
  absl::StatusOr<Eigen::VectorXd> Estimate(const Eigen::VectorXd& w,
                                           const Eigen::MatrixXd& gradients,
                                           Rng& rng) const override;

 private:
  ClipConfig cfg_;
  ApproxDpBudget per_step_;
  int64_t k_;
  IterativeOptions opts_;
};

}  // namespace dpsco

#endif  // DPSCO_OPTIMIZER_GRADIENT_ESTIMATOR_H_
