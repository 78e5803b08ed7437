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
#include "dpsco/estimators/clip.h"

#include <cmath>

namespace dpsco {
namespace {

template <typename V>
double ClipFactor(const V& x, double radius) {
  const double norm = x.norm();
  if (!(norm > radius)) return 1.0;
  double f = radius / norm;
  // Rounding can leave f * x an ulp outside the ball, which would make
  // clipping not idempotent.
  while ((x * f).norm() > radius) f = std::nextafter(f, 0.0);
  return f;
}

}  // namespace

Eigen::VectorXd Clip(const Eigen::VectorXd& x, double radius) {
  return x * ClipFactor(x, radius);
}

void ClipColumns(Eigen::MatrixXd& samples, double radius) {
  for (Eigen::Index i = 0; i < samples.cols(); ++i) {
    samples.col(i) *= ClipFactor(samples.col(i), radius);
  }
}

Eigen::VectorXd ClippedMean(const Eigen::MatrixXd& samples, double radius,
                            absl::Span<const int64_t> indices) {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(samples.rows());
  for (int64_t i : indices) {
    const auto col = samples.col(i);
    sum += col * ClipFactor(col, radius);
  }
  return sum / static_cast<double>(indices.size());
}

Eigen::VectorXd ClippedMean(const Eigen::MatrixXd& samples, double radius) {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(samples.rows());
  for (Eigen::Index i = 0; i < samples.cols(); ++i) {
    const auto col = samples.col(i);
    sum += col * ClipFactor(col, radius);
  }
  return sum / static_cast<double>(samples.cols());
}

}  // namespace dpsco
