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

#ifndef DPSCO_ESTIMATORS_CLIP_H_
#define DPSCO_ESTIMATORS_CLIP_H_

#include <cstdint>

#include <Eigen/Dense>

#include "absl/types/span.h"

namespace dpsco {

// min{1, R / ||x||} x. The zero vector maps to itself.
Eigen::VectorXd Clip(const Eigen::VectorXd& x, double radius);

// Clips every column of `samples` in place.
void ClipColumns(Eigen::MatrixXd& samples, double radius);

// Mean of the clipped columns listed in `indices`, summed in list order.
Eigen::VectorXd ClippedMean(const Eigen::MatrixXd& samples, double radius,
                            absl::Span<const int64_t> indices);

// Mean of all clipped columns, in column order. This is the pre-noise
// statistic of the simple clipping estimator.
Eigen::VectorXd ClippedMean(const Eigen::MatrixXd& samples, double radius);

}  // namespace dpsco

#endif  // DPSCO_ESTIMATORS_CLIP_H_
