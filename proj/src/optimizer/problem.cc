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

#include "dpsco/optimizer/problem.h"

#include <utility>

namespace dpsco {

Projection BallProjection(Eigen::VectorXd center, double radius) {
  return [center = std::move(center), radius](const Eigen::VectorXd& w) {
    const Eigen::VectorXd offset = w - center;
    const double norm = offset.norm();
    if (norm <= radius) return Eigen::VectorXd(w);
    return Eigen::VectorXd(center + offset * (radius / norm));
  };
}

}  // namespace dpsco
