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

#include "dpsco/estimators/direction_estimate.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "absl/strings/str_format.h"

namespace dpsco {
namespace {

absl::Status ValidateInputs(const GroupedStats& stats,
                            const Eigen::VectorXd& c) {
  if (stats.k() < 1) {
    return absl::InvalidArgumentError("no group means to estimate from");
  }
  if (c.size() != stats.dimension()) {
    return absl::InvalidArgumentError(
        absl::StrFormat("iterate has dimension %d, group means have %d",
                        c.size(), stats.dimension()));
  }
  return absl::OkStatus();
}

Eigen::VectorXd UnitVector(int d, int axis) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
  e[axis] = 1.0;
  return e;
}

// Sum of the selected offset columns in index order.
Eigen::VectorXd SelectedSum(const Eigen::MatrixXd& offsets,
                            const std::vector<bool>& selected) {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(offsets.rows());
  for (Eigen::Index j = 0; j < offsets.cols(); ++j) {
    if (selected[j]) sum += offsets.col(j);
  }
  return sum;
}

void ConsiderDirection(const Eigen::MatrixXd& offsets, Eigen::VectorXd u,
                       EstOutcome& best, bool& have_best) {
  const double norm = u.norm();
  if (!(norm > 0) || !std::isfinite(norm)) return;
  u /= norm;
  EstOutcome cand = EvaluateDirection(offsets, u);
  if (!have_best || cand.distance > best.distance) {
    best = std::move(cand);
    have_best = true;
  }
}

// Alternates between the best mask for u and u = normalized selected mean.
EstOutcome Ascend(const Eigen::MatrixXd& offsets, const Eigen::VectorXd& u) {
  EstOutcome best = EvaluateDirection(offsets, u);
  for (int round = 0; round < kEstMaxRounds; ++round) {
    Eigen::VectorXd next = SelectedSum(offsets, best.selected);
    const double norm = next.norm();
    if (!(norm > 0) || !std::isfinite(norm)) break;
    EstOutcome cand = EvaluateDirection(offsets, next / norm);
    const bool improved =
        cand.distance > best.distance + kEstImprovementTolerance;
    if (cand.distance > best.distance) best = std::move(cand);
    if (!improved) break;
  }
  return best;
}

}  // namespace

int64_t SelectionSize(int64_t k) { return (9 * k + 9) / 10; }

Eigen::VectorXd CoordinateMedian(const Eigen::MatrixXd& columns) {
  const Eigen::Index k = columns.cols();
  Eigen::VectorXd median(columns.rows());
  std::vector<double> row(k);
  for (Eigen::Index i = 0; i < columns.rows(); ++i) {
    for (Eigen::Index j = 0; j < k; ++j) row[j] = columns(i, j);
    std::sort(row.begin(), row.end());
    median[i] = (k % 2 == 1) ? row[k / 2] : 0.5 * (row[k / 2 - 1] + row[k / 2]);
  }
  return median;
}

EstOutcome EvaluateDirection(const Eigen::MatrixXd& offsets,
                             const Eigen::VectorXd& direction) {
  const int64_t k = offsets.cols();
  const int64_t keep = SelectionSize(k);
  const Eigen::VectorXd proj = offsets.transpose() * direction;
  std::vector<int64_t> idx(k);
  std::iota(idx.begin(), idx.end(), int64_t{0});
  std::nth_element(idx.begin(), idx.begin() + (keep - 1), idx.end(),
                   [&proj](int64_t a, int64_t b) {
                     return proj[a] > proj[b] || (proj[a] == proj[b] && a < b);
                   });
  EstOutcome out;
  out.direction = direction;
  out.selected.assign(k, false);
  for (int64_t i = 0; i < keep; ++i) out.selected[idx[i]] = true;
  out.distance = proj[idx[keep - 1]];
  return out;
}

absl::StatusOr<EstOutcome> EstimateDirectionDistance(const GroupedStats& stats,
                                                     const Eigen::VectorXd& c) {
  if (absl::Status s = ValidateInputs(stats, c); !s.ok()) return s;
  const int d = stats.dimension();
  Eigen::MatrixXd offsets = stats.group_means;
  offsets.colwise() -= c;

  Eigen::VectorXd u = CoordinateMedian(stats.group_means) - c;
  if (!(u.norm() > 0)) u = offsets.rowwise().sum();
  if (!(u.norm() > 0) || !u.allFinite()) u = UnitVector(d, 0);
  u.normalize();

  // The median direction is a poor start when c sits inside the bulk, so
  // the ascent also runs from the opposite direction.
  EstOutcome best = Ascend(offsets, u);
  EstOutcome flipped = Ascend(offsets, -u);
  if (flipped.distance > best.distance) best = std::move(flipped);
  return best;
}

absl::StatusOr<EstOutcome> EstBruteForce(const GroupedStats& stats,
                                         const Eigen::VectorXd& c,
                                         int direction_grid) {
  if (absl::Status s = ValidateInputs(stats, c); !s.ok()) return s;
  const int d = stats.dimension();
  const int64_t k = stats.k();
  if (d > kBruteForceMaxDimension) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "brute force supports d <= %d, got %d", kBruteForceMaxDimension, d));
  }
  if (k > kBruteForceMaxGroups) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "brute force supports k <= %d, got %d", kBruteForceMaxGroups, k));
  }
  const int grid_limit = d == 3 ? kBruteForceMaxGrid3d : kBruteForceMaxGrid;
  if (direction_grid < 1 || direction_grid > grid_limit) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "direction grid must lie in [1, %d], got %d", grid_limit,
        direction_grid));
  }

  Eigen::MatrixXd offsets = stats.group_means;
  offsets.colwise() -= c;
  EstOutcome best;
  bool have_best = false;

  if (d == 1) {
    ConsiderDirection(offsets, Eigen::VectorXd::Constant(1, 1.0), best,
                      have_best);
    ConsiderDirection(offsets, Eigen::VectorXd::Constant(1, -1.0), best,
                      have_best);
    return best;
  }

  if (d == 2) {
    for (int i = 0; i < direction_grid; ++i) {
      const double theta = 2.0 * std::numbers::pi * i / direction_grid;
      Eigen::VectorXd u(2);
      u << std::cos(theta), std::sin(theta);
      ConsiderDirection(offsets, u, best, have_best);
    }
    for (int64_t j = 0; j < k; ++j) {
      ConsiderDirection(offsets, offsets.col(j), best, have_best);
    }
    for (int64_t i = 0; i < k; ++i) {
      for (int64_t j = i + 1; j < k; ++j) {
        const Eigen::Vector2d diff = offsets.col(i) - offsets.col(j);
        Eigen::VectorXd normal(2);
        normal << -diff[1], diff[0];
        ConsiderDirection(offsets, normal, best, have_best);
        ConsiderDirection(offsets, -normal, best, have_best);
      }
    }
    return best;
  }

  // d == 3
  for (int a = 0; a <= direction_grid; ++a) {
    const double polar = std::numbers::pi * a / direction_grid;
    const int longitudes = (a == 0 || a == direction_grid) ? 1
                                                           : 2 * direction_grid;
    for (int b = 0; b < longitudes; ++b) {
      const double azimuth = std::numbers::pi * b / direction_grid;
      Eigen::VectorXd u(3);
      u << std::sin(polar) * std::cos(azimuth),
          std::sin(polar) * std::sin(azimuth), std::cos(polar);
      ConsiderDirection(offsets, u, best, have_best);
    }
  }
  for (int64_t j = 0; j < k; ++j) {
    ConsiderDirection(offsets, offsets.col(j), best, have_best);
  }
  return best;
}

absl::Status CheckEstFeasibility(const GroupedStats& stats,
                                 const Eigen::VectorXd& c,
                                 const EstOutcome& outcome, double tolerance) {
  const int64_t k = stats.k();
  if (outcome.direction.size() != stats.dimension()) {
    return absl::FailedPreconditionError("direction has the wrong dimension");
  }
  if (std::abs(outcome.direction.norm() - 1.0) > tolerance) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "direction norm %.17g is not 1", outcome.direction.norm()));
  }
  if (static_cast<int64_t>(outcome.selected.size()) != k) {
    return absl::FailedPreconditionError("mask length differs from k");
  }
  const int64_t count =
      std::count(outcome.selected.begin(), outcome.selected.end(), true);
  if (count < SelectionSize(k)) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "only %d of %d groups selected, need %d", count, k, SelectionSize(k)));
  }
  Eigen::MatrixXd offsets = stats.group_means;
  offsets.colwise() -= c;
  const Eigen::VectorXd proj = offsets.transpose() * outcome.direction;
  for (int64_t j = 0; j < k; ++j) {
    if (outcome.selected[j] && proj[j] < outcome.distance) {
      return absl::FailedPreconditionError(absl::StrFormat(
          "selected group %d projects to %.17g below s = %.17g", j, proj[j],
          outcome.distance));
    }
  }
  return absl::OkStatus();
}

}  // namespace dpsco
