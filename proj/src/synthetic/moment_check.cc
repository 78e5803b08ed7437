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

#include "dpsco/synthetic/moment_check.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "absl/strings/str_format.h"

namespace dpsco {
namespace {

constexpr int64_t kChunk = 1 << 15;
// One-sided tail mass of a 3-sigma normal bound.
constexpr double kThreeSigmaTail = 0.0013498980316301;

struct Accumulator {
  double sum = 0;
  double sum_sq = 0;

  void Add(double x) {
    sum += x;
    sum_sq += x * x;
  }
  double Mean(int64_t n) const { return sum / static_cast<double>(n); }
  double StandardError(int64_t n) const {
    const double nd = static_cast<double>(n);
    const double mean = sum / nd;
    const double var = std::max(0.0, sum_sq / nd - mean * mean);
    return std::sqrt(var / nd);
  }
};

double HillTailIndex(std::vector<double> top) {
  // `top` holds the largest k + 1 values.
  std::sort(top.begin(), top.end(), std::greater<>());
  const size_t k = top.size() - 1;
  const double threshold = top[k];
  if (!(threshold > 0)) return 0;
  double acc = 0;
  for (size_t i = 0; i < k; ++i) acc += std::log(top[i] / threshold);
  return acc > 0 ? static_cast<double>(k) / acc
                 : std::numeric_limits<double>::infinity();
}

}  // namespace

std::string MomentReport::DebugString() const {
  return absl::StrFormat(
      "directional %.6g (se %.3g, bound %.6g, z %.3f, %s) norm %.6g (se %.3g, "
      "bound %.6g, %s) tail index %.4g (%s)",
      directional_moment, directional_se, directional_bound, critical_z,
      directional_ok ? "ok" : "FAIL", norm_moment, norm_se, norm_bound,
      norm_ok ? "ok" : "FAIL", tail_index, tail_ok ? "ok" : "FAIL");
}

MomentReport VerifyMomentBound(const HeavyTailSpec& spec, int64_t n_mc,
                               int n_dirs, Rng& rng) {
  const int d = spec.dimension();
  const double p = spec.moment_order();
  n_mc = std::max<int64_t>(n_mc, 2);
  n_dirs = std::max(n_dirs, 1);

  Eigen::MatrixXd dirs(d, n_dirs);
  for (int j = 0; j < n_dirs; ++j) {
    Eigen::VectorXd u(d);
    do {
      for (int i = 0; i < d; ++i) u[i] = rng.Normal();
    } while (u.norm() == 0);
    dirs.col(j) = u.normalized();
  }

  const size_t hill_k = static_cast<size_t>(
      std::max<double>(10, std::floor(std::sqrt(static_cast<double>(n_mc)))));
  std::priority_queue<double, std::vector<double>, std::greater<>> top;

  std::vector<Accumulator> directional(n_dirs);
  Accumulator norm_acc;
  int64_t done = 0;
  while (done < n_mc) {
    const int64_t m = std::min(kChunk, n_mc - done);
    Eigen::MatrixXd centered = Sample(spec, m, rng);
    centered.colwise() -= spec.mean();
    const Eigen::MatrixXd proj = dirs.transpose() * centered;  // n_dirs x m
    for (int64_t i = 0; i < m; ++i) {
      for (int j = 0; j < n_dirs; ++j) {
        directional[j].Add(std::pow(std::abs(proj(j, i)), p));
      }
      const double r = centered.col(i).norm();
      norm_acc.Add(std::pow(r, p));
      if (top.size() < hill_k + 1) {
        top.push(r);
      } else if (r > top.top()) {
        top.pop();
        top.push(r);
      }
    }
    done += m;
  }

  MomentReport report;
  report.samples = n_mc;
  report.directions = n_dirs;
  report.directional_bound = std::pow(spec.moment_bound(), p);
  report.critical_z = std::max(
      3.0, boost::math::quantile(boost::math::normal(),
                                 1.0 - kThreeSigmaTail / n_dirs));
  report.directional_moment = -1;
  bool all_directions_ok = true;
  for (const Accumulator& acc : directional) {
    const double est = acc.Mean(n_mc);
    const double se = acc.StandardError(n_mc);
    if (est > report.directional_moment) {
      report.directional_moment = est;
      report.directional_se = se;
    }
    if (est > report.directional_bound + report.critical_z * se) {
      all_directions_ok = false;
    }
  }
  report.directional_ok = all_directions_ok;

  report.norm_moment = norm_acc.Mean(n_mc);
  report.norm_se = norm_acc.StandardError(n_mc);
  report.norm_bound = std::pow(static_cast<double>(d), 0.5 * p) *
                      report.directional_bound;
  report.norm_ok = report.norm_moment <= report.norm_bound + 3.0 * report.norm_se;

  std::vector<double> top_values;
  top_values.reserve(top.size());
  while (!top.empty()) {
    top_values.push_back(top.top());
    top.pop();
  }
  report.tail_index = HillTailIndex(std::move(top_values));
  report.tail_ok = report.tail_index > p;
  return report;
}

}  // namespace dpsco
