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

#include "dpsco/synthetic/heavy_tail.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "absl/strings/str_format.h"

namespace dpsco {
namespace {

constexpr double kLogSqrtPi = 0.5723649429247000870717;  // ln(sqrt(pi))

absl::Status ValidateCommon(int dimension, double moment_order,
                            double moment_bound, const Eigen::VectorXd& mean) {
  if (dimension < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("dimension must be positive, got %d", dimension));
  }
  if (!(moment_order >= 2) || !std::isfinite(moment_order)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "moment order p must be a finite real >= 2, got %g", moment_order));
  }
  if (!(moment_bound > 0) || !std::isfinite(moment_bound)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "moment bound M must be positive, got %g", moment_bound));
  }
  if (mean.size() != dimension) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "mean has dimension %d, expected %d", mean.size(), dimension));
  }
  if (!mean.allFinite()) {
    return absl::InvalidArgumentError("mean must be finite");
  }
  return absl::OkStatus();
}

void FillNormal(Eigen::Ref<Eigen::VectorXd> out, Rng& rng) {
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = rng.Normal();
}

}  // namespace

std::string_view TailFamilyName(TailFamily family) {
  switch (family) {
    case TailFamily::kGaussian:
      return "gaussian";
    case TailFamily::kStudentLike:
      return "student-like";
    case TailFamily::kParetoSymmetric:
      return "pareto-symmetric";
  }
  return "unknown";
}

absl::StatusOr<TailFamily> ParseTailFamily(std::string_view name) {
  for (TailFamily f : {TailFamily::kGaussian, TailFamily::kStudentLike,
                       TailFamily::kParetoSymmetric}) {
    if (name == TailFamilyName(f)) return f;
  }
  return absl::InvalidArgumentError(absl::StrFormat(
      "unknown family '%s' (expected gaussian, student-like or "
      "pareto-symmetric)",
      std::string(name)));
}

double GaussianAbsMoment(double p) {
  return std::exp(0.5 * p * std::numbers::ln2 + std::lgamma(0.5 * (p + 1)) -
                  kLogSqrtPi);
}

double StudentAbsMoment(double p, double nu) {
  if (!(nu > p)) return std::numeric_limits<double>::infinity();
  return std::exp(0.5 * p * std::log(nu) + std::lgamma(0.5 * (p + 1)) +
                  std::lgamma(0.5 * (nu - p)) - kLogSqrtPi -
                  std::lgamma(0.5 * nu));
}

double SphereCoordinateAbsMoment(int dimension, double p) {
  const double d = dimension;
  return std::exp(std::lgamma(0.5 * d) + std::lgamma(0.5 * (p + 1)) -
                  kLogSqrtPi - std::lgamma(0.5 * (d + p)));
}

double ParetoMixtureAbsMoment(int dimension, double p, double alpha) {
  if (!(alpha > p)) return std::numeric_limits<double>::infinity();
  const double radial =
      alpha * std::pow(kParetoMinRadius, p) / (alpha - p);
  return (1 - kParetoOutlierFraction) * GaussianAbsMoment(p) +
         kParetoOutlierFraction * radial *
             SphereCoordinateAbsMoment(dimension, p);
}

absl::StatusOr<HeavyTailSpec> HeavyTailSpec::Create(int dimension,
                                                    double moment_order,
                                                    double moment_bound,
                                                    TailFamily family,
                                                    Eigen::VectorXd mean) {
  if (absl::Status s =
          ValidateCommon(dimension, moment_order, moment_bound, mean);
      !s.ok()) {
    return s;
  }
  if (family == TailFamily::kStudentLike) {
    return CreateStudent(dimension, moment_order, moment_bound,
                         moment_order + kTailIndexExcess, std::move(mean));
  }
  HeavyTailSpec spec;
  spec.dimension_ = dimension;
  spec.moment_order_ = moment_order;
  spec.moment_bound_ = moment_bound;
  spec.family_ = family;
  spec.mean_ = std::move(mean);
  double base_moment = 0;
  if (family == TailFamily::kGaussian) {
    spec.tail_index_ = std::numeric_limits<double>::infinity();
    base_moment = GaussianAbsMoment(moment_order);
  } else {
    spec.tail_index_ = moment_order + kTailIndexExcess;
    base_moment =
        ParetoMixtureAbsMoment(dimension, moment_order, spec.tail_index_);
  }
  spec.scale_ = moment_bound / std::pow(base_moment, 1.0 / moment_order);
  return spec;
}

absl::StatusOr<HeavyTailSpec> HeavyTailSpec::Create(int dimension,
                                                    double moment_order,
                                                    double moment_bound,
                                                    TailFamily family) {
  return Create(dimension, moment_order, moment_bound, family,
                Eigen::VectorXd::Zero(std::max(dimension, 0)));
}

absl::StatusOr<HeavyTailSpec> HeavyTailSpec::CreateStudent(
    int dimension, double moment_order, double moment_bound, double tail_index,
    Eigen::VectorXd mean) {
  if (absl::Status s =
          ValidateCommon(dimension, moment_order, moment_bound, mean);
      !s.ok()) {
    return s;
  }
  if (!(tail_index > moment_order)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "tail index %g leaves the order-%g moment infinite", tail_index,
        moment_order));
  }
  HeavyTailSpec spec;
  spec.dimension_ = dimension;
  spec.moment_order_ = moment_order;
  spec.moment_bound_ = moment_bound;
  spec.family_ = TailFamily::kStudentLike;
  spec.mean_ = std::move(mean);
  spec.tail_index_ = tail_index;
  spec.scale_ = moment_bound / std::pow(StudentAbsMoment(moment_order,
                                                         tail_index),
                                        1.0 / moment_order);
  return spec;
}

HeavyTailSpec HeavyTailSpec::UncheckedStudent(int dimension,
                                              double moment_order,
                                              double moment_bound,
                                              double tail_index) {
  HeavyTailSpec spec;
  spec.dimension_ = dimension;
  spec.moment_order_ = moment_order;
  spec.moment_bound_ = moment_bound;
  spec.family_ = TailFamily::kStudentLike;
  spec.mean_ = Eigen::VectorXd::Zero(dimension);
  spec.tail_index_ = tail_index;
  const double base = StudentAbsMoment(moment_order, tail_index);
  spec.scale_ = std::isfinite(base)
                    ? moment_bound / std::pow(base, 1.0 / moment_order)
                    : moment_bound;
  return spec;
}

HeavyTailSpec HeavyTailSpec::Scaled(double factor) const {
  HeavyTailSpec copy = *this;
  copy.moment_bound_ *= factor;
  copy.scale_ *= factor;
  return copy;
}

Eigen::MatrixXd Sample(const HeavyTailSpec& spec, int64_t n, Rng& rng) {
  const int d = spec.dimension();
  const double s = spec.scale();
  Eigen::MatrixXd out(d, n);
  Eigen::VectorXd z(d);
  for (int64_t i = 0; i < n; ++i) {
    FillNormal(z, rng);
    switch (spec.family()) {
      case TailFamily::kGaussian:
        break;
      case TailFamily::kStudentLike: {
        const double nu = spec.tail_index();
        const double chi2 = 2.0 * rng.Gamma(0.5 * nu);
        z *= std::sqrt(nu / chi2);
        break;
      }
      case TailFamily::kParetoSymmetric: {
        if (rng.Uniform() < kParetoOutlierFraction) {
          const double radius =
              kParetoMinRadius *
              std::pow(rng.UniformOpen(), -1.0 / spec.tail_index());
          double norm = z.norm();
          while (norm == 0.0) {
            FillNormal(z, rng);
            norm = z.norm();
          }
          z *= radius / norm;
        }
        break;
      }
    }
    out.col(i) = spec.mean() + s * z;
  }
  return out;
}

}  // namespace dpsco
