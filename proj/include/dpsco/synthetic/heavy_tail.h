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

// Isotropic test distributions whose directional p-th absolute moment about
// the mean equals M^p exactly.
//
// Families (X = mu + s * B, B isotropic, s set analytically):
//
//   gaussian          B ~ N(0, I).
//   student-like      B = Z sqrt(nu / V), Z ~ N(0, I), V ~ chi^2(nu): the
//                     multivariate t with tail index nu = p + 1/2, so the
//                     p-th moment is finite and the (p + 1)-th is not.
//   pareto-symmetric  B ~ N(0, I) with probability 1 - q; otherwise
//                     B = r U with U uniform on the sphere and r Pareto with
//                     scale x_m and tail index alpha = p + 1/2. Sparse, far
//                     outliers (q = 0.01, x_m = 10).

#ifndef DPSCO_SYNTHETIC_HEAVY_TAIL_H_
#define DPSCO_SYNTHETIC_HEAVY_TAIL_H_

#include <cstdint>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "absl/status/statusor.h"
#include "dpsco/random/rng.h"

namespace dpsco {

enum class TailFamily { kGaussian, kStudentLike, kParetoSymmetric };

std::string_view TailFamilyName(TailFamily family);
absl::StatusOr<TailFamily> ParseTailFamily(std::string_view name);

inline constexpr double kTailIndexExcess = 0.5;
inline constexpr double kParetoOutlierFraction = 0.01;
inline constexpr double kParetoMinRadius = 10.0;

class HeavyTailSpec {
 public:
  // Fails with InvalidArgument if p < 2, M <= 0, d < 1 or the mean has the
  // wrong dimension.
  static absl::StatusOr<HeavyTailSpec> Create(int dimension,
                                              double moment_order,
                                              double moment_bound,
                                              TailFamily family,
                                              Eigen::VectorXd mean);

  // Zero-mean convenience overload.
  static absl::StatusOr<HeavyTailSpec> Create(int dimension,
                                              double moment_order,
                                              double moment_bound,
                                              TailFamily family);

  // Student-like family with an explicit tail index. Fails with
  // InvalidArgument unless tail_index > moment_order.
  static absl::StatusOr<HeavyTailSpec> CreateStudent(int dimension,
                                                     double moment_order,
                                                     double moment_bound,
                                                     double tail_index,
                                                     Eigen::VectorXd mean);

  // Student-like family that skips the finite-moment check. When
  // tail_index <= moment_order the p-th moment diverges and the base is
  // scaled by M directly; intended only as a negative control for
  // VerifyMomentBound.
  static HeavyTailSpec UncheckedStudent(int dimension, double moment_order,
                                        double moment_bound,
                                        double tail_index);

  int dimension() const { return dimension_; }
  double moment_order() const { return moment_order_; }
  double moment_bound() const { return moment_bound_; }
  TailFamily family() const { return family_; }
  const Eigen::VectorXd& mean() const { return mean_; }
  // nu for student-like, alpha for pareto-symmetric, +inf for gaussian.
  double tail_index() const { return tail_index_; }
  // Multiplier s applied to the isotropic base.
  double scale() const { return scale_; }

  // Copy with moment_bound multiplied by `factor`.
  HeavyTailSpec Scaled(double factor) const;

 private:
  HeavyTailSpec() = default;

  int dimension_ = 0;
  double moment_order_ = 2.0;
  double moment_bound_ = 1.0;
  TailFamily family_ = TailFamily::kGaussian;
  Eigen::VectorXd mean_;
  double tail_index_ = 0.0;
  double scale_ = 1.0;
};

// E|<u, B>|^p for a unit u and the unscaled isotropic base of each family.
double GaussianAbsMoment(double p);
double StudentAbsMoment(double p, double nu);
double SphereCoordinateAbsMoment(int dimension, double p);
double ParetoMixtureAbsMoment(int dimension, double p, double alpha);

// n i.i.d. draws, one per column.
Eigen::MatrixXd Sample(const HeavyTailSpec& spec, int64_t n, Rng& rng);

}  // namespace dpsco

#endif  // DPSCO_SYNTHETIC_HEAVY_TAIL_H_
