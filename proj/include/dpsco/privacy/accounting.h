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

// Closed-form privacy accounting: Gaussian mechanism calibration,
// composition, conversions between concentrated and approximate DP, and the
// per-step budget splits used by the optimizer.
//
// Error conventions:
//   InvalidArgument    malformed inputs (nonpositive sizes, empty lists)
//   OutOfRange         inputs outside the regime a bound is proven for
//   ResourceExhausted  composed budget is no longer meaningful (delta >= 1)

#ifndef DPSCO_PRIVACY_ACCOUNTING_H_
#define DPSCO_PRIVACY_ACCOUNTING_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "dpsco/privacy/budget.h"

namespace dpsco {

// sigma^2 = delta2^2 / (2 rho). Adding N(0, sigma^2 I) to a statistic with
// l2 sensitivity delta2 is rho-CDP.
absl::StatusOr<NoiseScale> GaussianNoiseScale(const SensitivityBound& sens,
                                              const CdpBudget& budget);

// Sensitivity of the mean of n vectors each clipped to norm `radius`: 2R/n.
absl::StatusOr<SensitivityBound> ClippedMeanSensitivity(double radius,
                                                        int64_t n);

// Sum of the rho values.
absl::StatusOr<CdpBudget> CdpCompose(absl::Span<const CdpBudget> budgets);

// A pure eps-DP mechanism is (eps^2 / 2)-CDP.
absl::StatusOr<CdpBudget> DpToCdp(double epsilon);

// rho-CDP implies (rho + 2 sqrt(rho ln(1/delta)), delta)-DP.
absl::StatusOr<ApproxDpBudget> CdpToDp(const CdpBudget& budget, double delta);

// k-fold advanced composition of an (eps, delta)-DP mechanism:
// (sqrt(2k ln(1/delta')) eps + k eps (e^eps - 1), k delta + delta').
absl::StatusOr<ApproxDpBudget> AdvancedComposition(const ApproxDpBudget& step,
                                                   int64_t k,
                                                   double delta_prime);

// Total rho for the simple clipping optimizer,
// rho = eps^2 / (1 + 2 sqrt(ln(1/delta)))^2. Requires eps <= 1.
absl::StatusOr<CdpBudget> TotalCdpBudget(const ApproxDpBudget& total);
// As above without the eps <= 1 check, for probing outside the proven regime.
absl::StatusOr<CdpBudget> TotalCdpBudgetUnchecked(const ApproxDpBudget& total);

// Per-step budget rho / T for T simple-clipping steps whose composition is
// (eps, delta)-DP. Requires eps <= 1.
absl::StatusOr<CdpBudget> PerStepCdpBudget(double total_epsilon, double delta,
                                           int64_t steps);
absl::StatusOr<CdpBudget> PerStepCdpBudgetUnchecked(double total_epsilon,
                                                    double delta,
                                                    int64_t steps);

// Largest eps for which shuffle amplification over k groups applies:
// 8 e^2 sqrt(ln(4/delta) / k).
double ShuffleAmplificationEpsilonLimit(double delta, int64_t k);

// Per-group CDP budget under which any permutation-invariant function of k
// group statistics is (eps, delta)-DP:
//
//   rho = (1 / (64 e^4)) eps^2 k / (ln(8/delta) (1 + 2 sqrt(ln(12k/delta)))^2)
//
// Fails with OutOfRange when eps exceeds ShuffleAmplificationEpsilonLimit.
absl::StatusOr<CdpBudget> ShuffleAmplifiedGroupBudget(
    const ApproxDpBudget& total, int64_t k);

// Per-step (eps0, delta0) = (eps / (2 sqrt(2T ln(2/delta))), delta / (2T)),
// so that advanced composition of T steps at delta' = delta/2 stays within
// (eps, delta).
absl::StatusOr<ApproxDpBudget> PerStepDpBudget(const ApproxDpBudget& total,
                                               int64_t steps);

}  // namespace dpsco

#endif  // DPSCO_PRIVACY_ACCOUNTING_H_
