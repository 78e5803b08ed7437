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

#ifndef DPSCO_PRIVACY_BUDGET_H_
#define DPSCO_PRIVACY_BUDGET_H_

#include <cstdint>
#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace dpsco {

// Approximate differential privacy parameters (epsilon, delta).
// epsilon > 0 and delta in (0, 1).
class ApproxDpBudget {
 public:
  static absl::StatusOr<ApproxDpBudget> Create(double epsilon, double delta);

  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }

  // True when this budget is no weaker than `other`: both parameters are
  // less than or equal to the other's.
  bool DominatedBy(const ApproxDpBudget& other) const {
    return epsilon_ <= other.epsilon_ && delta_ <= other.delta_;
  }

  std::string DebugString() const;

 private:
  ApproxDpBudget(double epsilon, double delta)
      : epsilon_(epsilon), delta_(delta) {}

  double epsilon_;
  double delta_;
};

// Zero-concentrated differential privacy parameter rho.
class CdpBudget {
 public:
  static absl::StatusOr<CdpBudget> Create(double rho);

  double rho() const { return rho_; }

  std::string DebugString() const;

 private:
  explicit CdpBudget(double rho) : rho_(rho) {}

  double rho_;
};

// l2 sensitivity of a vector-valued statistic.
class SensitivityBound {
 public:
  static absl::StatusOr<SensitivityBound> Create(double delta2);

  double delta2() const { return delta2_; }

 private:
  explicit SensitivityBound(double delta2) : delta2_(delta2) {}

  double delta2_;
};

// Per-coordinate variance of additive Gaussian noise.
class NoiseScale {
 public:
  static absl::StatusOr<NoiseScale> Create(double sigma2);

  double sigma2() const { return sigma2_; }

 private:
  explicit NoiseScale(double sigma2) : sigma2_(sigma2) {}

  double sigma2_;
};

// Tracks cumulative rho spent against a declared total. Budgets themselves
// are immutable; this is the only mutable accounting object and is not
// thread-safe.
class CdpLedger {
 public:
  explicit CdpLedger(CdpBudget total) : total_(total) {}

  // Records `step`. Fails with ResourceExhausted, leaving the ledger
  // unchanged, if the cumulative spend would exceed the declared total.
  absl::Status Spend(const CdpBudget& step);

  double spent() const { return spent_; }
  double remaining() const { return total_.rho() - spent_; }
  int64_t operations() const { return operations_; }
  const CdpBudget& total() const { return total_; }

 private:
  CdpBudget total_;
  double spent_ = 0.0;
  int64_t operations_ = 0;
};

// Tracks repeated spends of one fixed per-step (epsilon, delta) budget and
// accounts for them with advanced composition at slack `delta_prime`.
class ApproxDpLedger {
 public:
  ApproxDpLedger(ApproxDpBudget total, ApproxDpBudget per_step,
                 double delta_prime);

  // Fails with ResourceExhausted if composing one more step would no longer
  // be dominated by the declared total.
  absl::Status Spend();

  int64_t steps() const { return steps_; }

  // Composed budget of the steps recorded so far. Requires steps() >= 1.
  absl::StatusOr<ApproxDpBudget> Composed() const;

 private:
  ApproxDpBudget total_;
  ApproxDpBudget per_step_;
  double delta_prime_;
  int64_t steps_ = 0;
};

}  // namespace dpsco

#endif  // DPSCO_PRIVACY_BUDGET_H_
