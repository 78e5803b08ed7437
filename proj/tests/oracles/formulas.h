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

// Test-only reference formulas. Written against plain doubles in long
// double arithmetic, in a different algebraic arrangement from the library,
// and without any library types, so that a shared mistake would have to be
// made twice.

#ifndef DPSCO_TESTS_ORACLES_FORMULAS_H_
#define DPSCO_TESTS_ORACLES_FORMULAS_H_

#include <cstdint>
#include <vector>

namespace dpsco::oracle {

double NoiseVariance(double delta2, double rho);
double ClippedMeanSensitivity(double radius, int64_t n);
double Compose(const std::vector<double>& rhos);
double DpToCdp(double eps);
double CdpToDpEpsilon(double rho, double delta);

struct EpsDelta {
  double eps;
  double delta;
};
EpsDelta AdvancedComposition(double eps, double delta, int64_t k,
                             double delta_prime);

double PerStepRho(double eps, double delta, int64_t steps);
double ShuffleGroupRho(double eps, double delta, int64_t k);
EpsDelta PerStepDp(double eps, double delta, int64_t steps);
double ClippingBias(double p, double m, int d, double radius);

struct ScheduleValues {
  int64_t steps;
  double eta;
  double radius;
};
// Radii include the M factor and multiplier `mult`.
ScheduleValues SimpleSchedule(int64_t n, int d, double p, double rho,
                              double m, double lambda, double mult);
ScheduleValues IterativeSchedule(int64_t n, int d, double p, double eps,
                                 double m, double lambda, double mult);

}  // namespace dpsco::oracle

#endif  // DPSCO_TESTS_ORACLES_FORMULAS_H_
