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

// results.csv, schema v1. Column order is frozen:
//
//   run_id, mode, estimator, family, n, d, p, eps, delta, k, tc, T, eta, R,
//   rho_step, eps0, delta0, seed, rep, outcome, status, wall_ms
//
// Fields that do not apply to a row are empty. Reals use the shortest
// round-trip decimal form. `status` is `ok`, `skipped: <reason>` or
// `failed: <reason>`; reasons never contain commas or newlines. `outcome`
// is ||mu_hat - mu|| for mean-bench and F(w_hat) - F(w*) for opt-bench, and
// is empty unless status is ok.

#ifndef DPSCO_BENCH_RESULTS_H_
#define DPSCO_BENCH_RESULTS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace dpsco::bench {

inline constexpr int kSchemaVersion = 1;
inline constexpr std::array<std::string_view, 22> kResultColumns = {
    "run_id", "mode",   "estimator", "family", "n",        "d",
    "p",      "eps",    "delta",     "k",      "tc",       "T",
    "eta",    "R",      "rho_step",  "eps0",   "delta0",   "seed",
    "rep",    "outcome", "status",   "wall_ms"};

enum class RunStatus { kOk, kSkipped, kFailed };

struct RunRecord {
  std::string run_id;
  std::string mode;
  std::string estimator;
  std::string family;
  int64_t n = 0;
  int d = 0;
  double p = 0;
  double eps = 0;
  double delta = 0;
  std::optional<int64_t> k;
  std::optional<int> tc;
  std::optional<int64_t> steps;
  std::optional<double> eta;
  std::optional<double> radius;
  std::optional<double> rho_step;
  std::optional<double> eps0;
  std::optional<double> delta0;
  uint64_t seed = 0;
  int rep = 0;
  std::optional<double> outcome;
  RunStatus status = RunStatus::kOk;
  std::string reason;
  double wall_ms = 0;
};

std::string CsvHeader();
std::string FormatStatus(RunStatus status, std::string_view reason);
std::string FormatRow(const RunRecord& r);

// A parsed results.csv row, fields kept as text.
struct CsvRow {
  int line = 0;
  std::vector<std::string> fields;

  const std::string& at(std::string_view column) const;
};

// Checks the header against schema v1 and that each row has every column.
// InvalidArgument names the offending line (1-based, header is line 1).
absl::StatusOr<std::vector<CsvRow>> ParseResultsCsv(std::string_view text);
absl::StatusOr<std::vector<CsvRow>> ReadResultsCsv(const std::string& path);

// Linear interpolation between order statistics: with x sorted and
// h = (N - 1) q, returns x[floor h] + (h - floor h)(x[floor h + 1] - x[floor h]).
// The median of an even count is the midpoint of the two middle values.
// InvalidArgument for empty input or q outside [0, 1].
absl::StatusOr<double> Quantile(std::vector<double> values, double q);

// One row per grid cell (mode..tc), in first-appearance order, with columns
// mode, estimator, family, n, d, p, eps, delta, k, tc, runs, ok, q<q>...,
// mean_wall_ms. Quantiles use ok rows only and are empty when there are
// none. Errors on malformed numbers name the line.
absl::StatusOr<std::string> Summarize(const std::vector<CsvRow>& rows,
                                      const std::vector<double>& quantiles);

}  // namespace dpsco::bench

#endif  // DPSCO_BENCH_RESULTS_H_
