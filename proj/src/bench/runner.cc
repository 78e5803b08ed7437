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

#include "dpsco/bench/runner.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <thread>

#include "absl/strings/str_format.h"
#include "dpsco/estimators/iterative_updating.h"
#include "dpsco/estimators/simple_clipping.h"
#include "dpsco/optimizer/gradient_estimator.h"
#include "dpsco/optimizer/schedule.h"
#include "dpsco/optimizer/sgd.h"
#include "dpsco/privacy/accounting.h"
#include "dpsco/random/rng.h"
#include "dpsco/synthetic/quadratic.h"

#ifndef DPSCO_VERSION
#define DPSCO_VERSION "unknown"
#endif

namespace dpsco::bench {
namespace {

using Clock = std::chrono::steady_clock;

// Marks the record skipped (out of regime) or failed and returns it.
RunRecord Fail(RunRecord rec, const absl::Status& status) {
  rec.status = status.code() == absl::StatusCode::kOutOfRange
                   ? RunStatus::kSkipped
                   : RunStatus::kFailed;
  rec.reason = std::string(status.message());
  rec.outcome.reset();
  return rec;
}

RunRecord BaseRecord(const ExperimentConfig& cfg, const GridCell& cell,
                     int rep) {
  const std::string key = cell.Key();
  RunRecord rec;
  rec.run_id = absl::StrFormat("%016x-%d", Fnv1a64(key), rep);
  rec.mode = std::string(ModeName(cell.mode));
  rec.estimator = std::string(EstimatorName(cell.estimator));
  rec.family = std::string(TailFamilyName(cell.family));
  rec.n = cell.n;
  rec.d = cell.d;
  rec.p = cell.p;
  rec.eps = cell.eps;
  rec.delta = cell.delta;
  rec.seed = DeriveSeed(cfg.seed, key, static_cast<uint64_t>(rep));
  rec.rep = rep;
  if (cell.estimator == EstimatorKind::kIterative) {
    rec.k = cfg.k.value_or(DefaultGroupCount(cell.n));
    rec.tc = cfg.tc;
  }
  return rec;
}

RunRecord Finish(RunRecord rec, double outcome) {
  if (!std::isfinite(outcome)) {
    return Fail(std::move(rec),
                absl::InternalError("outcome is not finite"));
  }
  rec.outcome = outcome;
  rec.status = RunStatus::kOk;
  return rec;
}

RunRecord MeanCellBody(const ExperimentConfig& cfg, const GridCell& cell,
                       RunRecord rec) {
  absl::StatusOr<HeavyTailSpec> spec = HeavyTailSpec::Create(
      cell.d, cell.p, cfg.moment_bound, cell.family);
  if (!spec.ok()) return Fail(std::move(rec), spec.status());
  absl::StatusOr<ApproxDpBudget> total =
      ApproxDpBudget::Create(cell.eps, cell.delta);
  if (!total.ok()) return Fail(std::move(rec), total.status());
  rec.steps = 1;

  Rng data(rec.seed, 0);
  Rng mech(rec.seed, 1);
  absl::StatusOr<MeanEstimate> est;
  if (cell.estimator == EstimatorKind::kSimple) {
    double rho = 0;
    if (cfg.rho.has_value()) {
      rho = *cfg.rho;
    } else {
      absl::StatusOr<CdpBudget> b = TotalCdpBudget(*total);
      if (!b.ok()) return Fail(std::move(rec), b.status());
      rho = b->rho();
    }
    const double radius = cfg.radius.value_or(
        cfg.radius_mult * cfg.moment_bound *
        SimpleClippingUnitRadius(cell.n, cell.d, cell.p, rho));
    rec.radius = radius;
    rec.rho_step = rho;
    absl::StatusOr<ClipConfig> clip = ClipConfig::Create(radius);
    if (!clip.ok()) return Fail(std::move(rec), clip.status());
    absl::StatusOr<CdpBudget> budget = CdpBudget::Create(rho);
    if (!budget.ok()) return Fail(std::move(rec), budget.status());
    const Eigen::MatrixXd samples = Sample(*spec, cell.n, data);
    est = SimpleClipMean(samples, *clip, *budget, mech);
  } else {
    const int64_t k = *rec.k;
    const double radius = cfg.radius.value_or(
        cfg.radius_mult * cfg.moment_bound *
        IterativeUnitRadius(cell.n, cell.d, cell.p, cell.eps));
    rec.radius = radius;
    rec.eps0 = cell.eps;
    rec.delta0 = cell.delta;
    absl::StatusOr<CdpBudget> group = ShuffleAmplifiedGroupBudget(*total, k);
    if (!group.ok()) return Fail(std::move(rec), group.status());
    rec.rho_step = group->rho();
    absl::StatusOr<ClipConfig> clip = ClipConfig::Create(radius);
    if (!clip.ok()) return Fail(std::move(rec), clip.status());
    const Eigen::MatrixXd samples = Sample(*spec, cell.n, data);
    IterativeOptions opts;
    opts.iterations = cfg.tc;
    est = IterativeUpdateMean(samples, *clip, *total, k, mech, opts);
  }
  if (!est.ok()) return Fail(std::move(rec), est.status());
  return Finish(std::move(rec), (est->value - spec->mean()).norm());
}

RunRecord OptCellBody(const ExperimentConfig& cfg, const GridCell& cell,
                      RunRecord rec) {
  absl::StatusOr<HeavyTailSpec> spec = HeavyTailSpec::Create(
      cell.d, cell.p, cfg.moment_bound, cell.family);
  if (!spec.ok()) return Fail(std::move(rec), spec.status());
  absl::StatusOr<ApproxDpBudget> total =
      ApproxDpBudget::Create(cell.eps, cell.delta);
  if (!total.ok()) return Fail(std::move(rec), total.status());

  Rng data(rec.seed, 0);
  Rng mech(rec.seed, 1);
  absl::StatusOr<ProblemInstance> problem =
      MakeQuadraticProblem(*spec, cfg.diameter, cfg.curvature, data);
  if (!problem.ok()) return Fail(std::move(rec), problem.status());

  absl::StatusOr<PrivateSchedule> plan;
  if (cell.estimator == EstimatorKind::kSimple && cfg.rho.has_value()) {
    absl::StatusOr<Schedule> s = SimpleClippingScheduleForRho(
        cell.n, *problem, *cfg.rho, cfg.radius_mult);
    if (!s.ok()) return Fail(std::move(rec), s.status());
    absl::StatusOr<CdpBudget> step =
        CdpBudget::Create(*cfg.rho / static_cast<double>(s->steps));
    if (!step.ok()) return Fail(std::move(rec), step.status());
    plan = PrivateSchedule{*s, *step};
  } else if (cell.estimator == EstimatorKind::kSimple) {
    plan = ScheduleSimpleClipping(cell.n, *problem, *total, cfg.radius_mult);
  } else {
    plan = ScheduleIterative(cell.n, *problem, *total, cfg.radius_mult);
  }
  if (!plan.ok()) return Fail(std::move(rec), plan.status());
  if (cfg.radius.has_value()) plan->schedule.clip_radius = *cfg.radius;
  rec.steps = plan->schedule.steps;
  rec.eta = plan->schedule.learning_rate;
  rec.radius = plan->schedule.clip_radius;

  absl::StatusOr<ClipConfig> clip =
      ClipConfig::Create(plan->schedule.clip_radius);
  if (!clip.ok()) return Fail(std::move(rec), clip.status());
  std::unique_ptr<GradientEstimator> estimator;
  if (const auto* rho = std::get_if<CdpBudget>(&plan->per_step)) {
    rec.rho_step = rho->rho();
    estimator = std::make_unique<SimpleClippingEstimator>(*clip, *rho);
  } else {
    const auto& step = std::get<ApproxDpBudget>(plan->per_step);
    rec.eps0 = step.epsilon();
    rec.delta0 = step.delta();
    absl::StatusOr<CdpBudget> group = ShuffleAmplifiedGroupBudget(step, *rec.k);
    if (!group.ok()) return Fail(std::move(rec), group.status());
    rec.rho_step = group->rho();
    IterativeOptions opts;
    opts.iterations = cfg.tc;
    estimator =
        std::make_unique<IterativeEstimator>(*clip, step, *rec.k, opts);
  }

  const Eigen::MatrixXd samples = Sample(*spec, cell.n, data);
  absl::StatusOr<RunTrace> trace =
      SgdLoop(*problem, samples, plan->schedule, *estimator, mech);
  if (!trace.ok()) return Fail(std::move(rec), trace.status());
  if (!trace->excess_risk.has_value()) {
    return Fail(std::move(rec),
                absl::InternalError("problem has no closed-form risk"));
  }
  return Finish(std::move(rec), *trace->excess_risk);
}

template <typename Body>
RunRecord Timed(const ExperimentConfig& cfg, const GridCell& cell, int rep,
                Body body) {
  const auto start = Clock::now();
  RunRecord rec = body(cfg, cell, BaseRecord(cfg, cell, rep));
  if (cfg.timing) {
    rec.wall_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start)
            .count();
  }
  return rec;
}

}  // namespace

uint64_t Fnv1a64(std::string_view bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t DeriveSeed(uint64_t master, std::string_view cell_key, uint64_t rep) {
  return SplitMix64(SplitMix64(SplitMix64(master) ^ Fnv1a64(cell_key)) ^ rep);
}

std::string GridCell::Key() const {
  return absl::StrFormat(
      "mode=%s;estimator=%s;family=%s;n=%d;d=%d;p=%s;eps=%s;delta=%s",
      std::string(ModeName(mode)), std::string(EstimatorName(estimator)),
      std::string(TailFamilyName(family)), n, d, FormatDouble(p),
      FormatDouble(eps), FormatDouble(delta));
}

std::vector<GridCell> ExpandGrid(const ExperimentConfig& cfg) {
  std::vector<GridCell> cells;
  for (EstimatorKind est : cfg.estimator) {
    for (TailFamily fam : cfg.family) {
      for (int64_t n : cfg.n) {
        for (int d : cfg.d) {
          for (double p : cfg.p) {
            for (double eps : cfg.eps) {
              for (double delta : cfg.delta) {
                cells.push_back(GridCell{.mode = cfg.mode,
                                         .estimator = est,
                                         .family = fam,
                                         .n = n,
                                         .d = d,
                                         .p = p,
                                         .eps = eps,
                                         .delta = delta});
              }
            }
          }
        }
      }
    }
  }
  return cells;
}

RunRecord RunMeanCell(const ExperimentConfig& cfg, const GridCell& cell,
                      int rep) {
  return Timed(cfg, cell, rep, MeanCellBody);
}

RunRecord RunOptCell(const ExperimentConfig& cfg, const GridCell& cell,
                     int rep) {
  return Timed(cfg, cell, rep, OptCellBody);
}

std::vector<RunRecord> RunGrid(const ExperimentConfig& cfg) {
  const std::vector<GridCell> cells = ExpandGrid(cfg);
  const size_t items = cells.size() * static_cast<size_t>(cfg.reps);
  std::vector<RunRecord> records(items);
  std::atomic<size_t> next{0};
  const auto worker = [&]() {
    for (size_t i = next++; i < items; i = next++) {
      const GridCell& cell = cells[i / cfg.reps];
      const int rep = static_cast<int>(i % cfg.reps);
      records[i] = cell.mode == Mode::kOptBench ? RunOptCell(cfg, cell, rep)
                                                : RunMeanCell(cfg, cell, rep);
    }
  };
  const size_t threads =
      std::min<size_t>(static_cast<size_t>(std::max(cfg.jobs, 1)), items);
  if (threads <= 1) {
    worker();
    return records;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  return records;
}

std::string ManifestText(const ExperimentConfig& cfg) {
  std::string out;
  out += "dpsco_bench manifest\n";
  out += absl::StrFormat("version: %s\n", DPSCO_VERSION);
  out += absl::StrFormat("results_schema: v%d\n", kSchemaVersion);
  out += "columns: " + CsvHeader() + "\n";
  out += absl::StrFormat("rng: %s\n", std::string(Rng::kGeneratorId));
  out +=
      "seed_derivation: seed = mix(mix(mix(master) ^ fnv1a64(cell_key)) ^ "
      "rep); mix = splitmix64 finalizer; data stream 0, mechanism stream 1\n";
  out +=
      "quantiles: linear interpolation between order statistics, "
      "h = (N - 1) q (midpoint at even counts)\n";
  out += "[config]\n";
  out += DumpConfig(cfg);
  return out;
}

absl::StatusOr<RunSummary> RunExperiment(const ExperimentConfig& cfg) {
  if (absl::Status s = Validate(cfg); !s.ok()) return s;
  if (cfg.mode == Mode::kCalibrate) {
    return absl::InvalidArgumentError("calibrate mode writes no results");
  }
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  const fs::path dir(cfg.out);
  std::ofstream csv(dir / "results.csv", std::ios::binary | std::ios::trunc);
  std::ofstream manifest(dir / "manifest.txt",
                         std::ios::binary | std::ios::trunc);
  if (!csv || !manifest) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "cannot write results to '%s'%s", cfg.out,
        ec ? absl::StrFormat(" (%s)", ec.message()) : std::string()));
  }
  manifest << ManifestText(cfg);

  const std::vector<RunRecord> records = RunGrid(cfg);
  RunSummary summary;
  csv << CsvHeader() << '\n';
  for (const RunRecord& r : records) {
    csv << FormatRow(r) << '\n';
    ++summary.rows;
    if (r.status == RunStatus::kSkipped) ++summary.skipped;
    if (r.status == RunStatus::kFailed) ++summary.failed;
  }
  csv.flush();
  if (!csv || !manifest.flush()) {
    return absl::DataLossError("writing results failed");
  }
  return summary;
}

void RunCalibrate(const ExperimentConfig& cfg, std::ostream& out) {
  for (double eps : cfg.eps) {
    for (double delta : cfg.delta) {
      std::string line = absl::StrFormat("eps=%.12g delta=%.12g steps=%d", eps,
                                         delta, cfg.steps);
      absl::StatusOr<ApproxDpBudget> total = ApproxDpBudget::Create(eps, delta);
      absl::StatusOr<CdpBudget> rho =
          total.ok() ? TotalCdpBudget(*total)
                     : absl::StatusOr<CdpBudget>(total.status());
      absl::StatusOr<CdpBudget> step =
          PerStepCdpBudget(eps, delta, cfg.steps);
      if (!rho.ok() || !step.ok()) {
        const absl::Status& bad = !rho.ok() ? rho.status() : step.status();
        out << line << " skipped: " << bad.message() << '\n';
        continue;
      }
      line += absl::StrFormat(" rho=%.12g rho_step=%.12g", rho->rho(),
                              step->rho());
      absl::StatusOr<ApproxDpBudget> dp_step =
          PerStepDpBudget(*total, cfg.steps);
      if (dp_step.ok()) {
        line += absl::StrFormat(" eps0=%.12g delta0=%.12g", dp_step->epsilon(),
                                dp_step->delta());
      }
      out << line << '\n';
    }
  }
}

}  // namespace dpsco::bench
