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

#include "dpsco/bench/config.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "absl/strings/str_format.h"

namespace dpsco::bench {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> SplitList(std::string_view value) {
  std::vector<std::string_view> items;
  size_t start = 0;
  while (true) {
    const size_t comma = value.find(',', start);
    items.push_back(Trim(value.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return items;
}

absl::Status BadValue(std::string_view key, std::string_view value,
                      std::string_view want) {
  return absl::InvalidArgumentError(
      absl::StrFormat("%s: cannot parse '%s' as %s", std::string(key),
                      std::string(value), std::string(want)));
}

template <typename T>
absl::StatusOr<T> ParseNumber(std::string_view key, std::string_view text) {
  T out{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  if (text.empty() || ec != std::errc() || ptr != end) {
    return BadValue(key, text,
                    std::is_integral_v<T> ? "an integer" : "a number");
  }
  return out;
}

template <typename T, typename F>
absl::StatusOr<std::vector<T>> ParseList(std::string_view key,
                                         std::string_view value, F parse_one) {
  std::vector<T> out;
  for (std::string_view item : SplitList(value)) {
    absl::StatusOr<T> v = parse_one(key, item);
    if (!v.ok()) return v.status();
    out.push_back(*v);
  }
  return out;
}

absl::StatusOr<bool> ParseBool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  return BadValue(key, value, "true or false");
}

template <typename T>
absl::Status Assign(absl::StatusOr<T> parsed, T& slot) {
  if (!parsed.ok()) return parsed.status();
  slot = *std::move(parsed);
  return absl::OkStatus();
}

template <typename T>
absl::Status AssignOptional(absl::StatusOr<T> parsed,
                            std::optional<T>& slot) {
  if (!parsed.ok()) return parsed.status();
  slot = *parsed;
  return absl::OkStatus();
}

template <typename T>
std::string JoinList(const std::vector<T>& xs) {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ", ";
    if constexpr (std::is_floating_point_v<T>) {
      out += FormatDouble(xs[i]);
    } else {
      out += std::to_string(xs[i]);
    }
  }
  return out;
}

}  // namespace

std::string_view ModeName(Mode mode) {
  switch (mode) {
    case Mode::kMeanBench:
      return "mean-bench";
    case Mode::kOptBench:
      return "opt-bench";
    case Mode::kCalibrate:
      return "calibrate";
  }
  return "unknown";
}

absl::StatusOr<Mode> ParseMode(std::string_view name) {
  for (Mode m : {Mode::kMeanBench, Mode::kOptBench, Mode::kCalibrate}) {
    if (name == ModeName(m)) return m;
  }
  return absl::InvalidArgumentError(absl::StrFormat(
      "unknown mode '%s' (expected mean-bench, opt-bench or calibrate)",
      std::string(name)));
}

std::string_view EstimatorName(EstimatorKind kind) {
  return kind == EstimatorKind::kSimple ? "simple" : "iterative";
}

absl::StatusOr<EstimatorKind> ParseEstimator(std::string_view name) {
  if (name == "simple") return EstimatorKind::kSimple;
  if (name == "iterative") return EstimatorKind::kIterative;
  return absl::InvalidArgumentError(absl::StrFormat(
      "unknown estimator '%s' (expected simple or iterative)",
      std::string(name)));
}

std::string FormatDouble(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

absl::StatusOr<ConfigEntries> ParseConfigText(std::string_view text) {
  ConfigEntries entries;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl - pos);
    ++line_no;
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    if (const size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "config line %d: expected 'key = value', got '%s'", line_no,
          std::string(line)));
    }
    const std::string_view key = Trim(line.substr(0, eq));
    const std::string_view value = Trim(line.substr(eq + 1));
    if (key.empty()) {
      return absl::InvalidArgumentError(
          absl::StrFormat("config line %d: empty key", line_no));
    }
    entries.emplace_back(std::string(key), std::string(value));
  }
  return entries;
}

absl::StatusOr<ConfigEntries> ReadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    return absl::NotFoundError(
        absl::StrFormat("cannot open config file '%s'", path));
  }
  std::ostringstream text;
  text << in.rdbuf();
  absl::StatusOr<ConfigEntries> entries = ParseConfigText(text.str());
  if (!entries.ok()) {
    return absl::InvalidArgumentError(
        absl::StrFormat("%s: %s", path, entries.status().message()));
  }
  return entries;
}

absl::Status ApplySetting(ExperimentConfig& cfg, std::string_view key,
                          std::string_view value) {
  const auto as_i64 = [](std::string_view k, std::string_view v) {
    return ParseNumber<int64_t>(k, v);
  };
  const auto as_int = [](std::string_view k, std::string_view v) {
    return ParseNumber<int>(k, v);
  };
  const auto as_double = [](std::string_view k, std::string_view v) {
    return ParseNumber<double>(k, v);
  };

  if (key == "mode") return Assign(ParseMode(value), cfg.mode);
  if (key == "n") return Assign(ParseList<int64_t>(key, value, as_i64), cfg.n);
  if (key == "d") return Assign(ParseList<int>(key, value, as_int), cfg.d);
  if (key == "p") return Assign(ParseList<double>(key, value, as_double), cfg.p);
  if (key == "eps") {
    return Assign(ParseList<double>(key, value, as_double), cfg.eps);
  }
  if (key == "delta") {
    return Assign(ParseList<double>(key, value, as_double), cfg.delta);
  }
  if (key == "estimator") {
    return Assign(ParseList<EstimatorKind>(
                      key, value,
                      [](std::string_view, std::string_view v) {
                        return ParseEstimator(v);
                      }),
                  cfg.estimator);
  }
  if (key == "family") {
    return Assign(ParseList<TailFamily>(
                      key, value,
                      [](std::string_view, std::string_view v) {
                        return ParseTailFamily(v);
                      }),
                  cfg.family);
  }
  if (key == "reps") return Assign(as_int(key, value), cfg.reps);
  if (key == "seed") return Assign(ParseNumber<uint64_t>(key, value), cfg.seed);
  if (key == "jobs") return Assign(as_int(key, value), cfg.jobs);
  if (key == "out") {
    if (value.empty()) return BadValue(key, value, "a path");
    cfg.out = std::string(value);
    return absl::OkStatus();
  }
  if (key == "radius_mult") {
    return Assign(as_double(key, value), cfg.radius_mult);
  }
  if (key == "radius") return AssignOptional(as_double(key, value), cfg.radius);
  if (key == "rho") return AssignOptional(as_double(key, value), cfg.rho);
  if (key == "k") return AssignOptional(as_i64(key, value), cfg.k);
  if (key == "tc") return Assign(as_int(key, value), cfg.tc);
  if (key == "M") return Assign(as_double(key, value), cfg.moment_bound);
  if (key == "curvature") return Assign(as_double(key, value), cfg.curvature);
  if (key == "diameter") return Assign(as_double(key, value), cfg.diameter);
  if (key == "steps") return Assign(as_i64(key, value), cfg.steps);
  if (key == "timing") return Assign(ParseBool(key, value), cfg.timing);
  return absl::InvalidArgumentError(
      absl::StrFormat("unknown config key '%s'", std::string(key)));
}

absl::Status ApplyEntries(ExperimentConfig& cfg, const ConfigEntries& entries) {
  for (const auto& [key, value] : entries) {
    if (absl::Status s = ApplySetting(cfg, key, value); !s.ok()) return s;
  }
  return absl::OkStatus();
}

absl::Status Validate(const ExperimentConfig& cfg) {
  const auto fail = [](std::string msg) {
    return absl::InvalidArgumentError(std::move(msg));
  };
  if (cfg.n.empty() || cfg.d.empty() || cfg.p.empty() || cfg.eps.empty() ||
      cfg.delta.empty() || cfg.estimator.empty() || cfg.family.empty()) {
    return fail("every grid key needs at least one value");
  }
  for (int64_t n : cfg.n) {
    if (n < 2) return fail(absl::StrFormat("n must be at least 2, got %d", n));
  }
  for (int d : cfg.d) {
    if (d < 1) return fail(absl::StrFormat("d must be positive, got %d", d));
  }
  for (double p : cfg.p) {
    if (!(p >= 2) || !std::isfinite(p)) {
      return fail(absl::StrFormat("p must be at least 2, got %g", p));
    }
  }
  for (double e : cfg.eps) {
    if (!(e > 0) || !std::isfinite(e)) {
      return fail(absl::StrFormat("eps must be positive, got %g", e));
    }
  }
  for (double dl : cfg.delta) {
    if (!(dl > 0 && dl < 1)) {
      return fail(absl::StrFormat("delta must lie in (0, 1), got %g", dl));
    }
  }
  if (cfg.reps < 1) return fail("reps must be at least 1");
  if (cfg.jobs < 1) return fail("jobs must be at least 1");
  if (cfg.tc < 1) return fail("tc must be at least 1");
  if (cfg.steps < 1) return fail("steps must be at least 1");
  if (cfg.k.has_value() && *cfg.k < 1) return fail("k must be at least 1");
  const auto positive = [](double x) { return x > 0 && std::isfinite(x); };
  if (!positive(cfg.radius_mult) || !positive(cfg.moment_bound) ||
      !positive(cfg.curvature) || !positive(cfg.diameter)) {
    return fail("radius_mult, M, curvature and diameter must be positive");
  }
  if (cfg.radius.has_value() && !positive(*cfg.radius)) {
    return fail("radius must be positive");
  }
  if (cfg.rho.has_value() && !positive(*cfg.rho)) {
    return fail("rho must be positive");
  }
  return absl::OkStatus();
}

std::string DumpConfig(const ExperimentConfig& cfg) {
  std::string out;
  const auto line = [&out](std::string_view key, const std::string& value) {
    out += absl::StrFormat("%s = %s\n", std::string(key), value);
  };
  std::string estimators;
  for (size_t i = 0; i < cfg.estimator.size(); ++i) {
    if (i > 0) estimators += ", ";
    estimators += std::string(EstimatorName(cfg.estimator[i]));
  }
  std::string families;
  for (size_t i = 0; i < cfg.family.size(); ++i) {
    if (i > 0) families += ", ";
    families += std::string(TailFamilyName(cfg.family[i]));
  }
  line("mode", std::string(ModeName(cfg.mode)));
  line("n", JoinList(cfg.n));
  line("d", JoinList(cfg.d));
  line("p", JoinList(cfg.p));
  line("eps", JoinList(cfg.eps));
  line("delta", JoinList(cfg.delta));
  line("estimator", estimators);
  line("family", families);
  line("reps", std::to_string(cfg.reps));
  line("seed", std::to_string(cfg.seed));
  line("jobs", std::to_string(cfg.jobs));
  line("out", cfg.out);
  line("radius_mult", FormatDouble(cfg.radius_mult));
  if (cfg.radius) line("radius", FormatDouble(*cfg.radius));
  if (cfg.rho) line("rho", FormatDouble(*cfg.rho));
  if (cfg.k) line("k", std::to_string(*cfg.k));
  line("tc", std::to_string(cfg.tc));
  line("M", FormatDouble(cfg.moment_bound));
  line("curvature", FormatDouble(cfg.curvature));
  line("diameter", FormatDouble(cfg.diameter));
  line("steps", std::to_string(cfg.steps));
  line("timing", cfg.timing ? "true" : "false");
  return out;
}

}  // namespace dpsco::bench
