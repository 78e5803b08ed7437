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

#include "dpsco/bench/results.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

#include "absl/strings/str_format.h"
#include "dpsco/bench/config.h"

namespace dpsco::bench {
namespace {

size_t ColumnIndex(std::string_view column) {
  for (size_t i = 0; i < kResultColumns.size(); ++i) {
    if (kResultColumns[i] == column) return i;
  }
  return kResultColumns.size();
}

std::string Opt(const std::optional<double>& x) {
  return x.has_value() ? FormatDouble(*x) : std::string();
}

template <typename T>
std::string OptInt(const std::optional<T>& x) {
  return x.has_value() ? std::to_string(*x) : std::string();
}

std::vector<std::string> SplitFields(std::string_view line) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

absl::StatusOr<double> ParseReal(const CsvRow& row, std::string_view column) {
  const std::string& s = row.at(column);
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    return absl::InvalidArgumentError(
        absl::StrFormat("line %d: column %s: '%s' is not a number", row.line,
                        std::string(column), s));
  }
  return v;
}

}  // namespace

std::string CsvHeader() {
  std::string out;
  for (size_t i = 0; i < kResultColumns.size(); ++i) {
    if (i > 0) out += ',';
    out += kResultColumns[i];
  }
  return out;
}

std::string FormatStatus(RunStatus status, std::string_view reason) {
  if (status == RunStatus::kOk) return "ok";
  std::string clean(reason);
  for (char& c : clean) {
    if (c == ',') c = ';';
    if (c == '\n' || c == '\r') c = ' ';
  }
  return absl::StrFormat("%s: %s",
                         status == RunStatus::kSkipped ? "skipped" : "failed",
                         clean);
}

std::string FormatRow(const RunRecord& r) {
  const std::array<std::string, 22> f = {
      r.run_id,
      r.mode,
      r.estimator,
      r.family,
      std::to_string(r.n),
      std::to_string(r.d),
      FormatDouble(r.p),
      FormatDouble(r.eps),
      FormatDouble(r.delta),
      OptInt(r.k),
      OptInt(r.tc),
      OptInt(r.steps),
      Opt(r.eta),
      Opt(r.radius),
      Opt(r.rho_step),
      Opt(r.eps0),
      Opt(r.delta0),
      std::to_string(r.seed),
      std::to_string(r.rep),
      r.status == RunStatus::kOk ? Opt(r.outcome) : std::string(),
      FormatStatus(r.status, r.reason),
      FormatDouble(r.wall_ms)};
  std::string out;
  for (size_t i = 0; i < f.size(); ++i) {
    if (i > 0) out += ',';
    out += f[i];
  }
  return out;
}

const std::string& CsvRow::at(std::string_view column) const {
  return fields.at(ColumnIndex(column));
}

absl::StatusOr<std::vector<CsvRow>> ParseResultsCsv(std::string_view text) {
  std::vector<CsvRow> rows;
  int line_no = 0;
  size_t pos = 0;
  bool saw_header = false;
  while (pos < text.size()) {
    const size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!saw_header) {
      if (line != CsvHeader()) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "line %d: header does not match results schema v%d", line_no,
            kSchemaVersion));
      }
      saw_header = true;
      continue;
    }
    if (line.empty()) continue;
    CsvRow row{.line = line_no, .fields = SplitFields(line)};
    if (row.fields.size() != kResultColumns.size()) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "line %d: expected %d fields, found %d", line_no,
          kResultColumns.size(), row.fields.size()));
    }
    rows.push_back(std::move(row));
  }
  if (!saw_header) {
    return absl::InvalidArgumentError("line 1: missing header");
  }
  return rows;
}

absl::StatusOr<std::vector<CsvRow>> ReadResultsCsv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return absl::NotFoundError(absl::StrFormat("cannot open '%s'", path));
  }
  std::ostringstream text;
  text << in.rdbuf();
  absl::StatusOr<std::vector<CsvRow>> rows = ParseResultsCsv(text.str());
  if (!rows.ok()) {
    return absl::InvalidArgumentError(
        absl::StrFormat("%s: %s", path, rows.status().message()));
  }
  return rows;
}

absl::StatusOr<double> Quantile(std::vector<double> values, double q) {
  if (values.empty()) {
    return absl::InvalidArgumentError("quantile of an empty sample");
  }
  if (!(q >= 0 && q <= 1)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("quantile level %g outside [0, 1]", q));
  }
  std::sort(values.begin(), values.end());
  const double h = static_cast<double>(values.size() - 1) * q;
  const auto lo = static_cast<size_t>(std::floor(h));
  if (lo + 1 >= values.size()) return values.back();
  return values[lo] + (h - static_cast<double>(lo)) *
                          (values[lo + 1] - values[lo]);
}

absl::StatusOr<std::string> Summarize(const std::vector<CsvRow>& rows,
                                      const std::vector<double>& quantiles) {
  for (double q : quantiles) {
    if (!(q > 0 && q < 1)) {
      return absl::InvalidArgumentError(
          absl::StrFormat("quantile level %g outside (0, 1)", q));
    }
  }
  static constexpr std::array<std::string_view, 10> kCellColumns = {
      "mode", "estimator", "family", "n", "d", "p", "eps", "delta", "k", "tc"};
  struct Cell {
    std::vector<std::string> key;
    int runs = 0;
    std::vector<double> outcomes;
    double wall_sum = 0;
  };
  std::vector<Cell> cells;
  std::map<std::vector<std::string>, size_t> index;
  for (const CsvRow& row : rows) {
    std::vector<std::string> key;
    for (std::string_view c : kCellColumns) key.push_back(row.at(c));
    auto [it, inserted] = index.emplace(key, cells.size());
    if (inserted) {
      cells.emplace_back();
      cells.back().key = key;
    }
    Cell& cell = cells[it->second];
    ++cell.runs;
    absl::StatusOr<double> wall = ParseReal(row, "wall_ms");
    if (!wall.ok()) return wall.status();
    cell.wall_sum += *wall;
    if (row.at("status") == "ok") {
      absl::StatusOr<double> outcome = ParseReal(row, "outcome");
      if (!outcome.ok()) return outcome.status();
      cell.outcomes.push_back(*outcome);
    }
  }

  std::string out;
  for (std::string_view c : kCellColumns) out += std::string(c) + ",";
  out += "runs,ok";
  for (double q : quantiles) out += ",q" + FormatDouble(q);
  out += ",mean_wall_ms\n";
  for (const Cell& cell : cells) {
    for (const std::string& k : cell.key) out += k + ",";
    out += absl::StrFormat("%d,%d", cell.runs, cell.outcomes.size());
    for (double q : quantiles) {
      out += ",";
      if (!cell.outcomes.empty()) {
        absl::StatusOr<double> v = Quantile(cell.outcomes, q);
        if (!v.ok()) return v.status();
        out += FormatDouble(*v);
      }
    }
    out += "," + FormatDouble(cell.wall_sum / cell.runs) + "\n";
  }
  return out;
}

}  // namespace dpsco::bench
