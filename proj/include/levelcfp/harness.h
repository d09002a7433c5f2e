// Copyright 2026 The levelcfp Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Benchmark driver: the twelve scheme variants, single runs, quality scores,
// summary statistics, speedup factors and CSV reports.

#ifndef LEVELCFP_HARNESS_H_
#define LEVELCFP_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "levelcfp/feasibility.h"
#include "levelcfp/problem.h"
#include "levelcfp/schemes.h"
#include "levelcfp/superiorize.h"

namespace levelcfp {

enum class SchemeKind {
  kLevelSet,
  kLevelSetAccelerated,
  kBisection,
  kBisectionAccelerated,
};

struct VariantSpec {
  SchemeKind scheme = SchemeKind::kLevelSet;
  FeasibilitySolver solver = FeasibilitySolver::kCspm;
  bool superiorized = false;

  // "ls_cspm", "bis_acc_sup_cspm", ...
  std::string name() const;
  // Throws Error(kInvalidArgument) for names outside the registry.
  static VariantSpec Parse(std::string_view name);

  bool operator==(const VariantSpec&) const = default;
};

// The twelve registered variant names in table order.
const std::vector<std::string>& VariantRegistry();

// ART3+ variants need every explicit constraint to be affine.
bool VariantValidFor(const VariantSpec& variant, const Problem& problem);

struct RunConfig {
  FeasibilityConfig feasibility;
  EpsilonRule epsilon;
  AccelerationConfig acceleration;
  SuperiorizationSettings superiorization;
  double gamma = 1e-5;
  std::optional<double> bisection_lower_bound;
  SchemeLimits limits;
  // Defaults to the origin clamped to the variable bounds.
  std::optional<Vector> x0;
};

Vector DefaultStart(const Problem& problem);

struct RunReport {
  std::string variant;
  std::string problem;
  Termination termination = Termination::kCase1;
  double best_value = 0.0;  // NaN when no feasible point was found
  std::optional<double> quality;
  std::uint64_t projections = 0;
  std::uint64_t objective_evaluations = 0;
  std::uint64_t sweeps = 0;
  std::uint64_t outer_steps = 0;
  double wall_ms = 0.0;
  double epsilon = 0.0;
  Vector best_point;
  std::vector<TracePoint> trace;
};

// Throws Error(kInvalidArgument) before any work when the pair is invalid.
RunReport RunVariant(const VariantSpec& variant, const Problem& problem,
                     const RunConfig& config);

// f_hat if f* = 0; f_hat - f* if |f*| <= 1; (f_hat - f*)/|f*| otherwise.
double QualityScore(double f_hat, double f_star);

struct StatsSummary {
  double average = 0.0;
  double median = 0.0;
  double q10 = 0.0;
  double q90 = 0.0;
};

// Nearest-rank quantile of sorted data, p in (0, 1].
double NearestRank(std::span<const double> sorted, double p);
StatsSummary Aggregate(std::span<const double> values);

enum class Metric { kQuality, kProjections, kObjectiveEvaluations, kOuterSteps };
inline constexpr Metric kAllMetrics[] = {Metric::kQuality, Metric::kProjections,
                                         Metric::kObjectiveEvaluations,
                                         Metric::kOuterSteps};
std::string_view MetricName(Metric metric);
std::optional<double> MetricValue(const RunReport& report, Metric metric);

struct SummaryRow {
  std::string variant;
  Metric metric = Metric::kQuality;
  StatsSummary stats;
};

// One row per (variant, metric) with at least one value, variants in order
// of first appearance.
std::vector<SummaryRow> Summarize(std::span<const RunReport> reports);

enum class SpeedupMetric { kProjections, kObjectiveEvaluations, kObjectiveDecrease };

// Mean decrease of f per feasible point along the trace.
std::optional<double> DecreaseRate(const RunReport& report);

// Positive when `a` is faster: b/a - 1 for counters, rate_a/rate_b - 1 for
// the objective decrease. Missing on a zero denominator.
std::optional<double> SpeedupFactor(const RunReport& a, const RunReport& b,
                                    SpeedupMetric metric);

// Writes runs.csv, summary.csv (only when there are reports) and
// report_meta.json into `dir`, creating it if needed.
void EmitReport(std::span<const RunReport> reports, const std::string& dir);

struct RunsCsvRow {
  std::string problem;
  std::string variant;
  std::string status;
  std::optional<double> f_hat;
  std::optional<double> quality;
  std::uint64_t projections = 0;
  std::uint64_t objective_evaluations = 0;
  std::uint64_t outer_steps = 0;
  double wall_ms = 0.0;
};

// step,level,value for each feasible point of the run.
void WriteTraceCsv(const RunReport& report, const std::string& path);

std::vector<RunsCsvRow> ReadRunsCsv(const std::string& path);

// Lines "name value"; '#' starts a comment.
std::map<std::string, double> ReadOptimaFile(const std::string& path);

// Small problems with known optima, plus a synthetic dose problem.
const std::vector<std::string>& BuiltinNames();
Problem BuiltinProblem(std::string_view name, std::uint64_t seed = 1);

// *.qps files of `dir` in name order; optima from `dir`/optima.txt when
// present.
std::vector<Problem> LoadProblemDirectory(const std::string& dir);

struct BenchResult {
  std::vector<RunReport> reports;
  std::vector<std::string> skipped;  // "problem/variant: reason"
};

BenchResult Bench(std::span<const Problem> problems,
                  std::span<const VariantSpec> variants,
                  const RunConfig& config);

}  // namespace levelcfp

#endif  // LEVELCFP_HARNESS_H_
