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


#include "levelcfp/harness.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "json.hpp"

#include "levelcfp/error.h"
#include "levelcfp/qps.h"

namespace levelcfp {

namespace {

constexpr std::string_view kSolverTokens[] = {"cspm", "pocs", "art3+"};

std::string_view SchemePrefix(SchemeKind scheme) {
  switch (scheme) {
    case SchemeKind::kLevelSet:
      return "ls";
    case SchemeKind::kLevelSetAccelerated:
      return "ls_acc";
    case SchemeKind::kBisection:
      return "bis";
    case SchemeKind::kBisectionAccelerated:
      return "bis_acc";
  }
  return "?";
}

bool Accelerated(SchemeKind scheme) {
  return scheme == SchemeKind::kLevelSetAccelerated ||
         scheme == SchemeKind::kBisectionAccelerated;
}

}  // namespace

std::string VariantSpec::name() const {
  std::string out(SchemePrefix(scheme));
  if (superiorized) out += "_sup";
  out += "_";
  out += FeasibilitySolverName(solver);
  return out;
}

const std::vector<std::string>& VariantRegistry() {
  static const std::vector<std::string> names = {
      "ls_cspm",      "ls_art3+",      "ls_acc_cspm",      "ls_sup_cspm",
      "ls_sup_art3+", "ls_acc_sup_cspm", "bis_cspm",       "bis_art3+",
      "bis_acc_cspm", "bis_sup_cspm",  "bis_sup_art3+",    "bis_acc_sup_cspm",
  };
  return names;
}

VariantSpec VariantSpec::Parse(std::string_view name) {
  for (SchemeKind scheme :
       {SchemeKind::kLevelSet, SchemeKind::kLevelSetAccelerated,
        SchemeKind::kBisection, SchemeKind::kBisectionAccelerated}) {
    for (bool sup : {false, true}) {
      for (FeasibilitySolver solver :
           {FeasibilitySolver::kCspm, FeasibilitySolver::kArt3Plus}) {
        VariantSpec spec{scheme, solver, sup};
        if (spec.name() != name) continue;
        const auto& reg = VariantRegistry();
        if (std::find(reg.begin(), reg.end(), name) != reg.end()) return spec;
      }
    }
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown variant '" + std::string(name) + "'");
}

bool VariantValidFor(const VariantSpec& variant, const Problem& problem) {
  return variant.solver != FeasibilitySolver::kArt3Plus ||
         problem.HasOnlyAffineConstraints();
}

Vector DefaultStart(const Problem& problem) {
  Vector x(problem.dimension(), 0.0);
  if (const auto& b = problem.bounds()) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      x[j] = std::clamp(x[j], b->lower[j], b->upper[j]);
    }
  }
  return x;
}

RunReport RunVariant(const VariantSpec& variant, const Problem& problem,
                     const RunConfig& config) {
  if (!VariantValidFor(variant, problem)) {
    throw Error(ErrorCode::kInvalidArgument,
                "variant '" + variant.name() + "' needs affine constraints; '" +
                    problem.name() + "' has nonlinear ones");
  }
  const Vector x0 = config.x0 ? *config.x0 : DefaultStart(problem);
  if (x0.size() != problem.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch, "start point dimension");
  }
  CfpOptions options{variant.solver, config.feasibility, std::nullopt};
  if (variant.superiorized) options.superiorization = config.superiorization;
  std::optional<AccelerationConfig> accel;
  if (Accelerated(variant.scheme)) accel = config.acceleration;

  const auto start = std::chrono::steady_clock::now();
  SchemeResult result;
  switch (variant.scheme) {
    case SchemeKind::kLevelSet:
      result = LevelSetSolve(problem, options, x0, config.epsilon,
                             config.limits);
      break;
    case SchemeKind::kLevelSetAccelerated:
      result = AcceleratedLevelSetSolve(problem, options, x0, config.epsilon,
                                        *accel, config.limits);
      break;
    case SchemeKind::kBisection:
    case SchemeKind::kBisectionAccelerated:
      result = BisectionSolve(
          problem, options, x0,
          BisectionConfig{config.bisection_lower_bound, config.gamma},
          config.limits, accel, config.epsilon);
      break;
  }
  const auto stop = std::chrono::steady_clock::now();

  RunReport report;
  report.variant = variant.name();
  report.problem = problem.name();
  report.termination = result.termination;
  report.best_value = result.best_value;
  if (problem.known_optimum() && std::isfinite(result.best_value)) {
    report.quality = QualityScore(result.best_value, *problem.known_optimum());
  }
  report.projections = result.counters.projections;
  report.objective_evaluations = result.counters.objective_evaluations;
  report.sweeps = result.counters.sweeps;
  report.outer_steps = result.outer_steps;
  report.wall_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  report.epsilon = result.epsilon;
  report.best_point = std::move(result.best_point);
  report.trace = std::move(result.trace);
  return report;
}

double QualityScore(double f_hat, double f_star) {
  if (f_star == 0.0) return f_hat;
  if (std::abs(f_star) <= 1.0) return f_hat - f_star;
  return (f_hat - f_star) / std::abs(f_star);
}

double NearestRank(std::span<const double> sorted, double p) {
  if (sorted.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "quantile of empty data");
  }
  const double n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(p * n - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

StatsSummary Aggregate(std::span<const double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "aggregate of empty list");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  StatsSummary s;
  double sum = 0.0;
  for (double v : sorted) sum += v;
  s.average = sum / static_cast<double>(sorted.size());
  const std::size_t mid = sorted.size() / 2;
  s.median = sorted.size() % 2 == 1 ? sorted[mid]
                                    : 0.5 * (sorted[mid - 1] + sorted[mid]);
  s.q10 = NearestRank(sorted, 0.1);
  s.q90 = NearestRank(sorted, 0.9);
  return s;
}

std::string_view MetricName(Metric metric) {
  switch (metric) {
    case Metric::kQuality:
      return "Q";
    case Metric::kProjections:
      return "projections";
    case Metric::kObjectiveEvaluations:
      return "obj_evals";
    case Metric::kOuterSteps:
      return "outer_steps";
  }
  return "?";
}

std::optional<double> MetricValue(const RunReport& report, Metric metric) {
  switch (metric) {
    case Metric::kQuality:
      return report.quality;
    case Metric::kProjections:
      return static_cast<double>(report.projections);
    case Metric::kObjectiveEvaluations:
      return static_cast<double>(report.objective_evaluations);
    case Metric::kOuterSteps:
      return static_cast<double>(report.outer_steps);
  }
  return std::nullopt;
}

std::vector<SummaryRow> Summarize(std::span<const RunReport> reports) {
  std::vector<std::string> variants;
  for (const auto& r : reports) {
    if (std::find(variants.begin(), variants.end(), r.variant) ==
        variants.end()) {
      variants.push_back(r.variant);
    }
  }
  std::vector<SummaryRow> rows;
  for (const auto& v : variants) {
    for (Metric metric : kAllMetrics) {
      std::vector<double> values;
      for (const auto& r : reports) {
        if (r.variant != v) continue;
        if (auto value = MetricValue(r, metric)) values.push_back(*value);
      }
      if (!values.empty()) rows.push_back({v, metric, Aggregate(values)});
    }
  }
  return rows;
}

std::optional<double> DecreaseRate(const RunReport& report) {
  if (report.trace.size() < 2) return std::nullopt;
  const double total = report.trace.front().value - report.trace.back().value;
  return total / static_cast<double>(report.trace.size() - 1);
}

std::optional<double> SpeedupFactor(const RunReport& a, const RunReport& b,
                                    SpeedupMetric metric) {
  if (a.problem != b.problem) {
    throw Error(ErrorCode::kInvalidArgument,
                "speedup needs runs on the same problem");
  }
  switch (metric) {
    case SpeedupMetric::kProjections:
      if (a.projections == 0) return std::nullopt;
      return static_cast<double>(b.projections) /
                 static_cast<double>(a.projections) -
             1.0;
    case SpeedupMetric::kObjectiveEvaluations:
      if (a.objective_evaluations == 0) return std::nullopt;
      return static_cast<double>(b.objective_evaluations) /
                 static_cast<double>(a.objective_evaluations) -
             1.0;
    case SpeedupMetric::kObjectiveDecrease: {
      const auto ra = DecreaseRate(a);
      const auto rb = DecreaseRate(b);
      if (!ra || !rb || *rb == 0.0) return std::nullopt;
      return *ra / *rb - 1.0;
    }
  }
  return std::nullopt;
}

namespace {

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string OptNum(std::optional<double> v) {
  return v && std::isfinite(*v) ? Num(*v) : std::string();
}

std::ofstream OpenForWrite(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  }
  return out;
}

void CheckWritten(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) {
    throw Error(ErrorCode::kIo, "write failed for '" + path.string() + "'");
  }
}

constexpr const char* kRunsHeader =
    "problem,variant,status,f_hat,Q,projections,obj_evals,outer_steps,ms";

}  // namespace

void EmitReport(std::span<const RunReport> reports, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create '" + dir + "'");

  const fs::path runs_path = fs::path(dir) / "runs.csv";
  {
    auto out = OpenForWrite(runs_path);
    out << kRunsHeader << "\n";
    for (const auto& r : reports) {
      out << r.problem << ',' << r.variant << ','
          << TerminationName(r.termination) << ',' << OptNum(r.best_value)
          << ',' << OptNum(r.quality) << ',' << r.projections << ','
          << r.objective_evaluations << ',' << r.outer_steps << ','
          << Num(r.wall_ms) << "\n";
    }
    CheckWritten(out, runs_path);
  }

  const fs::path summary_path = fs::path(dir) / "summary.csv";
  if (reports.empty()) {
    fs::remove(summary_path, ec);
  } else {
    auto out = OpenForWrite(summary_path);
    out << "variant,metric,avg,median,q10,q90\n";
    for (const auto& row : Summarize(reports)) {
      out << row.variant << ',' << MetricName(row.metric) << ','
          << Num(row.stats.average) << ',' << Num(row.stats.median) << ','
          << Num(row.stats.q10) << ',' << Num(row.stats.q90) << "\n";
    }
    CheckWritten(out, summary_path);
  }

  nlohmann::ordered_json meta;
  meta["quantile_method"] = "nearest-rank";
  meta["median"] = "midpoint of the two central values for even counts";
  meta["number_format"] = "%.17g";
  meta["projections"] =
      "one per constraint evaluated by a feasibility solver";
  meta["obj_evals"] = "objective evaluations by the outer scheme";
  meta["outer_steps"] = "feasibility problems attempted, including the first";
  meta["runs"] = reports.size();
  const fs::path meta_path = fs::path(dir) / "report_meta.json";
  auto out = OpenForWrite(meta_path);
  out << meta.dump(2) << "\n";
  CheckWritten(out, meta_path);
}

void WriteTraceCsv(const RunReport& report, const std::string& path) {
  auto out = OpenForWrite(path);
  out << "step,level,value\n";
  for (const auto& p : report.trace) {
    out << p.step << ',' << Num(p.level) << ',' << Num(p.value) << "\n";
  }
  CheckWritten(out, path);
}

namespace {

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::optional<double> ParseOptional(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::stod(s);
}

}  // namespace

std::vector<RunsCsvRow> ReadRunsCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != kRunsHeader) {
    throw Error(ErrorCode::kParse, path + ": unexpected header");
  }
  std::vector<RunsCsvRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = SplitCsv(line);
    if (f.size() != 9) {
      throw Error(ErrorCode::kParse,
                  path + ":" + std::to_string(line_no) + ": expected 9 fields");
    }
    try {
      rows.push_back({f[0], f[1], f[2], ParseOptional(f[3]),
                      ParseOptional(f[4]), std::stoull(f[5]),
                      std::stoull(f[6]), std::stoull(f[7]), std::stod(f[8])});
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kParse,
                  path + ":" + std::to_string(line_no) + ": malformed number");
    }
  }
  return rows;
}

std::map<std::string, double> ReadOptimaFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read '" + path + "'");
  std::map<std::string, double> optima;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    std::string name;
    std::string value;
    if (!(fields >> name)) continue;
    std::string extra;
    if (!(fields >> value) || (fields >> extra)) {
      throw Error(ErrorCode::kParse, path + ":" + std::to_string(line_no) +
                                         ": expected '<name> <value>'");
    }
    try {
      std::size_t used = 0;
      const double v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      optima[name] = v;
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kParse, path + ":" + std::to_string(line_no) +
                                         ": malformed value '" + value + "'");
    }
  }
  return optima;
}

namespace {

ConvexFunction Quadratic2d(double c1, double c2, double constant) {
  DenseMatrix q(2, 2);
  q(0, 0) = 1.0;
  q(1, 1) = 1.0;
  return ConvexFunction::Quadratic({q, {c1, c2}, constant});
}

Problem Qp2d(std::string name, double c1, double c2, double constant,
             double fstar) {
  std::vector<ConvexFunction> rows = {
      ConvexFunction::Affine(AffineConstraint::LessEqual({1.0, 1.0}, 2.0))};
  return Problem(std::move(name), Quadratic2d(c1, c2, constant),
                 std::move(rows), VariableBounds{{0.0, 0.0}, {kInfinity, kInfinity}},
                 fstar);
}

Problem SyntheticDose(std::uint64_t seed) {
  constexpr std::size_t kBeamlets = 8;
  constexpr std::size_t kTumor = 24;
  constexpr std::size_t kRisk = 16;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  DoseModel model;
  model.dose = DenseMatrix(kTumor + kRisk, kBeamlets);
  for (std::size_t i = 0; i < kTumor + kRisk; ++i) {
    const double scale = i < kTumor ? 1.0 : 0.5;
    for (std::size_t j = 0; j < kBeamlets; ++j) {
      model.dose(i, j) = scale * unit(rng) / kBeamlets;
    }
  }
  for (std::size_t i = 0; i < kTumor; ++i) model.tumor_voxels.push_back(i);
  for (std::size_t i = 0; i < kRisk; ++i) {
    model.risk_voxels.push_back(kTumor + i);
  }
  model.prescription = 1.0;
  model.norm_exponent = 8;
  std::vector<ConvexFunction> constraints = {
      ConvexFunction::Level(ConvexFunction::Overdose(model), 0.1),
      ConvexFunction::Level(ConvexFunction::PNorm(model), 0.6),
  };
  return Problem("imrt-small", ConvexFunction::Underdose(model),
                 std::move(constraints),
                 VariableBounds{Vector(kBeamlets, 0.0), Vector(kBeamlets, 10.0)});
}

}  // namespace

const std::vector<std::string>& BuiltinNames() {
  static const std::vector<std::string> names = {
      "square-above-one", "linear-unit", "qp2d",
      "qp2d-shifted",     "infeasible",  "imrt-small"};
  return names;
}

Problem BuiltinProblem(std::string_view name, std::uint64_t seed) {
  if (name == "square-above-one") {
    return Problem(std::string(name),
                   ConvexFunction::Quadratic({DenseMatrix(1, 1, 2.0), {0.0}, 0.0}),
                   {ConvexFunction::Affine(AffineConstraint::GreaterEqual({1.0}, 1.0))},
                   std::nullopt, 1.0);
  }
  if (name == "linear-unit") {
    return Problem(std::string(name),
                   ConvexFunction::Quadratic({DenseMatrix(1, 1, 0.0), {1.0}, 0.0}),
                   {ConvexFunction::Affine(AffineConstraint::Interval({1.0}, 0.0, 1.0))},
                   std::nullopt, 0.0);
  }
  if (name == "qp2d") return Qp2d(std::string(name), -1.0, 0.0, 0.0, -0.5);
  if (name == "qp2d-shifted") {
    return Qp2d(std::string(name), -2.0, -1.0, 2.5, 0.25);
  }
  if (name == "infeasible") {
    return Problem(std::string(name),
                   ConvexFunction::Quadratic({DenseMatrix(1, 1, 2.0), {0.0}, 0.0}),
                   {ConvexFunction::Affine(AffineConstraint::LessEqual({1.0}, -1.0)),
                    ConvexFunction::Affine(AffineConstraint::GreaterEqual({1.0}, 1.0))});
  }
  if (name == "imrt-small") return SyntheticDose(seed);
  throw Error(ErrorCode::kInvalidArgument,
              "unknown builtin problem '" + std::string(name) + "'");
}

std::vector<Problem> LoadProblemDirectory(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw Error(ErrorCode::kIo, "not a directory: '" + dir + "'");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".qps") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::map<std::string, double> optima;
  const fs::path optima_path = fs::path(dir) / "optima.txt";
  if (fs::exists(optima_path)) optima = ReadOptimaFile(optima_path.string());

  std::vector<Problem> problems;
  for (const auto& file : files) {
    auto parsed = ParseQpsFile(file.string());
    if (!parsed.ok()) {
      std::string message = file.string() + ": ";
      for (const auto& d : parsed.diagnostics) {
        if (d.severity == Severity::kError) {
          message += d.ToString();
          break;
        }
      }
      throw Error(ErrorCode::kParse, message);
    }
    const std::string stem = file.stem().string();
    std::optional<double> fstar;
    if (auto it = optima.find(stem); it != optima.end()) fstar = it->second;
    problems.push_back(parsed.problem->WithName(stem).WithKnownOptimum(fstar));
  }
  return problems;
}

BenchResult Bench(std::span<const Problem> problems,
                  std::span<const VariantSpec> variants,
                  const RunConfig& config) {
  BenchResult result;
  for (const auto& problem : problems) {
    for (const auto& variant : variants) {
      if (!VariantValidFor(variant, problem)) {
        result.skipped.push_back(problem.name() + "/" + variant.name() +
                                 ": needs affine constraints");
        continue;
      }
      try {
        result.reports.push_back(RunVariant(variant, problem, config));
      } catch (const Error& e) {
        result.skipped.push_back(problem.name() + "/" + variant.name() + ": " +
                                 e.what());
      }
    }
  }
  return result;
}

}  // namespace levelcfp
