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


#include "levelcfp_c.h"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <limits>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "levelcfp/error.h"
#include "levelcfp/harness.h"
#include "levelcfp/qps.h"
#include "levelcfp/schemes.h"

struct lcfp_problem {
  levelcfp::Problem problem;
};

struct lcfp_options {
  levelcfp::RunConfig config;
};

struct lcfp_report {
  levelcfp::RunReport report;
};

struct lcfp_bench {
  std::vector<lcfp_report> reports;
  std::vector<std::string> skipped;
};

struct lcfp_counterexample {
  levelcfp::CounterexampleReport report;
};

namespace {

thread_local std::string g_last_error;

lcfp_status ToStatus(levelcfp::ErrorCode code) {
  using levelcfp::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return LCFP_ERR_INVALID_ARGUMENT;
    case ErrorCode::kDimensionMismatch:
      return LCFP_ERR_DIMENSION;
    case ErrorCode::kNumerical:
      return LCFP_ERR_NUMERICAL;
    case ErrorCode::kParse:
      return LCFP_ERR_PARSE;
    case ErrorCode::kIo:
      return LCFP_ERR_IO;
  }
  return LCFP_ERR_INTERNAL;
}

lcfp_status Fail(lcfp_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename Body>
lcfp_status Guard(Body&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const levelcfp::Error& e) {
    return Fail(ToStatus(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(LCFP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(LCFP_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(LCFP_ERR_INTERNAL, "unknown error");
  }
}

#define LCFP_REQUIRE(ptr)                                              \
  do {                                                                 \
    if ((ptr) == nullptr) {                                            \
      return Fail(LCFP_ERR_NULL_POINTER, #ptr " must not be null");    \
    }                                                                  \
  } while (0)

lcfp_status FromParse(levelcfp::QpsParseResult parsed, lcfp_problem** out) {
  if (!parsed.ok()) {
    std::string message;
    for (const auto& d : parsed.diagnostics) {
      if (d.severity != levelcfp::Severity::kError) continue;
      if (!message.empty()) message += "\n";
      message += d.ToString();
    }
    return Fail(LCFP_ERR_PARSE, message);
  }
  *out = new lcfp_problem{std::move(*parsed.problem)};
  return LCFP_OK;
}

const levelcfp::RunConfig& DefaultConfig() {
  static const levelcfp::RunConfig config;
  return config;
}

std::size_t ToCount(const char* key, double value) {
  if (!(value >= 0.0) || value != std::floor(value) || value > 1e15) {
    throw levelcfp::Error(levelcfp::ErrorCode::kInvalidArgument,
                          std::string(key) + " must be a nonnegative integer");
  }
  return static_cast<std::size_t>(value);
}

std::vector<levelcfp::VariantSpec> ParseVariantList(const std::string& list) {
  std::vector<levelcfp::VariantSpec> specs;
  if (list == "all") {
    for (const auto& name : levelcfp::VariantRegistry()) {
      specs.push_back(levelcfp::VariantSpec::Parse(name));
    }
    return specs;
  }
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = std::min(list.find(',', start), list.size());
    const std::string name = list.substr(start, comma - start);
    if (!name.empty()) specs.push_back(levelcfp::VariantSpec::Parse(name));
    start = comma + 1;
  }
  if (specs.empty()) {
    throw levelcfp::Error(levelcfp::ErrorCode::kInvalidArgument,
                          "empty variant list");
  }
  return specs;
}

}  // namespace

extern "C" {

const char* lcfp_version(void) { return "0.1.0"; }

const char* lcfp_last_error(void) { return g_last_error.c_str(); }

const char* lcfp_status_name(lcfp_status status) {
  switch (status) {
    case LCFP_OK:
      return "ok";
    case LCFP_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case LCFP_ERR_DIMENSION:
      return "dimension mismatch";
    case LCFP_ERR_NUMERICAL:
      return "numerical error";
    case LCFP_ERR_PARSE:
      return "parse error";
    case LCFP_ERR_IO:
      return "i/o error";
    case LCFP_ERR_NULL_POINTER:
      return "null pointer";
    case LCFP_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

lcfp_status lcfp_problem_from_qps_file(const char* path, lcfp_problem** out) {
  return Guard([&] {
    LCFP_REQUIRE(path);
    LCFP_REQUIRE(out);
    auto parsed = levelcfp::ParseQpsFile(path);
    if (!parsed.ok() && !parsed.diagnostics.empty() &&
        parsed.diagnostics.front().line == 0 && !std::filesystem::exists(path)) {
      return Fail(LCFP_ERR_IO, parsed.diagnostics.front().message);
    }
    auto status = FromParse(std::move(parsed), out);
    if (status == LCFP_OK) {
      (*out)->problem = (*out)->problem.WithName(
          std::filesystem::path(path).stem().string());
    }
    return status;
  });
}

lcfp_status lcfp_problem_from_qps_text(const char* text, lcfp_problem** out) {
  return Guard([&] {
    LCFP_REQUIRE(text);
    LCFP_REQUIRE(out);
    return FromParse(levelcfp::ParseQps(std::string_view(text)), out);
  });
}

lcfp_status lcfp_problem_builtin(const char* name, uint64_t seed,
                                 lcfp_problem** out) {
  return Guard([&] {
    LCFP_REQUIRE(name);
    LCFP_REQUIRE(out);
    *out = new lcfp_problem{levelcfp::BuiltinProblem(name, seed)};
    return LCFP_OK;
  });
}

size_t lcfp_builtin_count(void) { return levelcfp::BuiltinNames().size(); }

const char* lcfp_builtin_name(size_t index) {
  const auto& names = levelcfp::BuiltinNames();
  return index < names.size() ? names[index].c_str() : nullptr;
}

lcfp_status lcfp_problem_set_optimum(lcfp_problem* problem, double fstar) {
  return Guard([&] {
    LCFP_REQUIRE(problem);
    if (!std::isfinite(fstar)) {
      return Fail(LCFP_ERR_INVALID_ARGUMENT, "optimum must be finite");
    }
    problem->problem = problem->problem.WithKnownOptimum(fstar);
    return LCFP_OK;
  });
}

lcfp_status lcfp_problem_set_optimum_from_file(lcfp_problem* problem,
                                               const char* path, int* found) {
  return Guard([&] {
    LCFP_REQUIRE(problem);
    LCFP_REQUIRE(path);
    const auto optima = levelcfp::ReadOptimaFile(path);
    const auto it = optima.find(problem->problem.name());
    if (found != nullptr) *found = it != optima.end();
    if (it != optima.end()) {
      problem->problem = problem->problem.WithKnownOptimum(it->second);
    }
    return LCFP_OK;
  });
}

const char* lcfp_problem_name(const lcfp_problem* problem) {
  return problem ? problem->problem.name().c_str() : nullptr;
}

size_t lcfp_problem_dimension(const lcfp_problem* problem) {
  return problem ? problem->problem.dimension() : 0;
}

lcfp_status lcfp_problem_write_qps(const lcfp_problem* problem, char* buffer,
                                   size_t capacity, size_t* needed) {
  return Guard([&] {
    LCFP_REQUIRE(problem);
    const std::string text = levelcfp::WriteQps(problem->problem);
    if (needed != nullptr) *needed = text.size() + 1;
    if (buffer != nullptr && capacity > text.size()) {
      std::memcpy(buffer, text.c_str(), text.size() + 1);
    } else if (buffer != nullptr) {
      return Fail(LCFP_ERR_INVALID_ARGUMENT, "buffer too small");
    }
    return LCFP_OK;
  });
}

void lcfp_problem_free(lcfp_problem* problem) { delete problem; }

lcfp_status lcfp_options_create(lcfp_options** out) {
  return Guard([&] {
    LCFP_REQUIRE(out);
    *out = new lcfp_options{};
    return LCFP_OK;
  });
}

lcfp_status lcfp_options_set(lcfp_options* options, const char* key,
                             double value) {
  return Guard([&] {
    LCFP_REQUIRE(options);
    LCFP_REQUIRE(key);
    levelcfp::RunConfig next = options->config;
    const std::string k(key);
    if (k == "max_sweeps") {
      next.feasibility.max_iterations = ToCount(key, value);
    } else if (k == "gamma") {
      next.gamma = value;
    } else if (k == "lambda") {
      next.feasibility.relaxation = levelcfp::Relaxation::Constant(value);
    } else if (k == "epsilon_factor") {
      next.epsilon.factor = value;
    } else if (k == "epsilon_floor") {
      next.epsilon.floor = value;
    } else if (k == "block") {
      next.acceleration.block = ToCount(key, value);
    } else if (k == "accel_c") {
      next.acceleration.c = value;
    } else if (k == "accel_s") {
      next.acceleration.s = value;
    } else if (k == "sup_n") {
      next.superiorization.perturbations = ToCount(key, value);
    } else if (k == "sup_a") {
      next.superiorization.step_kernel = value;
    } else if (k == "feas_tol") {
      next.feasibility.feas_tol = value;
    } else if (k == "max_outer") {
      next.limits.max_outer = ToCount(key, value);
    } else if (k == "bisection_lower") {
      next.bisection_lower_bound = value;
    } else {
      return Fail(LCFP_ERR_INVALID_ARGUMENT, "unknown option '" + k + "'");
    }
    next.feasibility.Validate();
    next.epsilon.Validate();
    next.acceleration.Validate();
    next.superiorization.Validate();
    levelcfp::BisectionConfig{next.bisection_lower_bound, next.gamma}.Validate();
    options->config = next;
    return LCFP_OK;
  });
}

lcfp_status lcfp_options_set_epsilon_rule(lcfp_options* options,
                                          const char* rule) {
  return Guard([&] {
    LCFP_REQUIRE(options);
    LCFP_REQUIRE(rule);
    const std::string r(rule);
    if (r == "max-floor") {
      options->config.epsilon.mode = levelcfp::EpsilonMode::kMaxFloor;
    } else if (r == "mult") {
      options->config.epsilon.mode = levelcfp::EpsilonMode::kMultiplicative;
    } else if (r == "const") {
      options->config.epsilon.mode = levelcfp::EpsilonMode::kConstant;
    } else {
      return Fail(LCFP_ERR_INVALID_ARGUMENT,
                  "epsilon rule must be max-floor, mult or const");
    }
    return LCFP_OK;
  });
}

lcfp_status lcfp_options_set_adaptive(lcfp_options* options, int adaptive) {
  return Guard([&] {
    LCFP_REQUIRE(options);
    options->config.acceleration.adaptive = adaptive != 0;
    return LCFP_OK;
  });
}

void lcfp_options_free(lcfp_options* options) { delete options; }

size_t lcfp_variant_count(void) { return levelcfp::VariantRegistry().size(); }

const char* lcfp_variant_name(size_t index) {
  const auto& names = levelcfp::VariantRegistry();
  return index < names.size() ? names[index].c_str() : nullptr;
}

lcfp_status lcfp_variant_valid(const char* variant,
                               const lcfp_problem* problem, int* valid) {
  return Guard([&] {
    LCFP_REQUIRE(variant);
    LCFP_REQUIRE(problem);
    LCFP_REQUIRE(valid);
    *valid = levelcfp::VariantValidFor(levelcfp::VariantSpec::Parse(variant),
                                       problem->problem);
    return LCFP_OK;
  });
}

lcfp_status lcfp_solve(const lcfp_problem* problem, const char* variant,
                       const lcfp_options* options, lcfp_report** out) {
  return Guard([&] {
    LCFP_REQUIRE(problem);
    LCFP_REQUIRE(variant);
    LCFP_REQUIRE(out);
    const auto& config = options ? options->config : DefaultConfig();
    *out = new lcfp_report{levelcfp::RunVariant(
        levelcfp::VariantSpec::Parse(variant), problem->problem, config)};
    return LCFP_OK;
  });
}

lcfp_termination lcfp_report_termination(const lcfp_report* report) {
  if (report == nullptr) return LCFP_CASE1;
  switch (report->report.termination) {
    case levelcfp::Termination::kCase1:
      return LCFP_CASE1;
    case levelcfp::Termination::kCase2Or3:
      return LCFP_CASE2_OR_3;
    case levelcfp::Termination::kIterationCap:
      return LCFP_ITERATION_CAP;
  }
  return LCFP_CASE1;
}

const char* lcfp_report_status(const lcfp_report* report) {
  return report ? levelcfp::TerminationName(report->report.termination).data()
                : nullptr;
}

const char* lcfp_report_variant(const lcfp_report* report) {
  return report ? report->report.variant.c_str() : nullptr;
}

const char* lcfp_report_problem(const lcfp_report* report) {
  return report ? report->report.problem.c_str() : nullptr;
}

double lcfp_report_best_value(const lcfp_report* report) {
  return report ? report->report.best_value
                : std::numeric_limits<double>::quiet_NaN();
}

int lcfp_report_quality(const lcfp_report* report, double* q) {
  if (report == nullptr || !report->report.quality) return 0;
  if (q != nullptr) *q = *report->report.quality;
  return 1;
}

double lcfp_report_epsilon(const lcfp_report* report) {
  return report ? report->report.epsilon : 0.0;
}

uint64_t lcfp_report_projections(const lcfp_report* report) {
  return report ? report->report.projections : 0;
}

uint64_t lcfp_report_objective_evaluations(const lcfp_report* report) {
  return report ? report->report.objective_evaluations : 0;
}

uint64_t lcfp_report_outer_steps(const lcfp_report* report) {
  return report ? report->report.outer_steps : 0;
}

uint64_t lcfp_report_sweeps(const lcfp_report* report) {
  return report ? report->report.sweeps : 0;
}

double lcfp_report_wall_ms(const lcfp_report* report) {
  return report ? report->report.wall_ms : 0.0;
}

size_t lcfp_report_dimension(const lcfp_report* report) {
  return report ? report->report.best_point.size() : 0;
}

lcfp_status lcfp_report_point(const lcfp_report* report, double* x,
                              size_t length) {
  return Guard([&] {
    LCFP_REQUIRE(report);
    LCFP_REQUIRE(x);
    const auto& p = report->report.best_point;
    if (length != p.size()) {
      return Fail(LCFP_ERR_DIMENSION, "point has length " +
                                          std::to_string(p.size()));
    }
    std::copy(p.begin(), p.end(), x);
    return LCFP_OK;
  });
}

size_t lcfp_report_trace_size(const lcfp_report* report) {
  return report ? report->report.trace.size() : 0;
}

lcfp_status lcfp_report_trace_point(const lcfp_report* report, size_t index,
                                    size_t* step, double* level,
                                    double* value) {
  return Guard([&] {
    LCFP_REQUIRE(report);
    const auto& trace = report->report.trace;
    if (index >= trace.size()) {
      return Fail(LCFP_ERR_INVALID_ARGUMENT, "trace index out of range");
    }
    if (step != nullptr) *step = trace[index].step;
    if (level != nullptr) *level = trace[index].level;
    if (value != nullptr) *value = trace[index].value;
    return LCFP_OK;
  });
}

lcfp_status lcfp_report_write(const lcfp_report* report, const char* dir) {
  return Guard([&] {
    LCFP_REQUIRE(report);
    LCFP_REQUIRE(dir);
    levelcfp::EmitReport(std::span(&report->report, 1), dir);
    levelcfp::WriteTraceCsv(
        report->report, (std::filesystem::path(dir) / "trace.csv").string());
    return LCFP_OK;
  });
}

void lcfp_report_free(lcfp_report* report) { delete report; }

lcfp_status lcfp_bench_run(const char* problem_dir, const char* variants,
                           const lcfp_options* options, lcfp_bench** out) {
  return Guard([&] {
    LCFP_REQUIRE(problem_dir);
    LCFP_REQUIRE(variants);
    LCFP_REQUIRE(out);
    const auto specs = ParseVariantList(variants);
    const auto problems = levelcfp::LoadProblemDirectory(problem_dir);
    auto result = levelcfp::Bench(
        problems, specs, options ? options->config : DefaultConfig());
    auto* bench = new lcfp_bench;
    bench->reports.reserve(result.reports.size());
    for (auto& r : result.reports) bench->reports.push_back({std::move(r)});
    bench->skipped = std::move(result.skipped);
    *out = bench;
    return LCFP_OK;
  });
}

size_t lcfp_bench_size(const lcfp_bench* bench) {
  return bench ? bench->reports.size() : 0;
}

const lcfp_report* lcfp_bench_report(const lcfp_bench* bench, size_t index) {
  if (bench == nullptr || index >= bench->reports.size()) return nullptr;
  return &bench->reports[index];
}

size_t lcfp_bench_skipped_count(const lcfp_bench* bench) {
  return bench ? bench->skipped.size() : 0;
}

const char* lcfp_bench_skipped(const lcfp_bench* bench, size_t index) {
  if (bench == nullptr || index >= bench->skipped.size()) return nullptr;
  return bench->skipped[index].c_str();
}

lcfp_status lcfp_bench_write(const lcfp_bench* bench, const char* dir) {
  return Guard([&] {
    LCFP_REQUIRE(bench);
    LCFP_REQUIRE(dir);
    std::vector<levelcfp::RunReport> reports;
    reports.reserve(bench->reports.size());
    for (const auto& r : bench->reports) reports.push_back(r.report);
    levelcfp::EmitReport(reports, dir);
    return LCFP_OK;
  });
}

void lcfp_bench_free(lcfp_bench* bench) { delete bench; }

lcfp_status lcfp_counterexample_run(size_t last_step,
                                    lcfp_counterexample** out) {
  return Guard([&] {
    LCFP_REQUIRE(out);
    *out = new lcfp_counterexample{levelcfp::RunCounterexample(last_step)};
    return LCFP_OK;
  });
}

size_t lcfp_counterexample_size(const lcfp_counterexample* ce) {
  return ce ? ce->report.values.size() : 0;
}

lcfp_status lcfp_counterexample_step(const lcfp_counterexample* ce, size_t k,
                                     double* x, double* value, double* epsilon,
                                     double* level, double* recursion) {
  return Guard([&] {
    LCFP_REQUIRE(ce);
    const auto& r = ce->report;
    if (k >= r.values.size()) {
      return Fail(LCFP_ERR_INVALID_ARGUMENT, "step out of range");
    }
    if (x != nullptr) *x = r.points[k];
    if (value != nullptr) *value = r.values[k];
    if (epsilon != nullptr) *epsilon = r.epsilons[k];
    if (level != nullptr) *level = r.levels[k];
    if (recursion != nullptr) *recursion = r.recursion_points[k];
    return LCFP_OK;
  });
}

lcfp_status lcfp_counterexample_checks(const lcfp_counterexample* ce,
                                       int* levels_nonnegative,
                                       int* gap_exceeds_100,
                                       int* tail_sum_bounded,
                                       double* tail_sum) {
  return Guard([&] {
    LCFP_REQUIRE(ce);
    const auto& r = ce->report;
    if (levels_nonnegative) *levels_nonnegative = r.levels_nonnegative;
    if (gap_exceeds_100) *gap_exceeds_100 = r.gap_exceeds_100;
    if (tail_sum_bounded) *tail_sum_bounded = r.tail_sum_bounded;
    if (tail_sum) *tail_sum = r.epsilon_tail_sum;
    return LCFP_OK;
  });
}

void lcfp_counterexample_free(lcfp_counterexample* ce) { delete ce; }

}  // extern "C"
