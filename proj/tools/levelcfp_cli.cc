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


// levelcfp command line: solve, bench and diag subcommands on top of the C
// interface.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "levelcfp_c.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitInputError = 2;

struct RunFlags {
  double max_sweeps = 1000;
  double gamma = 1e-5;
  double lambda = 1.5;
  std::string epsilon_rule = "max-floor";
  double epsilon_factor = 0.1;
  double epsilon_floor = 0.1;
  double block = 1000;
  double accel_c = 1.0;
  double accel_s = 0.5;
  double sup_n = 1;
  double sup_a = 0.5;
  double feas_tol = 1e-8;
  std::optional<double> max_outer;
  std::optional<double> bisection_lower;
  bool adaptive = false;
};

void AddRunFlags(CLI::App* app, RunFlags& f) {
  app->add_option("--max-sweeps", f.max_sweeps,
                  "sweep budget per feasibility problem")
      ->capture_default_str();
  app->add_option("--gamma", f.gamma, "bisection tolerance")
      ->capture_default_str();
  app->add_option("--lambda", f.lambda, "relaxation parameter in (0, 2)")
      ->capture_default_str();
  app->add_option("--epsilon-rule", f.epsilon_rule, "level decrement rule")
      ->check(CLI::IsMember({"max-floor", "mult", "const"}))
      ->capture_default_str();
  app->add_option("--epsilon-factor", f.epsilon_factor)->capture_default_str();
  app->add_option("--epsilon-floor", f.epsilon_floor)->capture_default_str();
  app->add_option("--block", f.block, "stall block size")
      ->capture_default_str();
  app->add_option("--accel-c", f.accel_c)->capture_default_str();
  app->add_option("--accel-s", f.accel_s, "stall threshold (inf disables)")
      ->capture_default_str();
  app->add_option("--sup-N", f.sup_n, "perturbations per outer step")
      ->capture_default_str();
  app->add_option("--sup-a", f.sup_a, "step size kernel in (0, 1)")
      ->capture_default_str();
  app->add_option("--feas-tol", f.feas_tol)->capture_default_str();
  app->add_option("--max-outer", f.max_outer, "cap on level steps");
  app->add_option("--bisection-lower", f.bisection_lower,
                  "lower bound for bisection");
  app->add_flag("--adaptive", f.adaptive,
                "backtracking gradient perturbation");
}

int ReportError(const char* context) {
  std::cerr << "error: " << context << ": " << lcfp_last_error() << "\n";
  return kExitInputError;
}

class Options {
 public:
  Options() { lcfp_options_create(&handle_); }
  ~Options() { lcfp_options_free(handle_); }
  Options(const Options&) = delete;
  Options& operator=(const Options&) = delete;

  bool Apply(const RunFlags& f) {
    const std::pair<const char*, double> values[] = {
        {"max_sweeps", f.max_sweeps}, {"gamma", f.gamma},
        {"lambda", f.lambda},         {"epsilon_factor", f.epsilon_factor},
        {"epsilon_floor", f.epsilon_floor}, {"block", f.block},
        {"accel_c", f.accel_c},       {"accel_s", f.accel_s},
        {"sup_n", f.sup_n},           {"sup_a", f.sup_a},
        {"feas_tol", f.feas_tol},
    };
    for (const auto& [key, value] : values) {
      if (lcfp_options_set(handle_, key, value) != LCFP_OK) return false;
    }
    if (f.max_outer &&
        lcfp_options_set(handle_, "max_outer", *f.max_outer) != LCFP_OK) {
      return false;
    }
    if (f.bisection_lower &&
        lcfp_options_set(handle_, "bisection_lower", *f.bisection_lower) !=
            LCFP_OK) {
      return false;
    }
    return lcfp_options_set_epsilon_rule(handle_, f.epsilon_rule.c_str()) ==
               LCFP_OK &&
           lcfp_options_set_adaptive(handle_, f.adaptive) == LCFP_OK;
  }

  const lcfp_options* get() const { return handle_; }

 private:
  lcfp_options* handle_ = nullptr;
};

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct SolveFlags {
  std::string qps;
  std::string builtin;
  std::string variant;
  std::optional<double> fstar;
  std::string fstar_file;
  std::uint64_t seed = 1;
  std::string out;
};

int RunSolve(const SolveFlags& s, const RunFlags& flags) {
  Options options;
  if (!options.Apply(flags)) return ReportError("options");

  lcfp_problem* problem = nullptr;
  const lcfp_status loaded =
      s.qps.empty()
          ? lcfp_problem_builtin(s.builtin.c_str(), s.seed, &problem)
          : lcfp_problem_from_qps_file(s.qps.c_str(), &problem);
  if (loaded != LCFP_OK) return ReportError("problem");
  std::unique_ptr<lcfp_problem, decltype(&lcfp_problem_free)> problem_guard(
      problem, lcfp_problem_free);

  if (s.fstar && lcfp_problem_set_optimum(problem, *s.fstar) != LCFP_OK) {
    return ReportError("--fstar");
  }
  if (!s.fstar_file.empty()) {
    int found = 0;
    if (lcfp_problem_set_optimum_from_file(problem, s.fstar_file.c_str(),
                                           &found) != LCFP_OK) {
      return ReportError("--fstar-file");
    }
    if (!found) {
      std::cerr << "warning: no optimum for '" << lcfp_problem_name(problem)
                << "' in " << s.fstar_file << "\n";
    }
  }

  lcfp_report* report = nullptr;
  if (lcfp_solve(problem, s.variant.c_str(), options.get(), &report) !=
      LCFP_OK) {
    return ReportError("solve");
  }
  std::unique_ptr<lcfp_report, decltype(&lcfp_report_free)> report_guard(
      report, lcfp_report_free);
  if (lcfp_report_write(report, s.out.c_str()) != LCFP_OK) {
    return ReportError("report");
  }

  double q = 0.0;
  const bool has_q = lcfp_report_quality(report, &q);
  std::cout << "problem=" << lcfp_report_problem(report)
            << " variant=" << lcfp_report_variant(report)
            << " status=" << lcfp_report_status(report)
            << " f_hat=" << Num(lcfp_report_best_value(report))
            << " epsilon=" << Num(lcfp_report_epsilon(report))
            << " Q=" << (has_q ? Num(q) : std::string("-"))
            << " projections=" << lcfp_report_projections(report)
            << " obj_evals=" << lcfp_report_objective_evaluations(report)
            << " outer_steps=" << lcfp_report_outer_steps(report) << "\n";
  return lcfp_report_termination(report) == LCFP_CASE1 ? kExitInfeasible
                                                         : kExitOk;
}

int RunBench(const std::string& problems, const std::string& variants,
             const std::string& out, const RunFlags& flags) {
  Options options;
  if (!options.Apply(flags)) return ReportError("options");
  lcfp_bench* bench = nullptr;
  if (lcfp_bench_run(problems.c_str(), variants.c_str(), options.get(),
                     &bench) != LCFP_OK) {
    return ReportError("bench");
  }
  std::unique_ptr<lcfp_bench, decltype(&lcfp_bench_free)> guard(
      bench, lcfp_bench_free);
  for (std::size_t i = 0; i < lcfp_bench_skipped_count(bench); ++i) {
    std::cerr << "skipped " << lcfp_bench_skipped(bench, i) << "\n";
  }
  if (lcfp_bench_write(bench, out.c_str()) != LCFP_OK) {
    return ReportError("report");
  }
  std::cout << lcfp_bench_size(bench) << " runs written to " << out << "\n";
  return kExitOk;
}

int RunCounterexample(std::size_t steps) {
  lcfp_counterexample* ce = nullptr;
  if (lcfp_counterexample_run(steps, &ce) != LCFP_OK) {
    return ReportError("counterexample");
  }
  std::unique_ptr<lcfp_counterexample, decltype(&lcfp_counterexample_free)>
      guard(ce, lcfp_counterexample_free);
  std::cout << "k,x,f,epsilon,level,recursion\n";
  for (std::size_t k = 0; k < lcfp_counterexample_size(ce); ++k) {
    double x, f, eps, t, r;
    lcfp_counterexample_step(ce, k, &x, &f, &eps, &t, &r);
    std::cout << k << ',' << Num(x) << ',' << Num(f) << ',' << Num(eps) << ','
              << Num(t) << ',' << Num(r) << "\n";
  }
  int nonneg = 0, gap = 0, bounded = 0;
  double tail = 0.0;
  lcfp_counterexample_checks(ce, &nonneg, &gap, &bounded, &tail);
  auto verdict = [](int ok) { return ok ? "pass" : "FAIL"; };
  std::cout << "check levels_nonnegative " << verdict(nonneg) << "\n"
            << "check gap_at_least_100 " << verdict(gap) << "\n"
            << "check epsilon_tail_sum_bounded " << verdict(bounded)
            << " sum=" << Num(tail) << "\n";
  return nonneg && gap && bounded ? kExitOk : kExitInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex minimization through sequences of feasibility problems"};
  app.require_subcommand(1);
  app.set_version_flag("--version", lcfp_version());

  RunFlags solve_flags;
  SolveFlags solve;
  auto* solve_cmd = app.add_subcommand("solve", "run one variant on a problem");
  auto* qps_opt =
      solve_cmd->add_option("--qps", solve.qps, "QPS file")->check(CLI::ExistingFile);
  auto* builtin_opt =
      solve_cmd->add_option("--builtin", solve.builtin, "builtin problem name");
  qps_opt->excludes(builtin_opt);
  solve_cmd->add_option("--variant", solve.variant, "variant name")->required();
  auto* fstar_opt = solve_cmd->add_option("--fstar", solve.fstar, "known optimum");
  auto* fstar_file_opt =
      solve_cmd->add_option("--fstar-file", solve.fstar_file, "optima file");
  fstar_opt->excludes(fstar_file_opt);
  solve_cmd->add_option("--seed", solve.seed, "seed for synthetic problems")
      ->capture_default_str();
  solve_cmd->add_option("--out", solve.out, "output directory")->required();
  AddRunFlags(solve_cmd, solve_flags);

  RunFlags bench_flags;
  std::string bench_problems, bench_variants = "all", bench_out;
  auto* bench_cmd = app.add_subcommand("bench", "run variants over a directory");
  bench_cmd->add_option("--problems", bench_problems, "directory of .qps files")
      ->required()
      ->check(CLI::ExistingDirectory);
  bench_cmd->add_option("--variants", bench_variants, "all or a comma list")
      ->capture_default_str();
  bench_cmd->add_option("--out", bench_out, "output directory")->required();
  AddRunFlags(bench_cmd, bench_flags);

  std::size_t ce_steps = 100;
  auto* diag_cmd = app.add_subcommand("diag", "diagnostics");
  diag_cmd->require_subcommand(1);
  auto* ce_cmd = diag_cmd->add_subcommand(
      "counterexample", "level-set run on x^2 - 100 with summable epsilons");
  ce_cmd->add_option("--steps", ce_steps, "last step")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  if (solve_cmd->parsed()) {
    if (solve.qps.empty() == solve.builtin.empty()) {
      std::cerr << "error: exactly one of --qps and --builtin is required\n";
      return kExitInputError;
    }
    return RunSolve(solve, solve_flags);
  }
  if (bench_cmd->parsed()) {
    return RunBench(bench_problems, bench_variants, bench_out, bench_flags);
  }
  if (ce_cmd->parsed()) return RunCounterexample(ce_steps);
  return kExitInputError;
}
