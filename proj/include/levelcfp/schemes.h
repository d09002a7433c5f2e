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

// Optimization by a sequence of feasibility problems. Each step solves
//
//   find x with f(x) <= t and g_i(x) <= 0 for all i
//
// for a level t that moves down (level-set scheme) or is bisected between a
// lower and an upper bound on the optimal value (bisection scheme). A step
// that times out is taken as infeasibility of the level, which certifies the
// last feasible point.

#ifndef LEVELCFP_SCHEMES_H_
#define LEVELCFP_SCHEMES_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "levelcfp/counters.h"
#include "levelcfp/feasibility.h"
#include "levelcfp/linalg.h"
#include "levelcfp/problem.h"
#include "levelcfp/superiorize.h"

namespace levelcfp {

enum class EpsilonMode {
  kMaxFloor,        // max(factor |f|, floor)
  kMultiplicative,  // factor |f|
  kConstant,        // floor
};

struct EpsilonRule {
  EpsilonMode mode = EpsilonMode::kMaxFloor;
  double factor = 0.1;
  double floor = 0.1;

  void Validate() const;
};

double EpsilonUpdate(double fx, const EpsilonRule& rule);

// Classification of how a scheme stopped. A projection solver can only time
// out, so "the level is infeasible" and "the threshold was passed" are
// reported together.
enum class Termination {
  kCase1,           // the very first feasibility problem failed
  kCase2Or3,        // a later problem failed; the certificate applies
  kIterationCap,    // every attempt succeeded until the outer-step cap
};

std::string_view TerminationName(Termination termination);

Termination ClassifyTermination(std::size_t successes, bool last_failed);

struct TracePoint {
  std::size_t step = 0;
  double level = 0.0;  // t_k
  double value = 0.0;  // f(x^k)
};

struct PerturbationRecord {
  std::size_t step = 0;
  double step_size = 0.0;
  double value_before = 0.0;
  double value_after = 0.0;
};

struct SchemeResult {
  Termination termination = Termination::kCase1;
  // Last feasible point (last iterate for kCase1).
  Vector best_point;
  double best_value = 0.0;
  // Certificate: epsilon of the last feasible point (level-set) or the final
  // interval width bound gamma (bisection).
  double epsilon = 0.0;
  // Feasibility problems attempted, including the initial one.
  std::size_t outer_steps = 0;
  // Feasible points found, one entry per success.
  std::vector<TracePoint> trace;
  std::vector<PerturbationRecord> perturbations;
  RunCounters counters;
  // Bisection interval at termination.
  double lower_bound = 0.0;
  double upper_bound = 0.0;
};

// How each level feasibility problem is solved.
struct CfpOptions {
  FeasibilitySolver solver = FeasibilitySolver::kCspm;
  FeasibilityConfig feasibility;
  std::optional<SuperiorizationSettings> superiorization;
};

FeasibilityOutcome SolveLevelCfp(const Problem& problem, double level,
                                 const CfpOptions& options,
                                 ConstVectorView x0);

struct AccelerationConfig {
  double c = 1.0;
  double s = 0.5;
  std::size_t block = 1000;
  double step_factor = 1.9;
  // Halve the step until f does not increase instead of the fixed step.
  bool adaptive = false;

  void Validate() const;
};

// x - alpha grad f(x); fixed alpha = step_factor, or backtracking from it.
// Objective evaluations are added to `counters`.
PerturbationRecord GradientPerturbation(const ConvexFunction& objective,
                                        const AccelerationConfig& accel,
                                        Vector& x, RunCounters& counters);

struct SchemeLimits {
  // Cap on feasibility problems after the initial one.
  std::size_t max_outer = 10000;
};

SchemeResult LevelSetSolve(const Problem& problem, const CfpOptions& options,
                           ConstVectorView x0, const EpsilonRule& rule,
                           const SchemeLimits& limits = {});

SchemeResult AcceleratedLevelSetSolve(const Problem& problem,
                                      const CfpOptions& options,
                                      ConstVectorView x0,
                                      const EpsilonRule& rule,
                                      const AccelerationConfig& accel,
                                      const SchemeLimits& limits = {});

struct BisectionConfig {
  // Lower bound f_l on f over the feasible set; defaults to
  // min(0, f(x0) - |f(x0)|) when absent, or f(x0) - 1 if that leaves no
  // room above gamma.
  std::optional<double> lower_bound;
  double gamma = 1e-5;

  void Validate() const;
};

// `accel` enables the stall-triggered gradient perturbation of the warm
// start. `rule` only feeds the stall test.
SchemeResult BisectionSolve(
    const Problem& problem, const CfpOptions& options, ConstVectorView x0,
    const BisectionConfig& config, const SchemeLimits& limits = {},
    const std::optional<AccelerationConfig>& accel = std::nullopt,
    const EpsilonRule& rule = {});

// f(x) = x^2 - 100 on the real line, x0 = sqrt(500), epsilon_k = 0.1|f|,
// with an exact level oracle x^k = sqrt(100 + t_{k-1}). Shows that a
// summable epsilon sequence can stall far above t* = -100.
struct CounterexampleReport {
  std::vector<double> points;    // x^k
  std::vector<double> values;    // f(x^k)
  std::vector<double> epsilons;  // eps_k
  std::vector<double> levels;    // t_k
  std::vector<double> recursion_points;  // sqrt(10 + 0.9 (x^{k-1})^2)
  double optimal_value = -100.0;
  double epsilon_tail_sum = 0.0;  // sum over k >= 1 of eps_k
  bool levels_nonnegative = true;
  bool gap_exceeds_100 = true;
  bool tail_sum_bounded = true;
};

CounterexampleReport RunCounterexample(std::size_t last_step = 100);

}  // namespace levelcfp

#endif  // LEVELCFP_SCHEMES_H_
