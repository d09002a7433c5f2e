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

#include "levelcfp/schemes.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "levelcfp/error.h"

namespace levelcfp {

void EpsilonRule::Validate() const {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw Error(ErrorCode::kInvalidArgument,
                "epsilon rule: factor must be positive");
  }
  if (mode != EpsilonMode::kMultiplicative &&
      (!(floor > 0.0) || !std::isfinite(floor))) {
    throw Error(ErrorCode::kInvalidArgument,
                "epsilon rule: floor must be positive");
  }
}

double EpsilonUpdate(double fx, const EpsilonRule& rule) {
  switch (rule.mode) {
    case EpsilonMode::kMaxFloor:
      return std::max(rule.factor * std::abs(fx), rule.floor);
    case EpsilonMode::kMultiplicative:
      return rule.factor * std::abs(fx);
    case EpsilonMode::kConstant:
      return rule.floor;
  }
  return rule.floor;
}

std::string_view TerminationName(Termination termination) {
  switch (termination) {
    case Termination::kCase1:
      return "case1";
    case Termination::kCase2Or3:
      return "case2or3";
    case Termination::kIterationCap:
      return "iteration_cap";
  }
  return "unknown";
}

Termination ClassifyTermination(std::size_t successes, bool last_failed) {
  if (!last_failed) return Termination::kIterationCap;
  return successes == 0 ? Termination::kCase1 : Termination::kCase2Or3;
}

FeasibilityOutcome SolveLevelCfp(const Problem& problem, double level,
                                 const CfpOptions& options,
                                 ConstVectorView x0) {
  if (options.superiorization) {
    return SuperiorizedSolveWithLevel(problem, level, options.solver, x0,
                                      options.feasibility,
                                      *options.superiorization);
  }
  return SolveWithLevel(problem, level, options.solver, x0,
                        options.feasibility);
}

void AccelerationConfig::Validate() const {
  if (!(c > 0.0) || !(s > 0.0) || block == 0 || !(step_factor > 0.0) ||
      !std::isfinite(step_factor)) {
    throw Error(ErrorCode::kInvalidArgument,
                "acceleration: c, s, block and step factor must be positive");
  }
}

void BisectionConfig::Validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorCode::kInvalidArgument,
                "bisection: gamma must be positive");
  }
  if (lower_bound && !std::isfinite(*lower_bound)) {
    throw Error(ErrorCode::kInvalidArgument,
                "bisection: lower bound must be finite");
  }
}

namespace {

using LevelOracle =
    std::function<FeasibilityOutcome(double level, ConstVectorView x)>;

class ObjectiveEvaluator {
 public:
  ObjectiveEvaluator(const ConvexFunction& objective, RunCounters& counters)
      : objective_(objective), counters_(counters) {}

  double operator()(ConstVectorView x) const {
    ++counters_.objective_evaluations;
    const double value = objective_.Eval(x);
    if (!std::isfinite(value)) {
      throw Error(ErrorCode::kNumerical, "objective value is not finite");
    }
    return value;
  }

 private:
  const ConvexFunction& objective_;
  RunCounters& counters_;
};

SchemeResult LevelSetLoop(const ConvexFunction& objective,
                          const LevelOracle& oracle, ConstVectorView x0,
                          const EpsilonRule& rule,
                          const std::optional<AccelerationConfig>& accel,
                          const SchemeLimits& limits) {
  rule.Validate();
  if (accel) accel->Validate();
  SchemeResult result;
  const ObjectiveEvaluator f(objective, result.counters);

  FeasibilityOutcome out = oracle(kInfinity, x0);
  result.counters += out.counters;
  result.outer_steps = 1;
  if (!out.found()) {
    result.termination = ClassifyTermination(0, true);
    result.best_point = std::move(out.x);
    result.best_value = std::numeric_limits<double>::quiet_NaN();
    return result;
  }

  Vector x = std::move(out.x);
  double fx = f(x);
  double eps = EpsilonUpdate(fx, rule);
  double level = fx - eps;
  result.trace.push_back({0, level, fx});

  double previous_level = kInfinity;  // t_{k-2}
  std::size_t stalls = 0;             // delta
  for (std::size_t k = 1;; ++k) {
    if (k > limits.max_outer) {
      result.termination = ClassifyTermination(k, false);
      break;
    }
    Vector start = x;
    double attempt_level = level;
    bool perturbed = false;
    if (accel) {
      if (k >= 2 && std::abs(previous_level - level) <= accel->c * eps) {
        ++stalls;
      }
      if (static_cast<double>(stalls) / static_cast<double>(accel->block) >
          accel->s) {
        stalls = 0;
        PerturbationRecord record =
            GradientPerturbation(objective, *accel, start, result.counters);
        record.step = k;
        result.perturbations.push_back(record);
        attempt_level = record.value_after - eps;
        perturbed = true;
      }
    }

    out = oracle(attempt_level, start);
    result.counters += out.counters;
    ++result.outer_steps;
    if (!out.found() && perturbed) {
      // The perturbed level may be too ambitious; the certificate is only
      // drawn from an unperturbed attempt.
      attempt_level = level;
      out = oracle(attempt_level, x);
      result.counters += out.counters;
      ++result.outer_steps;
    }
    if (!out.found()) {
      result.termination = ClassifyTermination(k, true);
      break;
    }
    previous_level = attempt_level;
    x = std::move(out.x);
    fx = f(x);
    eps = EpsilonUpdate(fx, rule);
    level = fx - eps;
    result.trace.push_back({k, level, fx});
  }
  result.best_point = std::move(x);
  result.best_value = fx;
  result.epsilon = eps;
  return result;
}

LevelOracle MakeOracle(const Problem& problem, const CfpOptions& options) {
  return [&problem, &options](double level, ConstVectorView x) {
    return SolveLevelCfp(problem, level, options, x);
  };
}

}  // namespace

PerturbationRecord GradientPerturbation(const ConvexFunction& objective,
                                        const AccelerationConfig& accel,
                                        Vector& x, RunCounters& counters) {
  const ObjectiveEvaluator f(objective, counters);
  PerturbationRecord record;
  const Vector gradient = objective.Subgradient(x);
  record.value_before = f(x);
  double alpha = accel.step_factor;
  if (!accel.adaptive) {
    Axpy(-alpha, gradient, x);
    record.step_size = alpha;
    record.value_after = f(x);
    return record;
  }
  const double smallest = accel.step_factor * std::ldexp(1.0, -60);
  while (alpha >= smallest) {
    Vector candidate = x;
    Axpy(-alpha, gradient, candidate);
    const double value = f(candidate);
    if (value <= record.value_before) {
      x = std::move(candidate);
      record.step_size = alpha;
      record.value_after = value;
      return record;
    }
    alpha *= 0.5;
  }
  record.step_size = 0.0;
  record.value_after = record.value_before;
  return record;
}

SchemeResult LevelSetSolve(const Problem& problem, const CfpOptions& options,
                           ConstVectorView x0, const EpsilonRule& rule,
                           const SchemeLimits& limits) {
  return LevelSetLoop(problem.objective(), MakeOracle(problem, options), x0,
                      rule, std::nullopt, limits);
}

SchemeResult AcceleratedLevelSetSolve(const Problem& problem,
                                      const CfpOptions& options,
                                      ConstVectorView x0,
                                      const EpsilonRule& rule,
                                      const AccelerationConfig& accel,
                                      const SchemeLimits& limits) {
  return LevelSetLoop(problem.objective(), MakeOracle(problem, options), x0,
                      rule, accel, limits);
}

SchemeResult BisectionSolve(const Problem& problem, const CfpOptions& options,
                            ConstVectorView x0, const BisectionConfig& config,
                            const SchemeLimits& limits,
                            const std::optional<AccelerationConfig>& accel,
                            const EpsilonRule& rule) {
  config.Validate();
  if (accel) {
    accel->Validate();
    rule.Validate();
  }
  SchemeResult result;
  const ObjectiveEvaluator f(problem.objective(), result.counters);

  FeasibilityOutcome out = SolveLevelCfp(problem, kInfinity, options, x0);
  result.counters += out.counters;
  result.outer_steps = 1;
  if (!out.found()) {
    result.termination = ClassifyTermination(0, true);
    result.best_point = std::move(out.x);
    result.best_value = std::numeric_limits<double>::quiet_NaN();
    result.epsilon = config.gamma;
    return result;
  }

  Vector x = std::move(out.x);
  double upper = f(x);
  double lower;
  if (config.lower_bound) {
    lower = std::min(*config.lower_bound, upper);
  } else {
    lower = std::min(0.0, upper - std::abs(upper));
    // The default is empty when f(x0) = 0; widen it so bisection can move.
    if (upper - lower <= config.gamma) lower = upper - 1.0;
  }
  result.trace.push_back({0, kInfinity, upper});

  double previous_level = kInfinity;
  std::size_t stalls = 0;
  std::size_t steps = 0;
  result.termination = Termination::kCase2Or3;
  while (upper - lower > config.gamma) {
    if (steps >= limits.max_outer) {
      result.termination = Termination::kIterationCap;
      break;
    }
    const double level = 0.5 * (lower + upper);
    Vector start = x;
    bool perturbed = false;
    if (accel) {
      const double eps = EpsilonUpdate(upper, rule);
      if (steps >= 1 && std::abs(previous_level - level) <= accel->c * eps) {
        ++stalls;
      }
      if (static_cast<double>(stalls) / static_cast<double>(accel->block) >
          accel->s) {
        stalls = 0;
        PerturbationRecord record =
            GradientPerturbation(problem.objective(), *accel, start,
                                 result.counters);
        record.step = steps + 1;
        result.perturbations.push_back(record);
        perturbed = true;
      }
    }
    out = SolveLevelCfp(problem, level, options, start);
    result.counters += out.counters;
    ++result.outer_steps;
    if (!out.found() && perturbed) {
      out = SolveLevelCfp(problem, level, options, x);
      result.counters += out.counters;
      ++result.outer_steps;
    }
    ++steps;
    if (out.found()) {
      x = std::move(out.x);
      upper = f(x);
      lower = std::min(lower, upper);
      result.trace.push_back({steps, level, upper});
    } else {
      lower = level;
    }
    previous_level = level;
  }
  result.best_point = std::move(x);
  result.best_value = upper;
  result.epsilon = config.gamma;
  result.lower_bound = lower;
  result.upper_bound = upper;
  return result;
}

CounterexampleReport RunCounterexample(std::size_t last_step) {
  // The exact oracle returns x^k = sqrt(100 + t_{k-1}), so f(x^k) = t_{k-1}
  // holds exactly and is used instead of re-evaluating x^2 - 100.
  EpsilonRule rule;
  rule.mode = EpsilonMode::kMultiplicative;
  CounterexampleReport report;
  double x = std::sqrt(500.0);
  double value = 500.0 - 100.0;
  for (std::size_t k = 0; k <= last_step; ++k) {
    const double eps = EpsilonUpdate(value, rule);
    const double level = value - eps;
    report.points.push_back(x);
    report.values.push_back(value);
    report.epsilons.push_back(eps);
    report.levels.push_back(level);
    if (k == 0) {
      report.recursion_points.push_back(x);
    } else {
      const double prev = report.points[k - 1];
      report.recursion_points.push_back(std::sqrt(10.0 + 0.9 * prev * prev));
      report.epsilon_tail_sum += eps;
    }
    report.levels_nonnegative &= level >= 0.0;
    report.gap_exceeds_100 &= std::abs(value - report.optimal_value) >= 100.0;
    x = std::sqrt(100.0 + level);
    value = level;
  }
  report.tail_sum_bounded = report.epsilon_tail_sum <= report.levels[0];
  return report;
}

}  // namespace levelcfp
