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

#include "levelcfp/feasibility.h"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "levelcfp/error.h"

namespace levelcfp {

std::string_view FeasibilitySolverName(FeasibilitySolver solver) {
  switch (solver) {
    case FeasibilitySolver::kCspm:
      return "cspm";
    case FeasibilitySolver::kPocs:
      return "pocs";
    case FeasibilitySolver::kArt3Plus:
      return "art3+";
  }
  return "unknown";
}

void FeasibilityConfig::Validate() const {
  if (max_iterations == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "feasibility: iteration budget must be positive");
  }
  if (!(feas_tol >= 0.0) || !std::isfinite(feas_tol)) {
    throw Error(ErrorCode::kInvalidArgument,
                "feasibility: tolerance must be finite and >= 0");
  }
}

namespace {

void CheckConstraintSet(const ConstraintSet& set, std::size_t n) {
  if (set.constraints.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "feasibility: constraint list is empty");
  }
  for (const ConvexFunction& g : set.constraints) {
    if (g.dimension() != n) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "feasibility: starting point has " + std::to_string(n) +
                      " entries, constraint expects " +
                      std::to_string(g.dimension()));
    }
  }
  if (set.objective_index && *set.objective_index >= set.constraints.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "feasibility: objective index out of range");
  }
}

// Shared bookkeeping for the three sweepers.
class SweeperBase : public FeasibilitySweeper {
 public:
  SweeperBase(ConstraintSet set, const FeasibilityConfig& config)
      : set_(set), config_(config) {}

 protected:

  double Measure(std::size_t i, ConstVectorView x, RunCounters& counters) {
    ++counters.projections;
    if (set_.objective_index == i) ++counters.objective_evaluations;
    return set_.constraints[i].Eval(x);
  }

  // False when the subgradient vanishes at a violated point: the convex
  // function then has no point below zero at all.
  bool SubgradientMove(std::size_t i, double value, double lambda,
                       std::span<double> x) {
    const Vector xi = set_.constraints[i].Subgradient(x);
    if (!(SquaredNorm(xi) >= kSubgradientUnderflow)) return false;
    SubgradientStepInPlace(value, xi, lambda, x);
    return true;
  }

  double NextLambda() { return config_.relaxation.At(step_++); }

  ConstraintSet set_;
  FeasibilityConfig config_;
  std::size_t step_ = 0;
};

class CspmSweeper final : public SweeperBase {
 public:
  using SweeperBase::SweeperBase;

  SweepResult Sweep(std::span<double> x, RunCounters& counters,
                    const IterateObserver& observer) override {
    SweepResult result;
    for (std::size_t i = 0; i < set_.constraints.size(); ++i) {
      const double lambda = NextLambda();
      const double value = Measure(i, x, counters);
      if (value > config_.feas_tol) {
        if (!SubgradientMove(i, value, lambda, x)) {
          result.empty_set = true;
          return result;
        }
        ++result.moves;
        if (observer) observer(x);
      }
    }
    result.verified = result.moves == 0;
    return result;
  }
};

class PocsSweeper final : public SweeperBase {
 public:
  using SweeperBase::SweeperBase;

  SweepResult Sweep(std::span<double> x, RunCounters& counters,
                    const IterateObserver& observer) override {
    SweepResult result;
    for (std::size_t i = 0; i < set_.constraints.size(); ++i) {
      const double lambda = NextLambda();
      const double value = Measure(i, x, counters);
      if (value <= config_.feas_tol) continue;
      if (const AffineConstraint* a = set_.constraints[i].affine()) {
        const Vector px = ProjectAffine(*a, x);
        const Vector next = RelaxStep(x, px, lambda);
        std::copy(next.begin(), next.end(), x.begin());
      } else if (!SubgradientMove(i, value, lambda, x)) {
        result.empty_set = true;
        return result;
      }
      ++result.moves;
      if (observer) observer(x);
    }
    result.verified = result.moves == 0;
    return result;
  }
};

// ART3 step for lower <= a^T x <= upper with half-width w: a residual within
// 2w beyond a bound is reflected across that bound, anything further is
// projected onto the midpoint hyperplane. Halfspaces (infinite width) are
// projected onto their boundary.
void Art3Move(const AffineConstraint& c, std::span<double> x) {
  const double r = c.Activity(x);
  double target = r;
  if (c.sense == ConstraintSense::kLessEqual) {
    target = c.upper;
  } else {
    const double w = 0.5 * (c.upper - c.lower);
    const double mid = 0.5 * (c.lower + c.upper);
    if (r > c.upper) {
      target = (r <= c.upper + 2.0 * w) ? 2.0 * c.upper - r : mid;
    } else if (r < c.lower) {
      target = (r >= c.lower - 2.0 * w) ? 2.0 * c.lower - r : mid;
    }
  }
  Axpy((target - r) / SquaredNorm(c.normal), c.normal, x);
}

class Art3PlusSweeper final : public SweeperBase {
 public:
  Art3PlusSweeper(ConstraintSet set, const FeasibilityConfig& config)
      : SweeperBase(set, config) {
    for (std::size_t i = 0; i < set_.constraints.size(); ++i) {
      const ConvexFunction& g = set_.constraints[i];
      if (!g.affine() && set_.objective_index != i) {
        throw Error(ErrorCode::kInvalidArgument,
                    "art3+: constraint " + std::to_string(i) + " (" +
                        std::string(FunctionKindName(g.kind())) +
                        ") is not an interval-affine constraint");
      }
    }
    Reset();
  }

  void Reset() override {
    active_.resize(set_.constraints.size());
    std::iota(active_.begin(), active_.end(), std::size_t{0});
    moved_in_cycle_ = false;
  }

  SweepResult Sweep(std::span<double> x, RunCounters& counters,
                    const IterateObserver& observer) override {
    SweepResult result;
    std::vector<std::size_t> still_active;
    still_active.reserve(active_.size());
    for (std::size_t i : active_) {
      const double value = Measure(i, x, counters);
      if (value <= config_.feas_tol) continue;
      if (const AffineConstraint* a = set_.constraints[i].affine()) {
        Art3Move(*a, x);
      } else if (!SubgradientMove(i, value, 1.0, x)) {
        result.empty_set = true;
        return result;
      }
      ++result.moves;
      moved_in_cycle_ = true;
      still_active.push_back(i);
      if (observer) observer(x);
    }
    active_ = std::move(still_active);
    if (active_.empty()) {
      if (!moved_in_cycle_) {
        result.verified = true;
      } else {
        Reset();
      }
    }
    return result;
  }

 private:
  std::vector<std::size_t> active_;
  bool moved_in_cycle_ = false;
};

std::vector<ConvexFunction> WrapAffine(std::span<const AffineConstraint> sets) {
  std::vector<ConvexFunction> out;
  out.reserve(sets.size());
  for (const AffineConstraint& c : sets) {
    out.push_back(ConvexFunction::Affine(c));
  }
  return out;
}

}  // namespace

std::unique_ptr<FeasibilitySweeper> FeasibilitySweeper::Create(
    FeasibilitySolver solver, ConstraintSet set,
    const FeasibilityConfig& config) {
  switch (solver) {
    case FeasibilitySolver::kCspm:
      return std::make_unique<CspmSweeper>(set, config);
    case FeasibilitySolver::kPocs:
      return std::make_unique<PocsSweeper>(set, config);
    case FeasibilitySolver::kArt3Plus:
      return std::make_unique<Art3PlusSweeper>(set, config);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown feasibility solver");
}

FeasibilityOutcome SolveFeasibility(FeasibilitySolver solver,
                                    ConstraintSet set, ConstVectorView x0,
                                    const FeasibilityConfig& config,
                                    const IterateObserver& observer) {
  config.Validate();
  CheckConstraintSet(set, x0.size());
  if (!AllFinite(x0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "feasibility: starting point is not finite");
  }
  auto sweeper = FeasibilitySweeper::Create(solver, set, config);

  FeasibilityOutcome outcome;
  outcome.x.assign(x0.begin(), x0.end());
  while (true) {
    const SweepResult sweep = sweeper->Sweep(outcome.x, outcome.counters,
                                             observer);
    ++outcome.sweeps;
    ++outcome.counters.sweeps;
    outcome.moves += sweep.moves;
    if (sweep.empty_set) {
      outcome.status = FeasibilityStatus::kInfeasible;
      return outcome;
    }
    if (sweep.verified) {
      outcome.status = FeasibilityStatus::kFound;
      return outcome;
    }
    const std::uint64_t used = config.budget_unit == BudgetUnit::kSweeps
                                   ? outcome.sweeps
                                   : outcome.counters.projections;
    if (used >= config.max_iterations) return outcome;
  }
}

FeasibilityOutcome CspmSolve(std::span<const ConvexFunction> constraints,
                             ConstVectorView x0,
                             const FeasibilityConfig& config,
                             const IterateObserver& observer) {
  return SolveFeasibility(FeasibilitySolver::kCspm, {constraints, {}}, x0,
                          config, observer);
}

FeasibilityOutcome PocsSolve(std::span<const AffineConstraint> sets,
                             ConstVectorView x0,
                             const FeasibilityConfig& config,
                             const IterateObserver& observer) {
  const std::vector<ConvexFunction> wrapped = WrapAffine(sets);
  return SolveFeasibility(FeasibilitySolver::kPocs, {wrapped, {}}, x0, config,
                          observer);
}

FeasibilityOutcome Art3PlusSolve(std::span<const AffineConstraint> intervals,
                                 ConstVectorView x0,
                                 const FeasibilityConfig& config,
                                 const IterateObserver& observer) {
  const std::vector<ConvexFunction> wrapped = WrapAffine(intervals);
  return SolveFeasibility(FeasibilitySolver::kArt3Plus, {wrapped, {}}, x0,
                          config, observer);
}

LevelConstraintSet::LevelConstraintSet(const Problem& problem, double level)
    : constraints_(problem.feasibility_constraints()) {
  if (std::isnan(level) || level == -kInfinity) {
    throw Error(ErrorCode::kInvalidArgument,
                "level constraint: level must be finite or +inf");
  }
  if (level != kInfinity) {
    objective_index_ = constraints_.size();
    constraints_.push_back(ConvexFunction::Level(problem.objective(), level));
  }
}

ConstraintSet LevelConstraintSet::view() const {
  return {constraints_, objective_index_};
}

FeasibilityOutcome SolveWithLevel(const Problem& problem, double level,
                                  FeasibilitySolver solver, ConstVectorView x0,
                                  const FeasibilityConfig& config,
                                  const IterateObserver& observer) {
  if (x0.size() != problem.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "starting point has " + std::to_string(x0.size()) +
                    " entries, problem has " +
                    std::to_string(problem.dimension()));
  }
  const LevelConstraintSet set(problem, level);
  if (set.constraints().empty()) {
    // Unconstrained and no level: every point is feasible.
    FeasibilityOutcome outcome;
    outcome.status = FeasibilityStatus::kFound;
    outcome.x.assign(x0.begin(), x0.end());
    outcome.sweeps = 1;
    outcome.counters.sweeps = 1;
    return outcome;
  }
  return SolveFeasibility(solver, set.view(), x0, config, observer);
}

}  // namespace levelcfp
