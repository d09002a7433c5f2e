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

// Sequential projection solvers for convex feasibility problems
//
//   find x with g_i(x) <= 0 for all i,
//
// using the cyclic control i(k) = k mod m. All solvers stop with kFound only
// after one pass in which every constraint was measured at the current point
// with violation <= feas_tol and nothing moved; otherwise they give up after
// a fixed budget ("time-out"), which callers interpret as infeasibility.
//
//  * CSPM: relaxed subgradient projections for arbitrary convex g_i.
//  * POCS: relaxed orthogonal projections for affine sets; non-affine sets
//    fall back to the subgradient projection.
//  * ART3+: ART3 automatic relaxation for interval constraints plus a control
//    that skips constraints already satisfied in the current cycle.

#ifndef LEVELCFP_FEASIBILITY_H_
#define LEVELCFP_FEASIBILITY_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "levelcfp/convex_function.h"
#include "levelcfp/counters.h"
#include "levelcfp/linalg.h"
#include "levelcfp/problem.h"
#include "levelcfp/projections.h"

namespace levelcfp {

enum class FeasibilitySolver { kCspm, kPocs, kArt3Plus };

std::string_view FeasibilitySolverName(FeasibilitySolver solver);

// How the time-out budget is measured.
enum class BudgetUnit { kSweeps, kProjections };

struct FeasibilityConfig {
  Relaxation relaxation = Relaxation::Constant(1.5);
  std::size_t max_iterations = 1000;
  BudgetUnit budget_unit = BudgetUnit::kSweeps;
  double feas_tol = 1e-8;

  void Validate() const;
};

enum class FeasibilityStatus {
  kFound,
  kTimedOut,
  // A violated constraint has a zero subgradient, so its set is empty.
  kInfeasible,
};

struct FeasibilityOutcome {
  FeasibilityStatus status = FeasibilityStatus::kTimedOut;
  // Found point, or the last iterate on time-out.
  Vector x;
  std::size_t sweeps = 0;
  // Number of steps that actually changed x.
  std::size_t moves = 0;
  RunCounters counters;

  bool found() const { return status == FeasibilityStatus::kFound; }
};

// Called with the current iterate after every move.
using IterateObserver = std::function<void(ConstVectorView)>;

// Constraints in cyclic order. Evaluations of the constraint at
// objective_index (the adjoined level constraint f(x) - t, if any) count as
// objective evaluations.
struct ConstraintSet {
  std::span<const ConvexFunction> constraints;
  std::optional<std::size_t> objective_index;
};

struct SweepResult {
  // Every constraint was verified at the current point without a move.
  bool verified = false;
  // Stopped early: some constraint set is provably empty.
  bool empty_set = false;
  std::size_t moves = 0;
};

// One solver's sweep operator with whatever control state it carries across
// sweeps (ART3+ keeps its active list).
class FeasibilitySweeper {
 public:
  virtual ~FeasibilitySweeper() = default;

  static std::unique_ptr<FeasibilitySweeper> Create(
      FeasibilitySolver solver, ConstraintSet set,
      const FeasibilityConfig& config);

  virtual SweepResult Sweep(std::span<double> x, RunCounters& counters,
                            const IterateObserver& observer) = 0;
  // Forget verifications made so far; used after x was moved externally.
  virtual void Reset() {}
};

// Runs sweeps of `solver` from x0 until verified or the budget is spent.
FeasibilityOutcome SolveFeasibility(FeasibilitySolver solver,
                                    ConstraintSet set, ConstVectorView x0,
                                    const FeasibilityConfig& config,
                                    const IterateObserver& observer = {});

FeasibilityOutcome CspmSolve(std::span<const ConvexFunction> constraints,
                             ConstVectorView x0,
                             const FeasibilityConfig& config,
                             const IterateObserver& observer = {});

FeasibilityOutcome PocsSolve(std::span<const AffineConstraint> sets,
                             ConstVectorView x0,
                             const FeasibilityConfig& config,
                             const IterateObserver& observer = {});

// Interval constraints l <= a^T x <= u; halfspaces and hyperplanes are
// accepted as the degenerate cases l = -inf and l = u.
FeasibilityOutcome Art3PlusSolve(std::span<const AffineConstraint> intervals,
                                 ConstVectorView x0,
                                 const FeasibilityConfig& config,
                                 const IterateObserver& observer = {});

// The constraint set of the problem plus f(x) - t <= 0 appended last.
// t = +inf drops the level constraint.
class LevelConstraintSet {
 public:
  LevelConstraintSet(const Problem& problem, double level);

  ConstraintSet view() const;
  const std::vector<ConvexFunction>& constraints() const {
    return constraints_;
  }

 private:
  std::vector<ConvexFunction> constraints_;
  std::optional<std::size_t> objective_index_;
};

FeasibilityOutcome SolveWithLevel(const Problem& problem, double level,
                                  FeasibilitySolver solver, ConstVectorView x0,
                                  const FeasibilityConfig& config,
                                  const IterateObserver& observer = {});

}  // namespace levelcfp

#endif  // LEVELCFP_FEASIBILITY_H_
