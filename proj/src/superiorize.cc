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

#include "levelcfp/superiorize.h"

#include <cmath>
#include <string>

#include "levelcfp/error.h"

namespace levelcfp {

void SuperiorizationSettings::Validate() const {
  if (!(step_kernel > 0.0 && step_kernel < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "superiorization: step kernel must lie in (0, 1), got " +
                    std::to_string(step_kernel));
  }
  if (!(displacement_tol >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "superiorization: displacement tolerance must be >= 0");
  }
}

Vector NonAscendingDirection(const ConvexFunction& merit, ConstVectorView x) {
  Vector d = merit.Subgradient(x);
  const double norm = Norm(d);
  if (norm == 0.0 || !std::isfinite(norm)) {
    std::fill(d.begin(), d.end(), 0.0);
    return d;
  }
  for (double& v : d) v = -v / norm;
  return d;
}

bool InDomain(const std::optional<VariableBounds>& domain, ConstVectorView x) {
  if (!domain) return true;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= domain->lower[i] && x[i] <= domain->upper[i])) return false;
  }
  return true;
}

FeasibilityOutcome SuperiorizedSolve(FeasibilitySolver base, ConstraintSet set,
                                     ConstVectorView x0,
                                     const FeasibilityConfig& config,
                                     const SuperiorizationConfig& sup,
                                     PerturbationTrace* trace,
                                     const IterateObserver& observer) {
  config.Validate();
  sup.settings.Validate();
  if (set.constraints.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "superiorization: constraint list is empty");
  }
  if (sup.merit.dimension() != x0.size() ||
      set.constraints.front().dimension() != x0.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "superiorization: dimension mismatch");
  }
  if (sup.domain && (sup.domain->lower.size() != x0.size() ||
                     sup.domain->upper.size() != x0.size())) {
    throw Error(ErrorCode::kDimensionMismatch,
                "superiorization: domain dimension mismatch");
  }
  if (!AllFinite(x0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "superiorization: starting point is not finite");
  }

  auto sweeper = FeasibilitySweeper::Create(base, set, config);
  FeasibilityOutcome outcome;
  outcome.x.assign(x0.begin(), x0.end());
  Vector& x = outcome.x;

  auto merit = [&](ConstVectorView point) {
    if (sup.merit_is_objective) ++outcome.counters.objective_evaluations;
    return sup.merit.Eval(point);
  };

  const std::size_t n_perturbations = sup.settings.perturbations;
  const double a = sup.settings.step_kernel;
  // Next step-size index l; global over the whole run.
  std::size_t next_index = 0;

  for (std::size_t outer = 0;; ++outer) {
    const Vector anchor = x;
    if (n_perturbations > 0 && InDomain(sup.domain, x)) {
      const double anchor_merit = merit(x);
      std::size_t m = 0;
      while (m < n_perturbations) {
        const Vector v = NonAscendingDirection(sup.merit, x);
        bool accepted = false;
        while (!accepted) {
          const std::size_t index = next_index++;
          const double beta = std::pow(a, static_cast<double>(index));
          if (beta < kStepUnderflow) break;
          Vector z = x;
          Axpy(beta, v, z);
          if (!InDomain(sup.domain, z)) {
            if (trace) ++trace->rejected;
            continue;
          }
          const double z_merit = merit(z);
          if (z_merit <= anchor_merit) {
            if (trace) {
              trace->accepted.push_back(
                  {outer, index, beta, anchor_merit, z_merit, z});
            }
            x = std::move(z);
            accepted = true;
          } else if (trace) {
            ++trace->rejected;
          }
        }
        if (!accepted) {
          if (trace) ++trace->exhausted_inner_loops;
          break;
        }
        ++m;
      }
      if (x != anchor) {
        sweeper->Reset();
        if (observer) observer(x);
      }
    }
    const double displacement = Distance(x, anchor);

    const SweepResult sweep = sweeper->Sweep(x, outcome.counters, observer);
    ++outcome.sweeps;
    ++outcome.counters.sweeps;
    outcome.moves += sweep.moves;
    if (sweep.empty_set) {
      outcome.status = FeasibilityStatus::kInfeasible;
      return outcome;
    }
    if (sweep.verified && displacement <= sup.settings.displacement_tol) {
      outcome.status = FeasibilityStatus::kFound;
      return outcome;
    }
    const std::uint64_t used = config.budget_unit == BudgetUnit::kSweeps
                                   ? outcome.sweeps
                                   : outcome.counters.projections;
    if (used >= config.max_iterations) return outcome;
  }
}

FeasibilityOutcome SuperiorizedSolveWithLevel(
    const Problem& problem, double level, FeasibilitySolver base,
    ConstVectorView x0, const FeasibilityConfig& config,
    const SuperiorizationSettings& settings, PerturbationTrace* trace) {
  if (x0.size() != problem.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "starting point has " + std::to_string(x0.size()) +
                    " entries, problem has " +
                    std::to_string(problem.dimension()));
  }
  const LevelConstraintSet set(problem, level);
  if (set.constraints().empty()) {
    return SolveWithLevel(problem, level, base, x0, config);
  }
  SuperiorizationConfig sup{settings, problem.objective(), problem.bounds(),
                            /*merit_is_objective=*/true};
  return SuperiorizedSolve(base, set.view(), x0, config, sup, trace);
}

}  // namespace levelcfp
