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

// Superiorization of a feasibility solver: every outer step first applies N
// merit-reducing perturbations x <- x + beta v along non-ascending
// directions v, with step sizes beta = a^l drawn from one global,
// monotonically increasing index l, and then one sweep of the base solver.
// A candidate is accepted only if it stays in the domain and its merit does
// not exceed the merit at the start of the outer step.

#ifndef LEVELCFP_SUPERIORIZE_H_
#define LEVELCFP_SUPERIORIZE_H_

#include <cstddef>
#include <optional>
#include <vector>

#include "levelcfp/convex_function.h"
#include "levelcfp/feasibility.h"
#include "levelcfp/linalg.h"
#include "levelcfp/problem.h"

namespace levelcfp {

// Step sizes below this end an inner loop without acceptance.
inline constexpr double kStepUnderflow = 1e-300;

struct SuperiorizationSettings {
  // Perturbations per outer step. 0 disables perturbations, which reproduces
  // the base solver exactly.
  std::size_t perturbations = 1;
  // Kernel of the step sizes a^l, in (0, 1).
  double step_kernel = 0.5;
  // Found additionally requires the perturbations of the final outer step
  // to have moved x by at most this much.
  double displacement_tol = 1e-8;

  void Validate() const;
};

struct SuperiorizationConfig {
  SuperiorizationSettings settings;
  ConvexFunction merit;
  // Domain box; the whole space when absent.
  std::optional<VariableBounds> domain;
  // Count merit evaluations as objective evaluations.
  bool merit_is_objective = true;
};

struct AcceptedPerturbation {
  std::size_t outer_step = 0;
  std::size_t step_index = 0;  // l
  double beta = 0.0;
  double anchor_merit = 0.0;  // phi(x^k)
  double merit = 0.0;         // phi(z)
  Vector z;
};

struct PerturbationTrace {
  std::vector<AcceptedPerturbation> accepted;
  std::size_t rejected = 0;
  std::size_t exhausted_inner_loops = 0;
};

// -xi/|xi| for a subgradient xi of phi at x, or 0 when xi = 0.
Vector NonAscendingDirection(const ConvexFunction& merit, ConstVectorView x);

bool InDomain(const std::optional<VariableBounds>& domain, ConstVectorView x);

// Outer steps are bounded by the base config's budget (one sweep each).
FeasibilityOutcome SuperiorizedSolve(FeasibilitySolver base, ConstraintSet set,
                                     ConstVectorView x0,
                                     const FeasibilityConfig& config,
                                     const SuperiorizationConfig& sup,
                                     PerturbationTrace* trace = nullptr,
                                     const IterateObserver& observer = {});

// Level CFP of `problem` with the merit set to the objective and the domain
// set to the variable bounds.
FeasibilityOutcome SuperiorizedSolveWithLevel(
    const Problem& problem, double level, FeasibilitySolver base,
    ConstVectorView x0, const FeasibilityConfig& config,
    const SuperiorizationSettings& settings,
    PerturbationTrace* trace = nullptr);

}  // namespace levelcfp

#endif  // LEVELCFP_SUPERIORIZE_H_
