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

// Projection operators: exact orthogonal projections onto halfspaces,
// hyperplanes, intervals and boxes, the subgradient projection onto a level
// set {x : c(x) <= 0}, and the relaxed step x - lambda (x - P x).

#ifndef LEVELCFP_PROJECTIONS_H_
#define LEVELCFP_PROJECTIONS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "levelcfp/convex_function.h"
#include "levelcfp/counters.h"
#include "levelcfp/linalg.h"

namespace levelcfp {

// Squared subgradient norms below this are treated as a zero subgradient.
inline constexpr double kSubgradientUnderflow = 1e-300;

Vector ProjectHalfspace(ConstVectorView a, double b, ConstVectorView x);
Vector ProjectHyperplane(ConstVectorView a, double b, ConstVectorView x);
Vector ProjectBox(ConstVectorView lower, ConstVectorView upper,
                  ConstVectorView x);
// Orthogonal projection onto {x : lower <= a^T x <= upper}.
Vector ProjectAffine(const AffineConstraint& constraint, ConstVectorView x);

// Pi_C(x) = x - c(x)/|xi|^2 xi if c(x) > 0, x otherwise. Increments
// counters->projections on every call. Throws ErrorCode::kNumerical when
// c(x) > 0 but the subgradient vanishes.
Vector SubgradientProject(const ConvexFunction& c, ConstVectorView x,
                          RunCounters* counters = nullptr);

// In-place x <- x - lambda * value / |xi|^2 * xi, shared by the solvers.
void SubgradientStepInPlace(double value, ConstVectorView xi, double lambda,
                            std::span<double> x);

// (1 - lambda) x + lambda px. lambda must lie in (0, 2]; lambda = 2 is the
// reflection used by ART3.
Vector RelaxStep(ConstVectorView x, ConstVectorView px, double lambda);

// Relaxation parameters lambda_k, constant or a per-iteration sequence (the
// last entry repeats once the sequence runs out). Values lie in (0, 2).
class Relaxation {
 public:
  static Relaxation Constant(double lambda);
  static Relaxation Sequence(std::vector<double> lambdas);

  double At(std::size_t k) const;
  bool is_constant() const { return values_.size() == 1; }

 private:
  explicit Relaxation(std::vector<double> values);
  std::vector<double> values_;
};

}  // namespace levelcfp

#endif  // LEVELCFP_PROJECTIONS_H_
