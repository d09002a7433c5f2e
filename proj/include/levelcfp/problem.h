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

#ifndef LEVELCFP_PROBLEM_H_
#define LEVELCFP_PROBLEM_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "levelcfp/convex_function.h"
#include "levelcfp/linalg.h"

namespace levelcfp {

struct VariableBounds {
  Vector lower;
  Vector upper;
};

// min f(x) s.t. g_i(x) <= 0 for every constraint, lower <= x <= upper.
//
// The constraint order is the cyclic control order. Variable bounds are also
// exposed as ordinary affine constraints (appended after the explicit
// constraints) so every feasibility solver treats them uniformly.
class Problem {
 public:
  Problem(std::string name, ConvexFunction objective,
          std::vector<ConvexFunction> constraints,
          std::optional<VariableBounds> bounds = std::nullopt,
          std::optional<double> known_optimum = std::nullopt);

  const std::string& name() const { return name_; }
  std::size_t dimension() const { return objective_.dimension(); }
  const ConvexFunction& objective() const { return objective_; }
  const std::vector<ConvexFunction>& constraints() const {
    return constraints_;
  }
  const std::optional<VariableBounds>& bounds() const { return bounds_; }
  const std::optional<double>& known_optimum() const { return known_optimum_; }

  // constraints() followed by one affine constraint per bounded variable.
  const std::vector<ConvexFunction>& feasibility_constraints() const {
    return feasibility_constraints_;
  }

  Problem WithKnownOptimum(std::optional<double> fstar) const;
  Problem WithName(std::string name) const;

  // True when every explicit constraint is affine (halfspace, hyperplane or
  // interval).
  bool HasOnlyAffineConstraints() const;

 private:
  std::string name_;
  ConvexFunction objective_;
  std::vector<ConvexFunction> constraints_;
  std::optional<VariableBounds> bounds_;
  std::optional<double> known_optimum_;
  std::vector<ConvexFunction> feasibility_constraints_;
};

// max(0, max_i g_i(x)) over feasibility_constraints(); 0 iff x is feasible.
double MaxViolation(const Problem& problem, ConstVectorView x);

// Unit vector e_j of length n.
Vector UnitVector(std::size_t n, std::size_t j);

}  // namespace levelcfp

#endif  // LEVELCFP_PROBLEM_H_
