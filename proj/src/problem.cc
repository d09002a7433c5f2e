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

#include "levelcfp/problem.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "levelcfp/error.h"

namespace levelcfp {

Vector UnitVector(std::size_t n, std::size_t j) {
  Vector e(n, 0.0);
  e[j] = 1.0;
  return e;
}

Problem::Problem(std::string name, ConvexFunction objective,
                 std::vector<ConvexFunction> constraints,
                 std::optional<VariableBounds> bounds,
                 std::optional<double> known_optimum)
    : name_(std::move(name)),
      objective_(std::move(objective)),
      constraints_(std::move(constraints)),
      bounds_(std::move(bounds)),
      known_optimum_(known_optimum) {
  const std::size_t n = objective_.dimension();
  if (n == 0) {
    throw Error(ErrorCode::kInvalidArgument, "problem has zero variables");
  }
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    if (constraints_[i].dimension() != n) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "constraint " + std::to_string(i) + " has dimension " +
                      std::to_string(constraints_[i].dimension()) +
                      ", objective has " + std::to_string(n));
    }
  }
  feasibility_constraints_ = constraints_;
  if (!bounds_) return;
  if (bounds_->lower.size() != n || bounds_->upper.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "bounds dimension mismatch");
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = bounds_->lower[j];
    const double hi = bounds_->upper[j];
    if (std::isnan(lo) || std::isnan(hi) || lo > hi || lo == kInfinity ||
        hi == -kInfinity) {
      throw Error(ErrorCode::kInvalidArgument,
                  "invalid bounds for variable " + std::to_string(j));
    }
    const bool has_lo = std::isfinite(lo);
    const bool has_hi = std::isfinite(hi);
    if (has_lo && has_hi) {
      feasibility_constraints_.push_back(ConvexFunction::Affine(
          lo == hi ? AffineConstraint::Equal(UnitVector(n, j), lo)
                   : AffineConstraint::Interval(UnitVector(n, j), lo, hi)));
    } else if (has_lo) {
      feasibility_constraints_.push_back(ConvexFunction::Affine(
          AffineConstraint::GreaterEqual(UnitVector(n, j), lo)));
    } else if (has_hi) {
      feasibility_constraints_.push_back(ConvexFunction::Affine(
          AffineConstraint::LessEqual(UnitVector(n, j), hi)));
    }
  }
}

Problem Problem::WithKnownOptimum(std::optional<double> fstar) const {
  Problem copy = *this;
  copy.known_optimum_ = fstar;
  return copy;
}

Problem Problem::WithName(std::string name) const {
  Problem copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

bool Problem::HasOnlyAffineConstraints() const {
  return std::all_of(constraints_.begin(), constraints_.end(),
                     [](const ConvexFunction& g) { return g.affine(); });
}

double MaxViolation(const Problem& problem, ConstVectorView x) {
  double worst = 0.0;
  for (const ConvexFunction& g : problem.feasibility_constraints()) {
    worst = std::max(worst, g.Eval(x));
  }
  return worst;
}

}  // namespace levelcfp
