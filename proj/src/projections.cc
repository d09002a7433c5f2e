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

#include "levelcfp/projections.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "levelcfp/error.h"

namespace levelcfp {
namespace {

void CheckSameSize(ConstVectorView a, ConstVectorView x, const char* what) {
  if (a.size() != x.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + ": size mismatch (" +
                    std::to_string(a.size()) + " vs " +
                    std::to_string(x.size()) + ")");
  }
}

double NormalSquaredNorm(ConstVectorView a, const char* what) {
  const double nn = SquaredNorm(a);
  if (!(nn > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + ": normal vector is zero");
  }
  return nn;
}

Vector MoveAlong(ConstVectorView x, ConstVectorView a, double step) {
  Vector y(x.begin(), x.end());
  Axpy(-step, a, y);
  return y;
}

}  // namespace

Vector ProjectHalfspace(ConstVectorView a, double b, ConstVectorView x) {
  CheckSameSize(a, x, "project_halfspace");
  const double nn = NormalSquaredNorm(a, "project_halfspace");
  const double r = Dot(a, x);
  if (r <= b) return Vector(x.begin(), x.end());
  return MoveAlong(x, a, (r - b) / nn);
}

Vector ProjectHyperplane(ConstVectorView a, double b, ConstVectorView x) {
  CheckSameSize(a, x, "project_hyperplane");
  const double nn = NormalSquaredNorm(a, "project_hyperplane");
  return MoveAlong(x, a, (Dot(a, x) - b) / nn);
}

Vector ProjectBox(ConstVectorView lower, ConstVectorView upper,
                  ConstVectorView x) {
  CheckSameSize(lower, x, "project_box");
  CheckSameSize(upper, x, "project_box");
  Vector y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(lower[i] <= upper[i])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "project_box: lower > upper at component " +
                      std::to_string(i));
    }
    y[i] = std::clamp(x[i], lower[i], upper[i]);
  }
  return y;
}

Vector ProjectAffine(const AffineConstraint& constraint, ConstVectorView x) {
  const double r = constraint.Activity(x);
  if (r > constraint.upper) {
    return ProjectHyperplane(constraint.normal, constraint.upper, x);
  }
  if (r < constraint.lower) {
    return ProjectHyperplane(constraint.normal, constraint.lower, x);
  }
  return Vector(x.begin(), x.end());
}

void SubgradientStepInPlace(double value, ConstVectorView xi, double lambda,
                            std::span<double> x) {
  const double nn = SquaredNorm(xi);
  if (!(nn >= kSubgradientUnderflow)) {
    throw Error(ErrorCode::kNumerical,
                "subgradient projection: zero subgradient at a violated "
                "constraint (value " +
                    std::to_string(value) + ")");
  }
  Axpy(-lambda * value / nn, xi, x);
}

Vector SubgradientProject(const ConvexFunction& c, ConstVectorView x,
                          RunCounters* counters) {
  if (counters) ++counters->projections;
  const double value = c.Eval(x);
  Vector y(x.begin(), x.end());
  if (value <= 0.0) return y;
  SubgradientStepInPlace(value, c.Subgradient(x), 1.0, y);
  return y;
}

Vector RelaxStep(ConstVectorView x, ConstVectorView px, double lambda) {
  CheckSameSize(px, x, "relax_step");
  if (!(lambda > 0.0 && lambda <= 2.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "relax_step: lambda must lie in (0, 2], got " +
                    std::to_string(lambda));
  }
  if (lambda == 1.0) return Vector(px.begin(), px.end());
  Vector y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] = x[i] - lambda * (x[i] - px[i]);
  }
  return y;
}

Relaxation::Relaxation(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "relaxation: empty sequence");
  }
  for (double v : values_) {
    if (!(v > 0.0 && v < 2.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "relaxation parameter must lie in (0, 2), got " +
                      std::to_string(v));
    }
  }
}

Relaxation Relaxation::Constant(double lambda) {
  return Relaxation(std::vector<double>{lambda});
}

Relaxation Relaxation::Sequence(std::vector<double> lambdas) {
  return Relaxation(std::move(lambdas));
}

double Relaxation::At(std::size_t k) const {
  return values_[std::min(k, values_.size() - 1)];
}

}  // namespace levelcfp
