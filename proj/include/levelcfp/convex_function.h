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

// Convex functions with an exact value/subgradient oracle. A ConvexFunction
// is immutable after construction and cheap to copy (shared
// implementation), so one instance can back many concurrent solver runs.
//
// Subgradient selection at kinks is deterministic: the minimal-norm element
// when it is cheap to identify (e.g. 0 for max(0, .) at its kink), otherwise
// the gradient of the active branch.

#ifndef LEVELCFP_CONVEX_FUNCTION_H_
#define LEVELCFP_CONVEX_FUNCTION_H_

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <string_view>
#include <vector>

#include "levelcfp/linalg.h"

namespace levelcfp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class FunctionKind {
  kQuadratic,
  kAffine,          // a^T x - b, i.e. the halfspace a^T x <= b
  kIntervalAffine,  // max(a^T x - u, l - a^T x); l == u is a hyperplane
  kUnderdose,
  kOverdose,
  kPNorm,
  kLevel,  // f(x) - t for some other function f
  kCustom,
};

std::string_view FunctionKindName(FunctionKind kind);

// f(x) = 1/2 x^T Q x + c^T x + constant, Q symmetric positive semidefinite.
struct QuadraticObjective {
  DenseMatrix q;
  Vector c;
  double constant = 0.0;

  std::size_t dimension() const { return c.size(); }
  // Throws if Q is not square/symmetric or fails a PSD spot check.
  void Validate() const;
};

enum class ConstraintSense { kLessEqual, kEqual, kInterval };

// lower <= a^T x <= upper. kLessEqual has lower == -inf; kEqual has
// lower == upper.
struct AffineConstraint {
  Vector normal;
  double lower = -kInfinity;
  double upper = kInfinity;
  ConstraintSense sense = ConstraintSense::kLessEqual;

  static AffineConstraint LessEqual(Vector a, double b);
  // a^T x >= b, stored as (-a)^T x <= -b.
  static AffineConstraint GreaterEqual(Vector a, double b);
  static AffineConstraint Equal(Vector a, double b);
  static AffineConstraint Interval(Vector a, double lower, double upper);

  std::size_t dimension() const { return normal.size(); }
  double Activity(ConstVectorView x) const { return Dot(normal, x); }
  // Value of the convex function representing this set (<= 0 iff inside).
  double Violation(ConstVectorView x) const;
  void Validate() const;
};

// Synthetic IMRT-style dose model: dose d = D x, voxel index sets for tumor
// and risk structures, a prescription for the tumor and a norm exponent for
// the risk structures.
struct DoseModel {
  DenseMatrix dose;
  std::vector<std::size_t> tumor_voxels;
  std::vector<std::size_t> risk_voxels;
  double prescription = 1.0;
  int norm_exponent = 2;
};

class ConvexFunction {
 public:
  using EvalFn = std::function<double(ConstVectorView)>;
  using SubgradientFn = std::function<Vector(ConstVectorView)>;

  static ConvexFunction Quadratic(QuadraticObjective objective);
  static ConvexFunction Affine(AffineConstraint constraint);
  // sqrt(mean over tumor voxels of max(0, R - d_i)^2).
  static ConvexFunction Underdose(const DoseModel& model);
  // Mirror of Underdose: sqrt(mean of max(0, d_i - R)^2) over tumor voxels.
  static ConvexFunction Overdose(const DoseModel& model);
  // (mean over risk voxels of d_i^p)^(1/p) for p in {2, 8}.
  static ConvexFunction PNorm(const DoseModel& model);
  // base(x) - level.
  static ConvexFunction Level(ConvexFunction base, double level);
  // Convexity of user-supplied functions is not checked.
  static ConvexFunction Custom(std::size_t dimension, EvalFn eval,
                               SubgradientFn subgradient);

  FunctionKind kind() const;
  std::size_t dimension() const;

  double Eval(ConstVectorView x) const;
  Vector Subgradient(ConstVectorView x) const;

  // Structural access, nullptr when the kind does not match.
  const QuadraticObjective* quadratic() const;
  const AffineConstraint* affine() const;  // kAffine or kIntervalAffine
  const ConvexFunction* level_base() const;
  double level_value() const;  // 0 unless kLevel

  class Impl;

 private:
  explicit ConvexFunction(std::shared_ptr<const Impl> impl)
      : impl_(std::move(impl)) {}
  void CheckDimension(ConstVectorView x) const;

  std::shared_ptr<const Impl> impl_;
};

}  // namespace levelcfp

#endif  // LEVELCFP_CONVEX_FUNCTION_H_
