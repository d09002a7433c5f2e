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


#include <gtest/gtest.h>

#include <cmath>

#include "levelcfp/error.h"
#include "levelcfp/projections.h"

namespace levelcfp {
namespace {

TEST(Projections, Halfspace) {
  EXPECT_EQ(ProjectHalfspace(Vector{1.0, 1.0}, 0.0, Vector{1.0, 1.0}),
            (Vector{0.0, 0.0}));
  // Points inside are returned unchanged.
  EXPECT_EQ(ProjectHalfspace(Vector{1.0, 1.0}, 0.0, Vector{-1.0, 0.5}),
            (Vector{-1.0, 0.5}));
}

TEST(Projections, HyperplaneAndBox) {
  const Vector p = ProjectHyperplane(Vector{0.0, 2.0}, 2.0, Vector{3.0, -4.0});
  EXPECT_DOUBLE_EQ(p[0], 3.0);
  EXPECT_DOUBLE_EQ(p[1], 1.0);
  EXPECT_EQ(ProjectBox(Vector{0.0, 0.0}, Vector{1.0, 1.0}, Vector{-2.0, 0.5}),
            (Vector{0.0, 0.5}));
  EXPECT_THROW(ProjectBox(Vector{1.0}, Vector{0.0}, Vector{0.0}), Error);
}

TEST(Projections, AffineInterval) {
  const auto c = AffineConstraint::Interval({1.0}, 0.0, 2.0);
  EXPECT_EQ(ProjectAffine(c, Vector{5.0}), (Vector{2.0}));
  EXPECT_EQ(ProjectAffine(c, Vector{-1.0}), (Vector{0.0}));
  EXPECT_EQ(ProjectAffine(c, Vector{1.5}), (Vector{1.5}));
}

TEST(Projections, SubgradientProjectionOfDisk) {
  // c(x) = |x|^2 - 1 at (2, 0).
  const ConvexFunction c = ConvexFunction::Quadratic(
      {[] {
         DenseMatrix q(2, 2);
         q(0, 0) = q(1, 1) = 2.0;
         return q;
       }(),
       {0.0, 0.0}, -1.0});
  RunCounters counters;
  const Vector y = SubgradientProject(c, Vector{2.0, 0.0}, &counters);
  EXPECT_DOUBLE_EQ(y[0], 1.25);
  EXPECT_DOUBLE_EQ(y[1], 0.0);
  // Feasible points are fixed, and still counted.
  EXPECT_EQ(SubgradientProject(c, Vector{0.5, 0.0}, &counters),
            (Vector{0.5, 0.0}));
  EXPECT_EQ(counters.projections, 2u);
}

TEST(Projections, SubgradientProjectionOfHalfspaceIsExact) {
  const ConvexFunction g =
      ConvexFunction::Affine(AffineConstraint::LessEqual({1.0, 1.0}, 0.0));
  EXPECT_EQ(SubgradientProject(g, Vector{1.0, 1.0}), (Vector{0.0, 0.0}));
}

TEST(Projections, ZeroSubgradientAtViolatedPointThrows) {
  const ConvexFunction f =
      ConvexFunction::Quadratic({DenseMatrix(1, 1, 2.0), {0.0}, 1.0});
  EXPECT_THROW(SubgradientProject(f, Vector{0.0}), Error);
}

TEST(Projections, RelaxStep) {
  EXPECT_EQ(RelaxStep(Vector{0.0}, Vector{1.0}, 1.0), (Vector{1.0}));
  EXPECT_EQ(RelaxStep(Vector{0.0}, Vector{1.0}, 0.5), (Vector{0.5}));
  // lambda = 2 reflects across the set.
  EXPECT_EQ(RelaxStep(Vector{3.0}, Vector{2.0}, 2.0), (Vector{1.0}));
  EXPECT_THROW(RelaxStep(Vector{0.0}, Vector{1.0}, 0.0), Error);
  EXPECT_THROW(RelaxStep(Vector{0.0}, Vector{1.0}, 2.5), Error);
}

TEST(Relaxation, ConstantAndSequence) {
  EXPECT_DOUBLE_EQ(Relaxation::Constant(1.5).At(42), 1.5);
  const Relaxation seq = Relaxation::Sequence({0.5, 1.0, 1.9});
  EXPECT_DOUBLE_EQ(seq.At(0), 0.5);
  EXPECT_DOUBLE_EQ(seq.At(2), 1.9);
  EXPECT_DOUBLE_EQ(seq.At(100), 1.9);
  EXPECT_THROW(Relaxation::Constant(2.0), Error);
  EXPECT_THROW(Relaxation::Sequence({}), Error);
}

}  // namespace
}  // namespace levelcfp
