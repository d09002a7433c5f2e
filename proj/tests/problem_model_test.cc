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
#include <random>

#include "levelcfp/convex_function.h"
#include "levelcfp/error.h"
#include "levelcfp/problem.h"
#include "support/test_support.h"

namespace levelcfp {
namespace {

DoseModel OneVoxel() {
  DoseModel m;
  m.dose = DenseMatrix(1, 1, 1.0);
  m.tumor_voxels = {0};
  m.prescription = 2.0;
  return m;
}

TEST(DoseFunctions, UnderdoseMatchesOracle) {
  const ConvexFunction f = ConvexFunction::Underdose(OneVoxel());
  EXPECT_DOUBLE_EQ(f.Eval(Vector{1.0}), 1.0);
  EXPECT_DOUBLE_EQ(f.Eval(Vector{0.0}), 2.0);
  EXPECT_NEAR(f.Subgradient(Vector{0.0})[0], -1.0, 1e-9);
  // No underdose left: value and subgradient vanish.
  EXPECT_DOUBLE_EQ(f.Eval(Vector{3.0}), 0.0);
  EXPECT_DOUBLE_EQ(f.Subgradient(Vector{3.0})[0], 0.0);
}

TEST(DoseFunctions, PNormMatchesOracle) {
  DoseModel m;
  m.dose = DenseMatrix(2, 1);
  m.dose(0, 0) = 1.0;
  m.risk_voxels = {0, 1};
  m.norm_exponent = 2;
  EXPECT_NEAR(ConvexFunction::PNorm(m).Eval(Vector{2.0}), 1.4142135623730951,
              1e-15);
  m.norm_exponent = 8;
  EXPECT_NEAR(ConvexFunction::PNorm(m).Eval(Vector{2.0}), 1.8340080864093424,
              1e-15);
  m.norm_exponent = 3;
  EXPECT_THROW(ConvexFunction::PNorm(m), Error);
}

TEST(DoseFunctions, OverdoseMirrorsUnderdose) {
  DoseModel m = OneVoxel();
  const ConvexFunction over = ConvexFunction::Overdose(m);
  EXPECT_DOUBLE_EQ(over.Eval(Vector{5.0}), 3.0);
  EXPECT_DOUBLE_EQ(over.Eval(Vector{1.0}), 0.0);
}

TEST(ConvexFunctionTest, AffineKinds) {
  const auto le = AffineConstraint::LessEqual({1.0, 1.0}, 2.0);
  EXPECT_EQ(ConvexFunction::Affine(le).kind(), FunctionKind::kAffine);
  const auto ge = AffineConstraint::GreaterEqual({1.0, 0.0}, 1.0);
  EXPECT_EQ(ge.normal, (Vector{-1.0, -0.0}));
  EXPECT_DOUBLE_EQ(ge.upper, -1.0);
  const auto in = AffineConstraint::Interval({1.0}, 0.0, 2.0);
  const ConvexFunction g = ConvexFunction::Affine(in);
  EXPECT_EQ(g.kind(), FunctionKind::kIntervalAffine);
  EXPECT_DOUBLE_EQ(g.Eval(Vector{3.0}), 1.0);
  EXPECT_DOUBLE_EQ(g.Eval(Vector{-1.0}), 1.0);
  EXPECT_DOUBLE_EQ(g.Eval(Vector{1.0}), -1.0);
  EXPECT_DOUBLE_EQ(g.Subgradient(Vector{1.0})[0], 0.0);
  EXPECT_THROW(AffineConstraint::Interval({1.0}, 2.0, 0.0), Error);
}

TEST(ConvexFunctionTest, QuadraticValidation) {
  DenseMatrix asym(2, 2);
  asym(0, 1) = 1.0;
  EXPECT_THROW(ConvexFunction::Quadratic({asym, {0.0, 0.0}, 0.0}), Error);
  DenseMatrix neg(1, 1, -1.0);
  EXPECT_THROW(ConvexFunction::Quadratic({neg, {0.0}, 0.0}), Error);
  const ConvexFunction f =
      ConvexFunction::Quadratic({DenseMatrix(1, 1, 2.0), {0.0}, -100.0});
  EXPECT_DOUBLE_EQ(f.Eval(Vector{10.0}), 0.0);
  EXPECT_DOUBLE_EQ(f.Subgradient(Vector{3.0})[0], 6.0);
}

TEST(ConvexFunctionTest, DimensionChecked) {
  const ConvexFunction f =
      ConvexFunction::Quadratic({DenseMatrix(1, 1, 2.0), {0.0}, 0.0});
  EXPECT_THROW(f.Eval(Vector{1.0, 2.0}), Error);
  EXPECT_THROW(f.Subgradient(Vector{}), Error);
}

TEST(ConvexFunctionTest, LevelShiftsBase) {
  const ConvexFunction base =
      ConvexFunction::Quadratic({DenseMatrix(1, 1, 2.0), {0.0}, 0.0});
  const ConvexFunction level = ConvexFunction::Level(base, 3.6);
  EXPECT_EQ(level.kind(), FunctionKind::kLevel);
  EXPECT_DOUBLE_EQ(level.level_value(), 3.6);
  EXPECT_NEAR(level.Eval(Vector{1.0}), 1.0 - 3.6, 1e-15);
  ASSERT_NE(level.level_base(), nullptr);
}

// Subgradient inequality f(y) >= f(x) + <xi, y - x> at random pairs.
TEST(SubgradientProperty, InequalityHoldsForEveryKind) {
  std::mt19937_64 rng(7);
  for (std::size_t n : {1u, 3u, 6u}) {
    for (const auto& item : testing::FunctionZoo(rng, n)) {
      for (int trial = 0; trial < 300; ++trial) {
        const Vector x = testing::RandomVector(rng, n, -2.0, 2.0);
        const Vector y = testing::RandomVector(rng, n, -2.0, 2.0);
        const Vector xi = item.f.Subgradient(x);
        Vector d = y;
        Axpy(-1.0, x, d);
        EXPECT_GE(item.f.Eval(y), item.f.Eval(x) + Dot(xi, d) - 1e-9)
            << item.name << " n=" << n;
      }
    }
  }
}

TEST(SubgradientProperty, SmoothKindsMatchCentralDifferences) {
  std::mt19937_64 rng(11);
  const std::size_t n = 4;
  for (const auto& item : testing::FunctionZoo(rng, n)) {
    if (!item.smooth) continue;
    for (int trial = 0; trial < 50; ++trial) {
      const Vector x = testing::RandomVector(rng, n, 0.1, 1.5);
      const Vector g = item.f.Subgradient(x);
      for (std::size_t j = 0; j < n; ++j) {
        const double h = 1e-6;
        Vector xp = x, xm = x;
        xp[j] += h;
        xm[j] -= h;
        const double fd = (item.f.Eval(xp) - item.f.Eval(xm)) / (2 * h);
        EXPECT_LE(std::abs(fd - g[j]), 1e-4 * std::max(1.0, std::abs(g[j])))
            << item.name;
      }
    }
  }
}

Problem SquareAboveOne() {
  return Problem("sq",
                 ConvexFunction::Quadratic({DenseMatrix(1, 1, 2.0), {0.0}, 0.0}),
                 {ConvexFunction::Affine(AffineConstraint::GreaterEqual({1.0}, 1.0))});
}

TEST(ProblemTest, BoundsBecomeConstraints) {
  const Problem p(
      "b", ConvexFunction::Quadratic({DenseMatrix(3, 3), {1.0, 1.0, 1.0}, 0.0}),
      {},
      VariableBounds{{0.0, -kInfinity, 1.0}, {kInfinity, 2.0, 1.0}});
  ASSERT_EQ(p.feasibility_constraints().size(), 3u);
  EXPECT_EQ(p.feasibility_constraints()[2].affine()->sense,
            ConstraintSense::kEqual);
  EXPECT_DOUBLE_EQ(MaxViolation(p, Vector{-1.0, 0.0, 1.0}), 1.0);
  EXPECT_DOUBLE_EQ(MaxViolation(p, Vector{0.0, 2.0, 1.0}), 0.0);
  EXPECT_TRUE(p.HasOnlyAffineConstraints());
}

TEST(ProblemTest, RejectsBadInput) {
  const ConvexFunction f =
      ConvexFunction::Quadratic({DenseMatrix(1, 1, 2.0), {0.0}, 0.0});
  EXPECT_THROW(Problem("x", f, {ConvexFunction::Affine(
                                   AffineConstraint::LessEqual({1.0, 1.0}, 0.0))}),
               Error);
  EXPECT_THROW(Problem("x", f, {}, VariableBounds{{1.0}, {0.0}}), Error);
}

TEST(ProblemTest, KnownOptimumAndName) {
  const Problem p = SquareAboveOne().WithKnownOptimum(1.0).WithName("renamed");
  EXPECT_EQ(p.name(), "renamed");
  EXPECT_EQ(p.known_optimum(), 1.0);
  EXPECT_DOUBLE_EQ(MaxViolation(p, Vector{0.5}), 0.5);
}

}  // namespace
}  // namespace levelcfp
