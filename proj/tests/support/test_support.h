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


// Random instances shared by the property tests and the acceptance suite.

#ifndef LEVELCFP_TESTS_SUPPORT_TEST_SUPPORT_H_
#define LEVELCFP_TESTS_SUPPORT_TEST_SUPPORT_H_

#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "levelcfp/convex_function.h"
#include "levelcfp/linalg.h"

namespace levelcfp::testing {

inline Vector RandomVector(std::mt19937_64& rng, std::size_t n, double lo,
                           double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector v(n);
  for (double& x : v) x = u(rng);
  return v;
}

// Q = B^T B + shift I, symmetric positive definite.
inline DenseMatrix RandomSpd(std::mt19937_64& rng, std::size_t n,
                             double shift = 0.1) {
  DenseMatrix b(n, n);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) b(i, j) = u(rng);
  }
  DenseMatrix q(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += b(k, i) * b(k, j);
      q(i, j) = s + (i == j ? shift : 0.0);
    }
  }
  return q;
}

inline ConvexFunction RandomQuadratic(std::mt19937_64& rng, std::size_t n) {
  return ConvexFunction::Quadratic(
      {RandomSpd(rng, n), RandomVector(rng, n, -1.0, 1.0), 0.5});
}

// Positive dose matrix with the first half of the voxels in the tumor and
// the rest at risk.
inline DoseModel RandomDoseModel(std::mt19937_64& rng, std::size_t beamlets,
                                 std::size_t voxels, int p) {
  DoseModel m;
  m.dose = DenseMatrix(voxels, beamlets);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (std::size_t i = 0; i < voxels; ++i) {
    for (std::size_t j = 0; j < beamlets; ++j) m.dose(i, j) = u(rng);
  }
  for (std::size_t i = 0; i < voxels; ++i) {
    (i < voxels / 2 ? m.tumor_voxels : m.risk_voxels).push_back(i);
  }
  m.prescription = 1.0;
  m.norm_exponent = p;
  return m;
}

struct NamedFunction {
  std::string name;
  ConvexFunction f;
  bool smooth;  // differentiable at random points with probability one
};

// One instance of every function kind in dimension n.
inline std::vector<NamedFunction> FunctionZoo(std::mt19937_64& rng,
                                              std::size_t n) {
  const DoseModel m2 = RandomDoseModel(rng, n, 12, 2);
  const DoseModel m8 = RandomDoseModel(rng, n, 12, 8);
  const Vector a = RandomVector(rng, n, -1.0, 1.0);
  std::vector<NamedFunction> zoo = {
      {"quadratic", RandomQuadratic(rng, n), true},
      {"affine", ConvexFunction::Affine(AffineConstraint::LessEqual(a, 0.3)),
       true},
      {"interval",
       ConvexFunction::Affine(AffineConstraint::Interval(
           RandomVector(rng, n, -1.0, 1.0), -0.5, 0.5)),
       false},
      {"underdose", ConvexFunction::Underdose(m2), false},
      {"overdose", ConvexFunction::Overdose(m2), false},
      {"pnorm2", ConvexFunction::PNorm(m2), true},
      {"pnorm8", ConvexFunction::PNorm(m8), true},
      {"level", ConvexFunction::Level(RandomQuadratic(rng, n), 0.7), true},
      {"custom_l1",
       ConvexFunction::Custom(
           n,
           [](ConstVectorView x) {
             double s = 0.0;
             for (double v : x) s += std::abs(v);
             return s;
           },
           [](ConstVectorView x) {
             Vector g(x.size());
             for (std::size_t i = 0; i < x.size(); ++i) {
               g[i] = x[i] > 0 ? 1.0 : (x[i] < 0 ? -1.0 : 0.0);
             }
             return g;
           }),
       false},
  };
  return zoo;
}

// Random halfspaces plus one quadratic level constraint, all containing
// `witness`.
struct RandomCfp {
  std::vector<ConvexFunction> constraints;
  Vector witness;
  Vector start;
};

inline RandomCfp MakeRandomCfp(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> dim(1, 10);
  std::uniform_int_distribution<std::size_t> count(1, 8);
  std::uniform_real_distribution<double> slack(0.0, 1.0);
  const std::size_t n = dim(rng);
  RandomCfp cfp;
  cfp.witness = RandomVector(rng, n, -1.0, 1.0);
  const std::size_t m = count(rng);
  for (std::size_t i = 0; i < m; ++i) {
    Vector a = RandomVector(rng, n, -1.0, 1.0);
    const double b = Dot(a, cfp.witness) + slack(rng);
    cfp.constraints.push_back(
        ConvexFunction::Affine(AffineConstraint::LessEqual(std::move(a), b)));
  }
  const ConvexFunction q = RandomQuadratic(rng, n);
  cfp.constraints.push_back(
      ConvexFunction::Level(q, q.Eval(cfp.witness) + 0.1 + slack(rng)));
  cfp.start = RandomVector(rng, n, -5.0, 5.0);
  return cfp;
}

}  // namespace levelcfp::testing

#endif  // LEVELCFP_TESTS_SUPPORT_TEST_SUPPORT_H_
