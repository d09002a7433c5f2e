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

#include "levelcfp/linalg.h"

#include <cassert>
#include <cmath>

namespace levelcfp {

double Dot(ConstVectorView a, ConstVectorView b) {
  assert(a.size() == b.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double SquaredNorm(ConstVectorView a) { return Dot(a, a); }

double Norm(ConstVectorView a) { return std::sqrt(SquaredNorm(a)); }

double Distance(ConstVectorView a, ConstVectorView b) {
  assert(a.size() == b.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

void Axpy(double alpha, ConstVectorView x, std::span<double> y) {
  assert(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

bool AllFinite(ConstVectorView a) {
  for (double v : a) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void DenseMatrix::Multiply(ConstVectorView x, std::span<double> out) const {
  assert(x.size() == cols_ && out.size() == rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = Dot(row(r), x);
}

void DenseMatrix::MultiplyTransposed(ConstVectorView y,
                                     std::span<double> out) const {
  assert(y.size() == rows_ && out.size() == cols_);
  for (double& v : out) v = 0.0;
  for (std::size_t r = 0; r < rows_; ++r) {
    if (y[r] != 0.0) Axpy(y[r], row(r), out);
  }
}

}  // namespace levelcfp
