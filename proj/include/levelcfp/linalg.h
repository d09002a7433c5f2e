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

// Dense vector helpers. Problems handled here are desk-scale (n up to about a
// thousand), so everything is stored densely.

#ifndef LEVELCFP_LINALG_H_
#define LEVELCFP_LINALG_H_

#include <cstddef>
#include <span>
#include <vector>

namespace levelcfp {

using Vector = std::vector<double>;
using ConstVectorView = std::span<const double>;

double Dot(ConstVectorView a, ConstVectorView b);
double SquaredNorm(ConstVectorView a);
double Norm(ConstVectorView a);
double Distance(ConstVectorView a, ConstVectorView b);

// y += alpha * x
void Axpy(double alpha, ConstVectorView x, std::span<double> y);

bool AllFinite(ConstVectorView a);

// Row-major dense matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  ConstVectorView row(std::size_t r) const {
    return ConstVectorView(data_).subspan(r * cols_, cols_);
  }

  // out = M x
  void Multiply(ConstVectorView x, std::span<double> out) const;
  // out = M^T y
  void MultiplyTransposed(ConstVectorView y, std::span<double> out) const;

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace levelcfp

#endif  // LEVELCFP_LINALG_H_
