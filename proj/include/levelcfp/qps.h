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

// Reader and writer for QPS files: MPS sections (NAME, ROWS, COLUMNS, RHS,
// RANGES, BOUNDS, ENDATA) plus QUADOBJ or QMATRIX for the quadratic part of
// the objective 1/2 x^T Q x + c^T x + c0.

#ifndef LEVELCFP_QPS_H_
#define LEVELCFP_QPS_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "levelcfp/problem.h"

namespace levelcfp {

enum class Severity { kError, kWarning };

struct ParseDiagnostic {
  std::size_t line = 0;
  std::string section;
  std::string message;
  Severity severity = Severity::kError;

  std::string ToString() const;
};

struct QpsRow {
  std::string name;
  char sense = 'N';  // N, L, G or E
};

struct QpsEntry {
  std::size_t row = 0;
  std::size_t column = 0;
  double value = 0.0;
};

struct QpsQuadEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  double value = 0.0;
};

// Raw file content with names resolved to indices. Row indices refer to
// `rows`, which includes the objective row.
struct QpsDocument {
  std::string name;
  std::vector<QpsRow> rows;
  std::size_t objective_row = 0;
  std::vector<std::string> columns;
  std::vector<QpsEntry> entries;
  std::vector<double> rhs;                    // per row, default 0
  std::vector<std::optional<double>> ranges;  // per row
  std::vector<double> lower;                  // per column, default 0
  std::vector<double> upper;                  // per column, default +inf
  std::vector<QpsQuadEntry> quad;             // as written in the file
  bool quad_is_matrix = false;                // QMATRIX rather than QUADOBJ
};

struct QpsOptions {
  // QUADOBJ entries are elements of Q in 1/2 x^T Q x. When false the
  // objective is read as x^T Q x.
  bool half_convention = true;
};

struct QpsParseResult {
  std::optional<QpsDocument> document;
  std::optional<Problem> problem;
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return problem.has_value(); }
  std::size_t error_count() const;
};

QpsParseResult ParseQps(std::string_view text, const QpsOptions& options = {});
QpsParseResult ParseQps(std::istream& in, const QpsOptions& options = {});
// Errors opening the file are reported as a diagnostic at line 0.
QpsParseResult ParseQpsFile(const std::string& path,
                            const QpsOptions& options = {});

// Quadratic objective, affine constraints only; throws Error otherwise.
std::string WriteQps(const Problem& problem);

}  // namespace levelcfp

#endif  // LEVELCFP_QPS_H_
