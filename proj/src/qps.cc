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

#include "levelcfp/qps.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_map>

#include "levelcfp/error.h"

namespace levelcfp {

std::string ParseDiagnostic::ToString() const {
  std::ostringstream out;
  out << "line " << line;
  if (!section.empty()) out << " [" << section << "]";
  out << (severity == Severity::kError ? " error: " : " warning: ")
      << message;
  return out.str();
}

std::size_t QpsParseResult::error_count() const {
  std::size_t n = 0;
  for (const auto& d : diagnostics) n += d.severity == Severity::kError;
  return n;
}

namespace {

// MPS files use 1e30 for "no bound".
constexpr double kMpsInfinity = 1e30;

double Clip(double v) {
  if (v >= kMpsInfinity) return kInfinity;
  if (v <= -kMpsInfinity) return -kInfinity;
  return v;
}

std::vector<std::string_view> Tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    const std::size_t start = i;
    while (i < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

std::optional<double> ParseNumber(std::string_view token) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    return std::nullopt;
  }
  return value;
}

enum class Section {
  kNone,
  kName,
  kObjSense,
  kRows,
  kColumns,
  kRhs,
  kRanges,
  kBounds,
  kQuadObj,
  kQMatrix,
  kEnd,
};

std::optional<Section> SectionFromKeyword(std::string_view word) {
  if (word == "NAME") return Section::kName;
  if (word == "OBJSENSE") return Section::kObjSense;
  if (word == "ROWS") return Section::kRows;
  if (word == "COLUMNS") return Section::kColumns;
  if (word == "RHS") return Section::kRhs;
  if (word == "RANGES") return Section::kRanges;
  if (word == "BOUNDS") return Section::kBounds;
  if (word == "QUADOBJ" || word == "QSECTION") return Section::kQuadObj;
  if (word == "QMATRIX") return Section::kQMatrix;
  if (word == "ENDATA") return Section::kEnd;
  return std::nullopt;
}

class Parser {
 public:
  explicit Parser(QpsParseResult& result) : result_(result) {}

  void Line(std::string_view line) {
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '*') return;
    const auto tokens = Tokenize(line);
    if (tokens.empty()) return;
    if (!std::isspace(static_cast<unsigned char>(line.front()))) {
      Header(tokens);
      return;
    }
    switch (section_) {
      case Section::kNone:
      case Section::kName:
        Fail("data line before any section");
        break;
      case Section::kObjSense:
        ObjSense(tokens[0]);
        break;
      case Section::kRows:
        Row(tokens);
        break;
      case Section::kColumns:
        Column(tokens);
        break;
      case Section::kRhs:
        Rhs(tokens);
        break;
      case Section::kRanges:
        Range(tokens);
        break;
      case Section::kBounds:
        Bound(tokens);
        break;
      case Section::kQuadObj:
      case Section::kQMatrix:
        Quad(tokens);
        break;
      case Section::kEnd:
        Warn("data after ENDATA ignored");
        break;
    }
  }

  void Finish() {
    if (section_ != Section::kEnd) {
      section_name_.clear();
      Warn("missing ENDATA");
    }
    if (!has_objective_) {
      section_name_ = "ROWS";
      Fail("no objective (N) row");
    }
  }

  QpsDocument& doc() { return doc_; }

 private:
  void Report(Severity severity, std::string message) {
    result_.diagnostics.push_back(
        {line_no_, section_name_, std::move(message), severity});
  }
  void Fail(std::string message) { Report(Severity::kError, std::move(message)); }
  void Warn(std::string message) {
    Report(Severity::kWarning, std::move(message));
  }

  void Header(const std::vector<std::string_view>& tokens) {
    const auto section = SectionFromKeyword(tokens[0]);
    section_name_ = std::string(tokens[0]);
    if (!section) {
      Fail("unknown section '" + section_name_ + "'");
      section_ = Section::kNone;
      return;
    }
    section_ = *section;
    if (section_ == Section::kName) {
      if (tokens.size() > 1) doc_.name = std::string(tokens[1]);
    } else if (section_ == Section::kObjSense && tokens.size() > 1) {
      ObjSense(tokens[1]);
    } else if (section_ == Section::kQMatrix) {
      doc_.quad_is_matrix = true;
    }
  }

  void ObjSense(std::string_view sense) {
    if (sense == "MAX" || sense == "MAXIMIZE") {
      Fail("maximization is not supported");
    } else if (sense != "MIN" && sense != "MINIMIZE") {
      Fail("unknown objective sense '" + std::string(sense) + "'");
    }
  }

  std::optional<double> Number(std::string_view token) {
    auto value = ParseNumber(token);
    if (!value) Fail("malformed number '" + std::string(token) + "'");
    return value;
  }

  std::optional<std::size_t> RowIndex(std::string_view name) {
    const auto it = row_index_.find(std::string(name));
    if (it == row_index_.end()) {
      Fail("undeclared row '" + std::string(name) + "'");
      return std::nullopt;
    }
    return it->second;
  }

  std::optional<std::size_t> ColumnIndex(std::string_view name) {
    const auto it = column_index_.find(std::string(name));
    if (it == column_index_.end()) {
      Fail("undeclared column '" + std::string(name) + "'");
      return std::nullopt;
    }
    return it->second;
  }

  void Row(const std::vector<std::string_view>& tokens) {
    if (tokens.size() != 2 || tokens[0].size() != 1) {
      Fail("expected '<sense> <name>'");
      return;
    }
    const char sense = tokens[0][0];
    if (sense != 'N' && sense != 'L' && sense != 'G' && sense != 'E') {
      Fail("unknown row sense '" + std::string(tokens[0]) + "'");
      return;
    }
    const std::string name(tokens[1]);
    if (row_index_.count(name)) {
      Fail("duplicate row '" + name + "'");
      return;
    }
    if (sense == 'N') {
      if (has_objective_) {
        Fail("duplicate N row '" + name + "'");
        return;
      }
      has_objective_ = true;
      doc_.objective_row = doc_.rows.size();
    }
    row_index_.emplace(name, doc_.rows.size());
    doc_.rows.push_back({name, sense});
    doc_.rhs.push_back(0.0);
    doc_.ranges.emplace_back();
  }

  void Column(const std::vector<std::string_view>& tokens) {
    if (tokens.size() >= 3 && tokens[1] == "'MARKER'") {
      Warn("integer markers ignored");
      return;
    }
    if (tokens.size() != 3 && tokens.size() != 5) {
      Fail("expected '<column> <row> <value> [<row> <value>]'");
      return;
    }
    const std::string name(tokens[0]);
    auto it = column_index_.find(name);
    if (it == column_index_.end()) {
      it = column_index_.emplace(name, doc_.columns.size()).first;
      doc_.columns.push_back(name);
      doc_.lower.push_back(0.0);
      doc_.upper.push_back(kInfinity);
      lower_set_.push_back(false);
    }
    for (std::size_t k = 1; k + 1 < tokens.size(); k += 2) {
      const auto row = RowIndex(tokens[k]);
      const auto value = Number(tokens[k + 1]);
      if (row && value) doc_.entries.push_back({*row, it->second, *value});
    }
  }

  // Pairs of (row, value), optionally preceded by a set name.
  template <typename Apply>
  void RowValuePairs(const std::vector<std::string_view>& tokens,
                     Apply apply) {
    const std::size_t first = tokens.size() % 2;
    if (tokens.size() < 2 || tokens.size() > 5) {
      Fail("expected '[<set>] <row> <value> [<row> <value>]'");
      return;
    }
    for (std::size_t k = first; k + 1 < tokens.size(); k += 2) {
      const auto row = RowIndex(tokens[k]);
      const auto value = Number(tokens[k + 1]);
      if (row && value) apply(*row, *value);
    }
  }

  void Rhs(const std::vector<std::string_view>& tokens) {
    RowValuePairs(tokens, [this](std::size_t row, double value) {
      doc_.rhs[row] = row == doc_.objective_row && has_objective_
                          ? value
                          : Clip(value);
    });
  }

  void Range(const std::vector<std::string_view>& tokens) {
    RowValuePairs(tokens, [this](std::size_t row, double value) {
      if (doc_.rows[row].sense == 'N') {
        Fail("range on objective row");
        return;
      }
      doc_.ranges[row] = value;
    });
  }

  void Bound(const std::vector<std::string_view>& tokens) {
    if (tokens.empty()) return;
    const std::string_view type = tokens[0];
    const bool valueless = type == "FR" || type == "MI" || type == "PL" ||
                           type == "BV";
    const bool valued = type == "LO" || type == "UP" || type == "FX" ||
                        type == "LI" || type == "UI";
    if (!valueless && !valued) {
      Fail("unknown bound type '" + std::string(type) + "'");
      return;
    }
    std::size_t column_token = 0;
    std::optional<double> value;
    if (valueless) {
      if (tokens.size() != 2 && tokens.size() != 3 && tokens.size() != 4) {
        Fail("expected '" + std::string(type) + " [<set>] <column>'");
        return;
      }
      // BV sometimes carries a value; ignore it.
      column_token = tokens.size() == 2 ? 1 : 2;
      if (tokens.size() == 3 && type == "BV" && ParseNumber(tokens[2])) {
        column_token = 1;
      }
    } else {
      if (tokens.size() != 3 && tokens.size() != 4) {
        Fail("expected '" + std::string(type) + " [<set>] <column> <value>'");
        return;
      }
      column_token = tokens.size() - 2;
      value = Number(tokens.back());
      if (!value) return;
      *value = Clip(*value);
    }
    const auto column = ColumnIndex(tokens[column_token]);
    if (!column) return;
    double& lo = doc_.lower[*column];
    double& up = doc_.upper[*column];
    if (type == "FR") {
      lo = -kInfinity;
      up = kInfinity;
      lower_set_[*column] = true;
    } else if (type == "MI") {
      lo = -kInfinity;
      lower_set_[*column] = true;
    } else if (type == "PL") {
      up = kInfinity;
    } else if (type == "BV") {
      Warn("binary variable relaxed to [0, 1]");
      lo = 0.0;
      up = 1.0;
      lower_set_[*column] = true;
    } else if (type == "LO" || type == "LI") {
      if (type == "LI") Warn("integer bound treated as continuous");
      lo = *value;
      lower_set_[*column] = true;
    } else if (type == "UP" || type == "UI") {
      if (type == "UI") Warn("integer bound treated as continuous");
      up = *value;
      if (*value < 0.0 && !lower_set_[*column] && lo == 0.0) {
        Warn("negative upper bound with default lower bound; lower set to "
             "-inf");
        lo = -kInfinity;
      }
    } else {  // FX
      lo = *value;
      up = *value;
      lower_set_[*column] = true;
    }
  }

  void Quad(const std::vector<std::string_view>& tokens) {
    if (tokens.size() != 3) {
      Fail("expected '<column> <column> <value>'");
      return;
    }
    const auto i = ColumnIndex(tokens[0]);
    const auto j = ColumnIndex(tokens[1]);
    const auto value = Number(tokens[2]);
    if (i && j && value) doc_.quad.push_back({*i, *j, *value});
  }

  QpsParseResult& result_;
  QpsDocument doc_;
  Section section_ = Section::kNone;
  std::string section_name_;
  std::size_t line_no_ = 0;
  bool has_objective_ = false;
  std::unordered_map<std::string, std::size_t> row_index_;
  std::unordered_map<std::string, std::size_t> column_index_;
  std::vector<bool> lower_set_;
};

Problem BuildProblem(const QpsDocument& doc, const QpsOptions& options) {
  const std::size_t n = doc.columns.size();
  if (n == 0) throw Error(ErrorCode::kParse, "no columns");
  const std::size_t m = doc.rows.size();
  std::vector<Vector> rows(m, Vector(n, 0.0));
  for (const auto& e : doc.entries) rows[e.row][e.column] += e.value;

  QuadraticObjective objective{DenseMatrix(n, n), rows[doc.objective_row],
                               -doc.rhs[doc.objective_row]};
  const double scale = options.half_convention ? 1.0 : 2.0;
  for (const auto& q : doc.quad) {
    if (doc.quad_is_matrix || q.i == q.j) {
      objective.q(q.i, q.j) += scale * q.value;
    } else {
      objective.q(q.i, q.j) += scale * q.value;
      objective.q(q.j, q.i) += scale * q.value;
    }
  }

  std::vector<ConvexFunction> constraints;
  for (std::size_t r = 0; r < m; ++r) {
    if (r == doc.objective_row) continue;
    const char sense = doc.rows[r].sense;
    const double b = doc.rhs[r];
    Vector a = rows[r];
    if (doc.ranges[r]) {
      const double range = *doc.ranges[r];
      double lo = b;
      double hi = b;
      if (sense == 'L') {
        lo = b - std::abs(range);
      } else if (sense == 'G') {
        hi = b + std::abs(range);
      } else if (range >= 0.0) {
        hi = b + range;
      } else {
        lo = b + range;
      }
      constraints.push_back(ConvexFunction::Affine(
          lo == hi ? AffineConstraint::Equal(std::move(a), lo)
                   : AffineConstraint::Interval(std::move(a), lo, hi)));
    } else if (sense == 'L') {
      constraints.push_back(
          ConvexFunction::Affine(AffineConstraint::LessEqual(std::move(a), b)));
    } else if (sense == 'G') {
      constraints.push_back(ConvexFunction::Affine(
          AffineConstraint::GreaterEqual(std::move(a), b)));
    } else {
      constraints.push_back(
          ConvexFunction::Affine(AffineConstraint::Equal(std::move(a), b)));
    }
  }
  return Problem(doc.name.empty() ? "qps" : doc.name,
                 ConvexFunction::Quadratic(std::move(objective)),
                 std::move(constraints),
                 VariableBounds{doc.lower, doc.upper});
}

}  // namespace

QpsParseResult ParseQps(std::istream& in, const QpsOptions& options) {
  QpsParseResult result;
  Parser parser(result);
  std::string line;
  while (std::getline(in, line)) parser.Line(line);
  parser.Finish();
  if (result.error_count() > 0) return result;
  try {
    result.problem = BuildProblem(parser.doc(), options);
  } catch (const std::exception& e) {
    result.diagnostics.push_back({0, "", e.what(), Severity::kError});
  }
  result.document = std::move(parser.doc());
  return result;
}

QpsParseResult ParseQps(std::string_view text, const QpsOptions& options) {
  std::istringstream in{std::string(text)};
  return ParseQps(in, options);
}

QpsParseResult ParseQpsFile(const std::string& path,
                            const QpsOptions& options) {
  std::ifstream in(path);
  if (!in) {
    QpsParseResult result;
    result.diagnostics.push_back(
        {0, "", "cannot open '" + path + "'", Severity::kError});
    return result;
  }
  return ParseQps(in, options);
}

namespace {

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string Line(std::initializer_list<std::string> fields) {
  std::string out;
  for (const auto& f : fields) out += "    " + f;
  return out + "\n";
}

}  // namespace

std::string WriteQps(const Problem& problem) {
  const QuadraticObjective* objective = problem.objective().quadratic();
  if (objective == nullptr) {
    throw Error(ErrorCode::kInvalidArgument,
                "write_qps: objective must be quadratic");
  }
  const std::size_t n = problem.dimension();
  struct RowOut {
    char sense;
    const Vector* a;
    double rhs;
    std::optional<double> range;
  };
  std::vector<RowOut> rows;
  for (const auto& c : problem.constraints()) {
    const AffineConstraint* a = c.affine();
    if (a == nullptr) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("write_qps: constraint kind '") +
                      std::string(FunctionKindName(c.kind())) +
                      "' is not representable");
    }
    if (a->sense == ConstraintSense::kEqual) {
      rows.push_back({'E', &a->normal, a->upper, std::nullopt});
    } else if (a->lower == -kInfinity) {
      rows.push_back({'L', &a->normal, a->upper, std::nullopt});
    } else if (a->upper == kInfinity) {
      rows.push_back({'G', &a->normal, a->lower, std::nullopt});
    } else {
      rows.push_back({'L', &a->normal, a->upper, a->upper - a->lower});
    }
  }
  auto col = [](std::size_t j) { return "x" + std::to_string(j + 1); };
  auto row = [](std::size_t r) { return "r" + std::to_string(r + 1); };

  std::string out = "NAME          " + problem.name() + "\nROWS\n";
  out += " N  obj\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out += std::string(" ") + rows[r].sense + "  " + row(r) + "\n";
  }
  out += "COLUMNS\n";
  for (std::size_t j = 0; j < n; ++j) {
    bool any = false;
    if (objective->c[j] != 0.0) {
      out += Line({col(j), "obj", Num(objective->c[j])});
      any = true;
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const double v = (*rows[r].a)[j];
      if (v != 0.0) {
        out += Line({col(j), row(r), Num(v)});
        any = true;
      }
    }
    // Keeps columns without coefficients declared.
    if (!any) out += Line({col(j), "obj", "0"});
  }
  out += "RHS\n";
  if (objective->constant != 0.0) {
    out += Line({"rhs", "obj", Num(-objective->constant)});
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].rhs != 0.0) out += Line({"rhs", row(r), Num(rows[r].rhs)});
  }
  bool has_ranges = false;
  for (const auto& r : rows) has_ranges |= r.range.has_value();
  if (has_ranges) {
    out += "RANGES\n";
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].range) out += Line({"rng", row(r), Num(*rows[r].range)});
    }
  }
  std::string bounds;
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = problem.bounds() ? problem.bounds()->lower[j] : -kInfinity;
    const double up = problem.bounds() ? problem.bounds()->upper[j] : kInfinity;
    if (lo == -kInfinity && up == kInfinity) {
      bounds += " FR bnd       " + col(j) + "\n";
      continue;
    }
    if (lo == up) {
      bounds += " FX bnd       " + col(j) + "    " + Num(lo) + "\n";
      continue;
    }
    if (lo == -kInfinity) {
      bounds += " MI bnd       " + col(j) + "\n";
    } else if (lo != 0.0 || up < 0.0) {
      bounds += " LO bnd       " + col(j) + "    " + Num(lo) + "\n";
    }
    if (up != kInfinity) {
      bounds += " UP bnd       " + col(j) + "    " + Num(up) + "\n";
    }
  }
  if (!bounds.empty()) out += "BOUNDS\n" + bounds;
  std::string quad;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = j; i < n; ++i) {
      const double v = objective->q(i, j);
      if (v != 0.0) quad += Line({col(i), col(j), Num(v)});
    }
  }
  if (!quad.empty()) out += "QUADOBJ\n" + quad;
  out += "ENDATA\n";
  return out;
}

}  // namespace levelcfp
