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
#include <fstream>
#include <sstream>
#include <string>

#include "levelcfp/error.h"
#include "levelcfp/qps.h"

namespace levelcfp {
namespace {

const std::string kFixtures = LEVELCFP_FIXTURES;

Problem MustParse(const QpsParseResult& r) {
  for (const auto& d : r.diagnostics) {
    if (d.severity == Severity::kError) ADD_FAILURE() << d.ToString();
  }
  if (!r.problem) throw std::runtime_error("parse failed");
  return *r.problem;
}

const QuadraticObjective& Obj(const Problem& p) {
  return *p.objective().quadratic();
}

std::vector<AffineConstraint> Rows(const Problem& p) {
  std::vector<AffineConstraint> rows;
  for (const auto& c : p.constraints()) rows.push_back(*c.affine());
  return rows;
}

void ExpectClose(double a, double b, double tol) {
  if (std::isinf(a) || std::isinf(b)) {
    EXPECT_EQ(a, b);
  } else {
    EXPECT_NEAR(a, b, tol);
  }
}

void ExpectSameMatrices(const Problem& a, const Problem& b, double tol) {
  ASSERT_EQ(a.dimension(), b.dimension());
  const auto& qa = Obj(a);
  const auto& qb = Obj(b);
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    EXPECT_NEAR(qa.c[i], qb.c[i], tol);
    for (std::size_t j = 0; j < a.dimension(); ++j) {
      EXPECT_NEAR(qa.q(i, j), qb.q(i, j), tol);
    }
  }
  EXPECT_NEAR(qa.constant, qb.constant, tol);
  const auto ra = Rows(a), rb = Rows(b);
  ASSERT_EQ(ra.size(), rb.size());
  for (std::size_t r = 0; r < ra.size(); ++r) {
    EXPECT_EQ(ra[r].sense, rb[r].sense);
    ExpectClose(ra[r].lower, rb[r].lower, tol);
    ExpectClose(ra[r].upper, rb[r].upper, tol);
    for (std::size_t j = 0; j < a.dimension(); ++j) {
      EXPECT_NEAR(ra[r].normal[j], rb[r].normal[j], tol);
    }
  }
  ASSERT_TRUE(a.bounds() && b.bounds());
  EXPECT_EQ(a.bounds()->lower, b.bounds()->lower);
  EXPECT_EQ(a.bounds()->upper, b.bounds()->upper);
}

TEST(QpsParse, FixtureMatchesHandAssembly) {
  const Problem p = MustParse(ParseQpsFile(kFixtures + "/parser/qp2d.qps"));
  EXPECT_EQ(p.name(), "QP2D");
  const auto& q = Obj(p);
  EXPECT_EQ(q.q(0, 0), 1.0);
  EXPECT_EQ(q.q(1, 1), 1.0);
  EXPECT_EQ(q.q(0, 1), 0.0);
  EXPECT_EQ(q.c, (Vector{-1.0, 0.0}));
  EXPECT_EQ(q.constant, 0.0);
  const auto rows = Rows(p);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].sense, ConstraintSense::kLessEqual);
  EXPECT_EQ(rows[0].normal, (Vector{1.0, 1.0}));
  EXPECT_EQ(rows[0].upper, 2.0);
  EXPECT_EQ(p.bounds()->lower, (Vector{0.0, 0.0}));
  EXPECT_EQ(p.bounds()->upper, (Vector{kInfinity, kInfinity}));
}

TEST(QpsParse, CoupledFixture) {
  const Problem p =
      MustParse(ParseQpsFile(kFixtures + "/parser/coupled_quadobj.qps"));
  const auto& q = Obj(p);
  EXPECT_EQ(q.q(0, 0), 2.0);
  EXPECT_EQ(q.q(0, 1), 1.0);
  EXPECT_EQ(q.q(1, 0), 1.0);
  EXPECT_EQ(q.q(1, 1), 3.0);
  EXPECT_EQ(q.c, (Vector{1.0, -1.0}));
  EXPECT_EQ(q.constant, 1.5);
  const auto rows = Rows(p);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].sense, ConstraintSense::kInterval);
  EXPECT_EQ(rows[0].normal, (Vector{1.0, 2.0}));
  EXPECT_EQ(rows[0].lower, 1.0);
  EXPECT_EQ(rows[0].upper, 4.0);
  EXPECT_EQ(rows[1].sense, ConstraintSense::kEqual);
  EXPECT_EQ(rows[1].normal, (Vector{1.0, -1.0}));
  EXPECT_EQ(rows[1].upper, 0.5);
  EXPECT_EQ(p.bounds()->lower, (Vector{0.0, -kInfinity}));
  EXPECT_EQ(p.bounds()->upper, (Vector{4.0, kInfinity}));
}

TEST(QpsParse, QMatrixMatchesQuadObj) {
  const Problem a =
      MustParse(ParseQpsFile(kFixtures + "/parser/coupled_quadobj.qps"));
  const Problem b =
      MustParse(ParseQpsFile(kFixtures + "/parser/coupled_qmatrix.qps"));
  ExpectSameMatrices(a, b, 0.0);
}

TEST(QpsParse, NoHalfConvention) {
  QpsOptions options;
  options.half_convention = false;
  const Problem p =
      MustParse(ParseQpsFile(kFixtures + "/parser/qp2d.qps", options));
  EXPECT_EQ(Obj(p).q(0, 0), 2.0);
}

TEST(QpsParse, ReadsFromStream) {
  std::ifstream in(kFixtures + "/parser/qp2d.qps");
  const Problem p = MustParse(ParseQps(in));
  EXPECT_EQ(p.dimension(), 2u);
}

TEST(QpsParse, RangeRules) {
  auto parse = [](const std::string& sense, double range) {
    const std::string text = "NAME R\nROWS\n N obj\n " + sense +
                             " r\nCOLUMNS\n x obj 1 r 1\nRHS\n rhs r 5\n"
                             "RANGES\n rng r " + std::to_string(range) +
                             "\nENDATA\n";
    return Rows(MustParse(ParseQps(text)))[0];
  };
  EXPECT_EQ(parse("L", 2).lower, 3.0);
  EXPECT_EQ(parse("L", -2).lower, 3.0);
  EXPECT_EQ(parse("G", -2).upper, 7.0);
  EXPECT_EQ(parse("E", 2).upper, 7.0);
  EXPECT_EQ(parse("E", -2).lower, 3.0);
  EXPECT_EQ(parse("E", 0).sense, ConstraintSense::kEqual);
}

TEST(QpsParse, BoundTypes) {
  const std::string text =
      "NAME B\nROWS\n N obj\nCOLUMNS\n a obj 1\n b obj 1\n c obj 1\n"
      " d obj 1\n e obj 1\n f obj 0\nBOUNDS\n LO bnd a -2\n UP bnd b -3\n"
      " FX bnd c 1.5\n FR bnd d\n BV bnd e\n MI bnd f\n UP bnd f 1e30\n"
      "ENDATA\n";
  const auto r = ParseQps(text);
  const Problem p = MustParse(r);
  EXPECT_EQ(p.bounds()->lower,
            (Vector{-2.0, -kInfinity, 1.5, -kInfinity, 0.0, -kInfinity}));
  EXPECT_EQ(p.bounds()->upper,
            (Vector{kInfinity, -3.0, 1.5, kInfinity, 1.0, kInfinity}));
  std::size_t warnings = 0;
  for (const auto& d : r.diagnostics) warnings += d.severity == Severity::kWarning;
  EXPECT_EQ(warnings, 2u);  // negative UP and BV
}

TEST(QpsParse, ColumnWithoutCoefficients) {
  const std::string text =
      "NAME E\nROWS\n N obj\n L r\nCOLUMNS\n x obj 1 r 1\n y obj 0\n"
      "RHS\n rhs r 1\nENDATA\n";
  const Problem p = MustParse(ParseQps(text));
  ASSERT_EQ(p.dimension(), 2u);
  EXPECT_EQ(Obj(p).c[1], 0.0);
  EXPECT_EQ(Rows(p)[0].normal[1], 0.0);
}

TEST(QpsParse, FreeFormatTabsAndComments) {
  const std::string text =
      "* comment\nNAME\tT\nROWS\n\tN\tobj\n\n\tG\tg\nCOLUMNS\n\tx\tobj\t2\tg\t1\n"
      "* another\nRHS\n\tg\t1\nENDATA\n";
  const Problem p = MustParse(ParseQps(text));
  const auto rows = Rows(p);
  EXPECT_EQ(rows[0].normal, (Vector{-1.0}));
  EXPECT_EQ(rows[0].upper, -1.0);
}

struct BadCase {
  std::string text;
  std::size_t line;
  std::string fragment;
};

TEST(QpsParse, ErrorsCarryLineNumbers) {
  const BadCase cases[] = {
      {"NAME X\nROWS\n N obj\nCOLUMNS\n x obj 1\nBOGUS\nENDATA\n", 6,
       "unknown section"},
      {"NAME X\nROWS\n N obj\n N obj2\nCOLUMNS\n x obj 1\nENDATA\n", 4,
       "duplicate N row"},
      {"NAME X\nROWS\n N obj\nCOLUMNS\n x nope 1\nENDATA\n", 5,
       "undeclared row"},
      {"NAME X\nROWS\n N obj\nCOLUMNS\n x obj 1.2.3\nENDATA\n", 5,
       "malformed number"},
      {"NAME X\nROWS\n N obj\nCOLUMNS\n x obj 1\nQUADOBJ\n x y 1\nENDATA\n", 7,
       "undeclared column"},
      {"NAME X\nROWS\n N obj\nCOLUMNS\n x obj 1\nBOUNDS\n ZZ b x 1\nENDATA\n",
       7, "unknown bound type"},
      {"NAME X\nOBJSENSE MAX\nROWS\n N obj\nCOLUMNS\n x obj 1\nENDATA\n", 2,
       "maximization"},
  };
  for (const auto& c : cases) {
    const auto r = ParseQps(c.text);
    EXPECT_FALSE(r.ok());
    bool seen = false;
    for (const auto& d : r.diagnostics) {
      if (d.severity == Severity::kError &&
          d.message.find(c.fragment) != std::string::npos) {
        EXPECT_EQ(d.line, c.line) << c.fragment;
        seen = true;
      }
    }
    EXPECT_TRUE(seen) << c.fragment;
  }
}

TEST(QpsParse, NonConvexObjectiveRejected) {
  const std::string text =
      "NAME X\nROWS\n N obj\nCOLUMNS\n x obj 1\nQUADOBJ\n x x -1\nENDATA\n";
  EXPECT_FALSE(ParseQps(text).ok());
}

TEST(QpsParse, MissingFile) {
  const auto r = ParseQpsFile(kFixtures + "/does_not_exist.qps");
  ASSERT_FALSE(r.ok());
  EXPECT_NE(r.diagnostics[0].message.find("cannot open"), std::string::npos);
}

TEST(QpsWrite, RoundTripFixtures) {
  for (const char* name : {"/parser/qp2d.qps", "/parser/coupled_quadobj.qps",
                           "/bench/qp2d_shifted.qps", "/bench/box1d.qps",
                           "/infeasible.qps"}) {
    const Problem p = MustParse(ParseQpsFile(kFixtures + name));
    const Problem back = MustParse(ParseQps(WriteQps(p)));
    ExpectSameMatrices(p, back, 1e-12);
  }
}

TEST(QpsWrite, EmitsRangesAndFreeBounds) {
  const Problem p =
      MustParse(ParseQpsFile(kFixtures + "/parser/coupled_quadobj.qps"));
  const std::string text = WriteQps(p);
  EXPECT_NE(text.find("RANGES"), std::string::npos);
  EXPECT_NE(text.find(" FR "), std::string::npos);
  EXPECT_NE(text.find(" UP "), std::string::npos);
  const Problem free_var(
      "f", ConvexFunction::Quadratic({DenseMatrix(1, 1, 1.0), {0.0}, 0.0}), {});
  EXPECT_NE(WriteQps(free_var).find(" FR "), std::string::npos);
}

TEST(QpsWrite, RejectsNonlinearConstraints) {
  const ConvexFunction sq =
      ConvexFunction::Quadratic({DenseMatrix(1, 1, 2.0), {0.0}, 0.0});
  const Problem p("n", sq, {ConvexFunction::Level(sq, 1.0)});
  EXPECT_THROW(WriteQps(p), Error);
}

}  // namespace
}  // namespace levelcfp
