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

#include "levelcfp/convex_function.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "levelcfp/error.h"

namespace levelcfp {

std::string_view FunctionKindName(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::kQuadratic:
      return "quadratic";
    case FunctionKind::kAffine:
      return "affine";
    case FunctionKind::kIntervalAffine:
      return "interval-affine";
    case FunctionKind::kUnderdose:
      return "underdose";
    case FunctionKind::kOverdose:
      return "overdose";
    case FunctionKind::kPNorm:
      return "pnorm";
    case FunctionKind::kLevel:
      return "level";
    case FunctionKind::kCustom:
      return "custom";
  }
  return "unknown";
}

void QuadraticObjective::Validate() const {
  const std::size_t n = c.size();
  if (q.rows() != n || q.cols() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "quadratic objective: Q must be " + std::to_string(n) + "x" +
                    std::to_string(n));
  }
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(q(i, j)));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(q(i, j) - q(j, i)) > 1e-12 * std::max(1.0, scale)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "quadratic objective: Q is not symmetric at (" +
                        std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  // PSD spot check on unit vectors, pairwise sums/differences of unit
  // vectors and the all-ones vector. Catches negative diagonals and 2x2
  // minors with negative determinant.
  const double slack = 1e-9 * std::max(1.0, scale);
  for (std::size_t i = 0; i < n; ++i) {
    if (q(i, i) < -slack) {
      throw Error(ErrorCode::kInvalidArgument,
                  "quadratic objective: Q has negative diagonal entry " +
                      std::to_string(i));
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (q(i, j) == 0.0) continue;
      const double det = q(i, i) * q(j, j) - q(i, j) * q(i, j);
      if (det < -slack * std::max(1.0, scale)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "quadratic objective: Q is not positive semidefinite "
                    "(2x2 minor " +
                        std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) total += q(i, j);
  }
  if (total < -slack * static_cast<double>(n)) {
    throw Error(ErrorCode::kInvalidArgument,
                "quadratic objective: Q is not positive semidefinite");
  }
}

AffineConstraint AffineConstraint::LessEqual(Vector a, double b) {
  AffineConstraint c{std::move(a), -kInfinity, b, ConstraintSense::kLessEqual};
  c.Validate();
  return c;
}

AffineConstraint AffineConstraint::GreaterEqual(Vector a, double b) {
  for (double& v : a) v = -v;
  return LessEqual(std::move(a), -b);
}

AffineConstraint AffineConstraint::Equal(Vector a, double b) {
  AffineConstraint c{std::move(a), b, b, ConstraintSense::kEqual};
  c.Validate();
  return c;
}

AffineConstraint AffineConstraint::Interval(Vector a, double lower,
                                            double upper) {
  AffineConstraint c{std::move(a), lower, upper, ConstraintSense::kInterval};
  c.Validate();
  return c;
}

double AffineConstraint::Violation(ConstVectorView x) const {
  const double r = Activity(x);
  if (sense == ConstraintSense::kLessEqual) return r - upper;
  return std::max(r - upper, lower - r);
}

void AffineConstraint::Validate() const {
  if (!AllFinite(normal)) {
    throw Error(ErrorCode::kInvalidArgument,
                "affine constraint: normal has non-finite entries");
  }
  if (SquaredNorm(normal) == 0.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "affine constraint: normal vector is zero");
  }
  if (std::isnan(lower) || std::isnan(upper) || lower > upper) {
    throw Error(ErrorCode::kInvalidArgument,
                "affine constraint: requires lower <= upper");
  }
  if (sense == ConstraintSense::kLessEqual && !std::isfinite(upper)) {
    throw Error(ErrorCode::kInvalidArgument,
                "affine constraint: halfspace bound must be finite");
  }
  if (sense == ConstraintSense::kEqual &&
      (lower != upper || !std::isfinite(lower))) {
    throw Error(ErrorCode::kInvalidArgument,
                "affine constraint: equality needs one finite right-hand side");
  }
}

class ConvexFunction::Impl {
 public:
  virtual ~Impl() = default;
  virtual FunctionKind kind() const = 0;
  virtual std::size_t dimension() const = 0;
  virtual double Eval(ConstVectorView x) const = 0;
  virtual Vector Subgradient(ConstVectorView x) const = 0;
};

namespace {

class QuadraticImpl final : public ConvexFunction::Impl {
 public:
  explicit QuadraticImpl(QuadraticObjective objective)
      : objective_(std::move(objective)) {}

  FunctionKind kind() const override { return FunctionKind::kQuadratic; }
  std::size_t dimension() const override { return objective_.dimension(); }

  double Eval(ConstVectorView x) const override {
    Vector qx(x.size());
    objective_.q.Multiply(x, qx);
    return 0.5 * Dot(x, qx) + Dot(objective_.c, x) + objective_.constant;
  }

  Vector Subgradient(ConstVectorView x) const override {
    Vector g(x.size());
    objective_.q.Multiply(x, g);
    Axpy(1.0, objective_.c, g);
    return g;
  }

  const QuadraticObjective& objective() const { return objective_; }

 private:
  QuadraticObjective objective_;
};

class AffineImpl final : public ConvexFunction::Impl {
 public:
  explicit AffineImpl(AffineConstraint constraint)
      : constraint_(std::move(constraint)) {}

  FunctionKind kind() const override {
    return constraint_.sense == ConstraintSense::kLessEqual
               ? FunctionKind::kAffine
               : FunctionKind::kIntervalAffine;
  }
  std::size_t dimension() const override { return constraint_.dimension(); }

  double Eval(ConstVectorView x) const override {
    return constraint_.Violation(x);
  }

  Vector Subgradient(ConstVectorView x) const override {
    if (constraint_.sense == ConstraintSense::kLessEqual) {
      return constraint_.normal;
    }
    const double r = constraint_.Activity(x);
    const double above = r - constraint_.upper;
    const double below = constraint_.lower - r;
    if (above > below) return constraint_.normal;
    Vector g = constraint_.normal;
    if (below > above) {
      for (double& v : g) v = -v;
      return g;
    }
    // Both branches active: 0 is the minimal-norm element of conv{a, -a}.
    std::fill(g.begin(), g.end(), 0.0);
    return g;
  }

  const AffineConstraint& constraint() const { return constraint_; }

 private:
  AffineConstraint constraint_;
};

void ValidateDoseModel(const DoseModel& model, bool needs_tumor,
                       bool needs_risk) {
  const DenseMatrix& d = model.dose;
  for (std::size_t i = 0; i < d.rows(); ++i) {
    for (std::size_t j = 0; j < d.cols(); ++j) {
      if (!(d(i, j) >= 0.0) || !std::isfinite(d(i, j))) {
        throw Error(ErrorCode::kInvalidArgument,
                    "dose model: dose matrix entries must be finite and >= 0");
      }
    }
  }
  auto check_indices = [&](const std::vector<std::size_t>& voxels,
                           const char* what) {
    for (std::size_t v : voxels) {
      if (v >= d.rows()) {
        throw Error(ErrorCode::kInvalidArgument,
                    std::string("dose model: ") + what +
                        " voxel index out of range");
      }
    }
  };
  check_indices(model.tumor_voxels, "tumor");
  check_indices(model.risk_voxels, "risk");
  if (needs_tumor) {
    if (model.tumor_voxels.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "dose model: tumor voxel set is empty");
    }
    if (!(model.prescription > 0.0) || !std::isfinite(model.prescription)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "dose model: prescription must be positive");
    }
  }
  if (needs_risk && model.risk_voxels.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "dose model: risk voxel set is empty");
  }
}

// sqrt(mean_i max(0, sign * (d_i - R))^2) over the tumor voxels; sign = -1
// gives under-dosage, +1 over-dosage.
class DoseDeviationImpl final : public ConvexFunction::Impl {
 public:
  DoseDeviationImpl(const DoseModel& model, double sign)
      : model_(model), sign_(sign) {}

  FunctionKind kind() const override {
    return sign_ < 0 ? FunctionKind::kUnderdose : FunctionKind::kOverdose;
  }
  std::size_t dimension() const override { return model_.dose.cols(); }

  double Eval(ConstVectorView x) const override {
    double sum = 0.0;
    for (std::size_t i : model_.tumor_voxels) {
      const double s = Shortfall(i, x);
      sum += s * s;
    }
    return std::sqrt(sum / static_cast<double>(model_.tumor_voxels.size()));
  }

  Vector Subgradient(ConstVectorView x) const override {
    Vector g(dimension(), 0.0);
    const double value = Eval(x);
    if (value == 0.0) return g;
    const double scale =
        sign_ / (static_cast<double>(model_.tumor_voxels.size()) * value);
    for (std::size_t i : model_.tumor_voxels) {
      const double s = Shortfall(i, x);
      if (s > 0.0) Axpy(scale * s, model_.dose.row(i), g);
    }
    return g;
  }

 private:
  double Shortfall(std::size_t voxel, ConstVectorView x) const {
    const double dose = Dot(model_.dose.row(voxel), x);
    return std::max(0.0, sign_ * (dose - model_.prescription));
  }

  DoseModel model_;
  double sign_;
};

class PNormImpl final : public ConvexFunction::Impl {
 public:
  explicit PNormImpl(const DoseModel& model) : model_(model) {}

  FunctionKind kind() const override { return FunctionKind::kPNorm; }
  std::size_t dimension() const override { return model_.dose.cols(); }

  double Eval(ConstVectorView x) const override {
    const Scaled s = Compute(x);
    if (s.max_abs == 0.0) return 0.0;
    return s.max_abs * std::pow(s.mean_power, 1.0 / p());
  }

  // d/dx_j = |R|^-1 sum_i u_i^(p-1) D_ij * S^(1/p - 1) with u = d / max|d|
  // and S = mean u^p, which avoids overflow of d^p for p = 8.
  Vector Subgradient(ConstVectorView x) const override {
    Vector g(dimension(), 0.0);
    const Scaled s = Compute(x);
    if (s.max_abs == 0.0) return g;
    const double factor = std::pow(s.mean_power, 1.0 / p() - 1.0) /
                          static_cast<double>(model_.risk_voxels.size());
    for (std::size_t k = 0; k < model_.risk_voxels.size(); ++k) {
      const double u = s.scaled[k];
      if (u != 0.0) {
        Axpy(factor * std::pow(u, p() - 1.0),
             model_.dose.row(model_.risk_voxels[k]), g);
      }
    }
    return g;
  }

 private:
  struct Scaled {
    double max_abs = 0.0;
    double mean_power = 0.0;
    Vector scaled;
  };

  double p() const { return static_cast<double>(model_.norm_exponent); }

  Scaled Compute(ConstVectorView x) const {
    Scaled s;
    s.scaled.reserve(model_.risk_voxels.size());
    for (std::size_t i : model_.risk_voxels) {
      const double d = Dot(model_.dose.row(i), x);
      s.scaled.push_back(d);
      s.max_abs = std::max(s.max_abs, std::abs(d));
    }
    if (s.max_abs == 0.0) return s;
    double sum = 0.0;
    for (double& u : s.scaled) {
      u /= s.max_abs;
      sum += std::pow(u, p());
    }
    s.mean_power = sum / static_cast<double>(s.scaled.size());
    return s;
  }

  DoseModel model_;
};

class LevelImpl final : public ConvexFunction::Impl {
 public:
  LevelImpl(ConvexFunction base, double level)
      : base_(std::move(base)), level_(level) {}

  FunctionKind kind() const override { return FunctionKind::kLevel; }
  std::size_t dimension() const override { return base_.dimension(); }
  double Eval(ConstVectorView x) const override {
    return base_.Eval(x) - level_;
  }
  Vector Subgradient(ConstVectorView x) const override {
    return base_.Subgradient(x);
  }

  const ConvexFunction& base() const { return base_; }
  double level() const { return level_; }

 private:
  ConvexFunction base_;
  double level_;
};

class CustomImpl final : public ConvexFunction::Impl {
 public:
  CustomImpl(std::size_t dimension, ConvexFunction::EvalFn eval,
             ConvexFunction::SubgradientFn subgradient)
      : dimension_(dimension),
        eval_(std::move(eval)),
        subgradient_(std::move(subgradient)) {}

  FunctionKind kind() const override { return FunctionKind::kCustom; }
  std::size_t dimension() const override { return dimension_; }
  double Eval(ConstVectorView x) const override { return eval_(x); }
  Vector Subgradient(ConstVectorView x) const override {
    Vector g = subgradient_(x);
    if (g.size() != dimension_) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "custom function returned a subgradient of wrong size");
    }
    return g;
  }

 private:
  std::size_t dimension_;
  ConvexFunction::EvalFn eval_;
  ConvexFunction::SubgradientFn subgradient_;
};

}  // namespace

ConvexFunction ConvexFunction::Quadratic(QuadraticObjective objective) {
  objective.Validate();
  return ConvexFunction(std::make_shared<QuadraticImpl>(std::move(objective)));
}

ConvexFunction ConvexFunction::Affine(AffineConstraint constraint) {
  constraint.Validate();
  return ConvexFunction(std::make_shared<AffineImpl>(std::move(constraint)));
}

ConvexFunction ConvexFunction::Underdose(const DoseModel& model) {
  ValidateDoseModel(model, /*needs_tumor=*/true, /*needs_risk=*/false);
  return ConvexFunction(std::make_shared<DoseDeviationImpl>(model, -1.0));
}

ConvexFunction ConvexFunction::Overdose(const DoseModel& model) {
  ValidateDoseModel(model, /*needs_tumor=*/true, /*needs_risk=*/false);
  return ConvexFunction(std::make_shared<DoseDeviationImpl>(model, 1.0));
}

ConvexFunction ConvexFunction::PNorm(const DoseModel& model) {
  if (model.norm_exponent != 2 && model.norm_exponent != 8) {
    throw Error(ErrorCode::kInvalidArgument,
                "pnorm: unsupported exponent " +
                    std::to_string(model.norm_exponent) + " (expected 2 or 8)");
  }
  ValidateDoseModel(model, /*needs_tumor=*/false, /*needs_risk=*/true);
  return ConvexFunction(std::make_shared<PNormImpl>(model));
}

ConvexFunction ConvexFunction::Level(ConvexFunction base, double level) {
  if (std::isnan(level)) {
    throw Error(ErrorCode::kInvalidArgument, "level constraint: level is NaN");
  }
  return ConvexFunction(std::make_shared<LevelImpl>(std::move(base), level));
}

ConvexFunction ConvexFunction::Custom(std::size_t dimension, EvalFn eval,
                                      SubgradientFn subgradient) {
  if (!eval || !subgradient) {
    throw Error(ErrorCode::kInvalidArgument,
                "custom function needs both oracles");
  }
  return ConvexFunction(std::make_shared<CustomImpl>(
      dimension, std::move(eval), std::move(subgradient)));
}

FunctionKind ConvexFunction::kind() const { return impl_->kind(); }

std::size_t ConvexFunction::dimension() const { return impl_->dimension(); }

void ConvexFunction::CheckDimension(ConstVectorView x) const {
  if (x.size() != impl_->dimension()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(FunctionKindName(kind())) + " function expects " +
                    std::to_string(impl_->dimension()) + " entries, got " +
                    std::to_string(x.size()));
  }
}

double ConvexFunction::Eval(ConstVectorView x) const {
  CheckDimension(x);
  return impl_->Eval(x);
}

Vector ConvexFunction::Subgradient(ConstVectorView x) const {
  CheckDimension(x);
  return impl_->Subgradient(x);
}

const QuadraticObjective* ConvexFunction::quadratic() const {
  const auto* q = dynamic_cast<const QuadraticImpl*>(impl_.get());
  return q ? &q->objective() : nullptr;
}

const AffineConstraint* ConvexFunction::affine() const {
  const auto* a = dynamic_cast<const AffineImpl*>(impl_.get());
  return a ? &a->constraint() : nullptr;
}

const ConvexFunction* ConvexFunction::level_base() const {
  const auto* l = dynamic_cast<const LevelImpl*>(impl_.get());
  return l ? &l->base() : nullptr;
}

double ConvexFunction::level_value() const {
  const auto* l = dynamic_cast<const LevelImpl*>(impl_.get());
  return l ? l->level() : 0.0;
}

}  // namespace levelcfp
