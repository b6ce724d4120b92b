#include "nem/cost_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nem/kernels.hpp"

namespace nem {

namespace {

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

void CostModel::validate() const {
  if (modulus.kind == ModulusKind::Constant && !(std::isfinite(modulus.c) && modulus.c >= 1.0)) {
    throw std::invalid_argument("constant modulus c must be >= 1");
  }
  switch (stretch.kind) {
    case StretchKind::Constant:
      if (!finite_nonneg(stretch.r)) throw std::invalid_argument("stretch r must be >= 0");
      break;
    case StretchKind::FeatureScaled:
      if (!finite_nonneg(stretch.r0) || !finite_nonneg(stretch.r1)) {
        throw std::invalid_argument("stretch r0 and r1 must be >= 0");
      }
      if (stretch.feature.empty()) throw std::invalid_argument("feature-scaled stretch needs a feature");
      break;
    case StretchKind::Position: {
      const auto& t = stretch.table;
      if (t.values.size() != t.rows * t.cols) {
        throw std::invalid_argument("position table size does not match its dimensions");
      }
      if (!std::all_of(t.values.begin(), t.values.end(), finite_nonneg)) {
        throw std::invalid_argument("position table entries must be finite and >= 0");
      }
      break;
    }
  }
}

CostModel CostModel::angular_constant(double r) {
  CostModel cm;
  cm.stretch.kind = StretchKind::Constant;
  cm.stretch.r = r;
  cm.validate();
  return cm;
}

CostModel CostModel::feature_scaled(double r0, double r1, std::string feature, GroundKind ground) {
  CostModel cm;
  cm.ground.kind = ground;
  cm.stretch.kind = StretchKind::FeatureScaled;
  cm.stretch.r0 = r0;
  cm.stretch.r1 = r1;
  cm.stretch.feature = std::move(feature);
  cm.validate();
  return cm;
}

void require_features(const CostModel& cm, const FeatureSequence& xs, const FeatureSequence& ys) {
  auto need = [&](const std::string& key) {
    xs.feature(key);
    ys.feature(key);
  };
  if (cm.ground.kind == GroundKind::ScalarSquared) need(cm.ground.feature);
  if (cm.stretch.kind == StretchKind::FeatureScaled) need(cm.stretch.feature);
  if (cm.stretch.kind == StretchKind::Position &&
      (cm.stretch.table.rows < xs.size() || cm.stretch.table.cols < ys.size())) {
    throw std::invalid_argument("position table does not cover the sequence lengths");
  }
}

double evaluate_ground(const CostModel& cm, const FeatureSequence& xs, std::size_t i,
                       const FeatureSequence& ys, std::size_t j) {
  switch (cm.ground.kind) {
    case GroundKind::AngularAbs:
      return angular_difference(xs.angles()[i], ys.angles()[j]);
    case GroundKind::AngularSquared: {
      const double d = angular_difference(xs.angles()[i], ys.angles()[j]);
      return d * d;
    }
    case GroundKind::ScalarSquared: {
      const double d = xs.feature(cm.ground.feature)[i] - ys.feature(cm.ground.feature)[j];
      return d * d;
    }
  }
  return 0.0;
}

double evaluate_sigma(const CostModel& cm, const FeatureSequence& xs, std::size_t i,
                      const FeatureSequence& ys, std::size_t j) {
  switch (cm.stretch.kind) {
    case StretchKind::Constant:
      return cm.stretch.r;
    case StretchKind::FeatureScaled:
      return cm.stretch.r0 + cm.stretch.r1 * std::fabs(xs.feature(cm.stretch.feature)[i] -
                                                       ys.feature(cm.stretch.feature)[j]);
    case StretchKind::Position:
      return cm.stretch.table.at(i, j);
  }
  return 0.0;
}

double evaluate_modulus(const CostModel& cm, const FeatureSequence& xs, std::size_t i,
                        const FeatureSequence& ys, std::size_t j) {
  switch (cm.modulus.kind) {
    case ModulusKind::Constant:
      return cm.modulus.c;
    case ModulusKind::ScalarSum: {
      const double a = xs.feature(cm.modulus.feature)[i] + ys.feature(cm.modulus.feature)[j] + 2.0;
      if (!(a >= 1.0)) {
        throw std::invalid_argument("scalar-sum modulus evaluated below 1; feature '" +
                                    cm.modulus.feature + "' must be nonnegative");
      }
      return a;
    }
  }
  return 1.0;
}

void ground_row(const CostModel& cm, const FeatureSequence& xs, std::size_t i,
                const FeatureSequence& ys, std::span<double> out) {
  const auto& k = kernels::active();
  switch (cm.ground.kind) {
    case GroundKind::AngularAbs:
      k.angular_abs_row(xs.angles()[i], ys.angles(), out);
      break;
    case GroundKind::AngularSquared:
      k.angular_sq_row(xs.angles()[i], ys.angles(), out);
      break;
    case GroundKind::ScalarSquared:
      k.scalar_sq_row(xs.feature(cm.ground.feature)[i], ys.feature(cm.ground.feature), out);
      break;
  }
}

void sigma_row(const CostModel& cm, const FeatureSequence& xs, std::size_t i,
               const FeatureSequence& ys, std::span<double> out) {
  switch (cm.stretch.kind) {
    case StretchKind::Constant:
      std::fill(out.begin(), out.end(), cm.stretch.r);
      break;
    case StretchKind::FeatureScaled:
      kernels::active().scaled_abs_row(xs.feature(cm.stretch.feature)[i],
                                       ys.feature(cm.stretch.feature), cm.stretch.r0,
                                       cm.stretch.r1, out);
      break;
    case StretchKind::Position:
      for (std::size_t j = 0; j < out.size(); ++j) out[j] = cm.stretch.table.at(i, j);
      break;
  }
}

}  // namespace nem
