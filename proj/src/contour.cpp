#include "nem/contour.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nem {

namespace {

double segment_length(Point2 a, Point2 b) { return std::hypot(b.x - a.x, b.y - a.y); }

}  // namespace

Contour::Contour(std::string name, std::vector<Point2> points, bool closed, AttrMap attrs)
    : name_(std::move(name)), points_(std::move(points)), closed_(closed), attrs_(std::move(attrs)) {
  const std::size_t min_points = closed_ ? 3 : 2;
  if (points_.size() < min_points) {
    throw std::invalid_argument("contour '" + name_ + "' needs at least " +
                                std::to_string(min_points) + " points, got " +
                                std::to_string(points_.size()));
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const Point2 p = points_[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw std::invalid_argument("contour '" + name_ + "' has a non-finite coordinate at index " +
                                  std::to_string(i));
    }
    if (i > 0 && p == points_[i - 1]) {
      throw std::invalid_argument("contour '" + name_ + "' repeats point " + std::to_string(i));
    }
  }
  if (closed_ && points_.front() == points_.back()) {
    throw std::invalid_argument("closed contour '" + name_ +
                                "' must not repeat its first point at the end");
  }
  for (const auto& [key, value] : attrs_) {
    if (const auto* list = std::get_if<std::vector<double>>(&value)) {
      if (list->size() != points_.size()) {
        throw std::invalid_argument("attribute '" + key + "' has " + std::to_string(list->size()) +
                                    " values for " + std::to_string(points_.size()) + " points");
      }
      if (!std::all_of(list->begin(), list->end(), [](double v) { return std::isfinite(v); })) {
        throw std::invalid_argument("attribute '" + key + "' has a non-finite value");
      }
    } else if (!std::isfinite(std::get<double>(value))) {
      throw std::invalid_argument("attribute '" + key + "' is not finite");
    }
  }
}

bool Contour::has_attribute(std::string_view key) const { return attrs_.find(key) != attrs_.end(); }

std::vector<double> Contour::attribute(std::string_view key) const {
  auto it = attrs_.find(key);
  if (it == attrs_.end()) {
    throw std::invalid_argument("contour '" + name_ + "' has no attribute '" + std::string(key) + "'");
  }
  if (const auto* list = std::get_if<std::vector<double>>(&it->second)) return *list;
  return std::vector<double>(points_.size(), std::get<double>(it->second));
}

double Contour::perimeter() const {
  double total = 0.0;
  for (std::size_t i = 1; i < points_.size(); ++i) total += segment_length(points_[i - 1], points_[i]);
  if (closed_) total += segment_length(points_.back(), points_.front());
  return total;
}

FeatureSequence::FeatureSequence(std::vector<double> angles,
                                 std::map<std::string, std::vector<double>, std::less<>> features,
                                 std::string source, bool closed)
    : angles_(std::move(angles)),
      features_(std::move(features)),
      source_(std::move(source)),
      closed_(closed) {
  for (double& a : angles_) {
    if (!std::isfinite(a)) throw std::invalid_argument("sequence angles must be finite");
    a = normalize_angle(a);
  }
  for (const auto& [key, values] : features_) {
    if (values.size() != angles_.size()) {
      throw std::invalid_argument("feature '" + key + "' has " + std::to_string(values.size()) +
                                  " values for " + std::to_string(angles_.size()) + " angles");
    }
  }
}

bool FeatureSequence::has_feature(std::string_view key) const {
  return features_.find(key) != features_.end();
}

std::span<const double> FeatureSequence::feature(std::string_view key) const {
  auto it = features_.find(key);
  if (it == features_.end()) {
    throw std::invalid_argument("sequence '" + source_ + "' is missing feature '" +
                                std::string(key) + "'");
  }
  return it->second;
}

FeatureSequence FeatureSequence::rotated(std::size_t k) const {
  if (k >= size() && !(k == 0 && empty())) {
    throw std::out_of_range("rotation index " + std::to_string(k) + " out of range");
  }
  auto rot = [k](std::vector<double> v) {
    std::rotate(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
    return v;
  };
  std::map<std::string, std::vector<double>, std::less<>> features;
  for (const auto& [key, values] : features_) features.emplace(key, rot(values));
  return FeatureSequence(rot(angles_), std::move(features), source_, closed_);
}

double normalize_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative value can round up to exactly 2pi
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double angular_difference(double a, double b) {
  const double d = std::fmod(std::fabs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

TangentProfile tangent_profile(const Contour& c) {
  const auto pts = c.points();
  const std::size_t n = pts.size();
  if (n < 3) throw std::invalid_argument("tangent profile needs at least 3 points");

  TangentProfile out;
  out.angles.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Point2 ahead;
    Point2 behind;
    if (c.closed()) {
      ahead = pts[(i + 1) % n];
      behind = pts[(i + n - 1) % n];
    } else {
      ahead = pts[std::min(i + 1, n - 1)];
      behind = pts[i == 0 ? 0 : i - 1];
    }
    out.angles[i] = normalize_angle(std::atan2(ahead.y - behind.y, ahead.x - behind.x));
  }
  return out;
}

FeatureSequence to_features(const Contour& c) {
  std::map<std::string, std::vector<double>, std::less<>> features;
  for (const auto& entry : c.attrs()) features.emplace(entry.first, c.attribute(entry.first));
  return FeatureSequence(tangent_profile(c).angles, std::move(features), c.name(), c.closed());
}

Contour resample_uniform(const Contour& c, std::size_t n) {
  if (!c.closed()) throw std::invalid_argument("resample_uniform supports closed contours only");
  if (n < 3) throw std::invalid_argument("resample_uniform needs n >= 3");

  const auto pts = c.points();
  const std::size_t m = pts.size();
  std::vector<double> cumulative(m + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    cumulative[i + 1] = cumulative[i] + segment_length(pts[i], pts[(i + 1) % m]);
  }
  const double perimeter = cumulative[m];
  const double step = perimeter / static_cast<double>(n);

  // (segment index, fraction) for every output sample
  std::vector<std::pair<std::size_t, double>> stations;
  stations.reserve(n);
  stations.emplace_back(0, 0.0);
  std::size_t seg = 0;
  for (std::size_t k = 1; k < n; ++k) {
    const double s = step * static_cast<double>(k);
    while (seg + 1 < m && cumulative[seg + 1] <= s) ++seg;
    const double len = cumulative[seg + 1] - cumulative[seg];
    stations.emplace_back(seg, len > 0.0 ? (s - cumulative[seg]) / len : 0.0);
  }

  auto lerp = [m](std::span<const double> v, std::size_t i, double t) {
    return v[i] + t * (v[(i + 1) % m] - v[i]);
  };
  std::vector<Point2> out;
  out.reserve(n);
  for (const auto& [i, t] : stations) {
    const Point2 a = pts[i];
    const Point2 b = pts[(i + 1) % m];
    out.push_back(t == 0.0 ? a : Point2{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
  }

  AttrMap attrs;
  for (const auto& [key, value] : c.attrs()) {
    if (const auto* list = std::get_if<std::vector<double>>(&value)) {
      std::vector<double> sampled;
      sampled.reserve(n);
      for (const auto& [i, t] : stations) sampled.push_back(lerp(*list, i, t));
      attrs.emplace(key, std::move(sampled));
    } else {
      attrs.emplace(key, value);
    }
  }
  return Contour(c.name(), std::move(out), true, std::move(attrs));
}

Contour rotate_start(const Contour& c, std::size_t k) {
  if (k >= c.size()) {
    throw std::out_of_range("rotation index " + std::to_string(k) + " >= point count " +
                            std::to_string(c.size()));
  }
  std::vector<Point2> pts(c.points().begin(), c.points().end());
  std::rotate(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(k), pts.end());
  AttrMap attrs = c.attrs();
  for (auto& entry : attrs) {
    if (auto* list = std::get_if<std::vector<double>>(&entry.second)) {
      std::rotate(list->begin(), list->begin() + static_cast<std::ptrdiff_t>(k), list->end());
    }
  }
  return Contour(c.name(), std::move(pts), c.closed(), std::move(attrs));
}

Contour translate(const Contour& c, Point2 offset) {
  std::vector<Point2> pts;
  pts.reserve(c.size());
  for (const Point2 p : c.points()) pts.push_back({p.x + offset.x, p.y + offset.y});
  return Contour(c.name(), std::move(pts), c.closed(), c.attrs());
}

}  // namespace nem
