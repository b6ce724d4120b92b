#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace nem {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

/// A per-contour scalar (broadcast to every point) or one value per point.
using AttrValue = std::variant<double, std::vector<double>>;
using AttrMap = std::map<std::string, AttrValue, std::less<>>;

/// Ordered polygonal boundary. Closed contours repeat no endpoint; closure is
/// implicit between the last and first point.
///
/// Construction validates: finite coordinates, no two consecutive identical
/// points (including last/first when closed), at least 3 points when closed
/// and 2 when open, and per-point attribute lists of matching length.
/// Throws std::invalid_argument otherwise.
class Contour {
 public:
  Contour(std::string name, std::vector<Point2> points, bool closed = true,
          AttrMap attrs = {});

  const std::string& name() const noexcept { return name_; }
  std::span<const Point2> points() const noexcept { return points_; }
  bool closed() const noexcept { return closed_; }
  const AttrMap& attrs() const noexcept { return attrs_; }
  std::size_t size() const noexcept { return points_.size(); }

  bool has_attribute(std::string_view key) const;
  /// Per-point values; per-contour scalars are broadcast.
  std::vector<double> attribute(std::string_view key) const;

  double perimeter() const;

  friend bool operator==(const Contour&, const Contour&) = default;

 private:
  std::string name_;
  std::vector<Point2> points_;
  bool closed_;
  AttrMap attrs_;
};

/// Tangent directions in [0, 2pi), one per contour point.
struct TangentProfile {
  std::vector<double> angles;
};

/// The sequence a solver consumes: tangent angles plus named per-point
/// scalar features aligned 1:1 with the angles. Angles are normalized into
/// [0, 2pi) on construction.
class FeatureSequence {
 public:
  FeatureSequence() = default;
  FeatureSequence(std::vector<double> angles,
                  std::map<std::string, std::vector<double>, std::less<>> features = {},
                  std::string source = {}, bool closed = true);

  std::size_t size() const noexcept { return angles_.size(); }
  bool empty() const noexcept { return angles_.empty(); }
  std::span<const double> angles() const noexcept { return angles_; }
  const std::string& source() const noexcept { return source_; }
  bool closed() const noexcept { return closed_; }

  bool has_feature(std::string_view key) const;
  /// Throws std::invalid_argument naming the feature when absent.
  std::span<const double> feature(std::string_view key) const;
  const std::map<std::string, std::vector<double>, std::less<>>& features() const noexcept {
    return features_;
  }

  /// Cyclic rotation so that element k becomes element 0.
  FeatureSequence rotated(std::size_t k) const;

 private:
  std::vector<double> angles_;
  std::map<std::string, std::vector<double>, std::less<>> features_;
  std::string source_;
  bool closed_ = true;
};

/// Wraps any finite angle into [0, 2pi).
double normalize_angle(double a);

/// Geodesic distance on the circle, in [0, pi].
double angular_difference(double a, double b);

/// Central-difference tangent directions; indices wrap on closed contours,
/// one-sided differences at the ends of open ones.
TangentProfile tangent_profile(const Contour& c);

/// Tangent profile plus every contour attribute, broadcast per point.
FeatureSequence to_features(const Contour& c);

/// n points equally spaced in arc length, starting at the first point.
Contour resample_uniform(const Contour& c, std::size_t n);

Contour rotate_start(const Contour& c, std::size_t k);

Contour translate(const Contour& c, Point2 offset);

}  // namespace nem
