#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "nem/contour.hpp"

namespace nem {

enum class ShapeKind { Circle, Ellipse, RegularPolygon, Superellipse, Perturbed };

/// Parameters for a synthetic closed contour. Unused fields are ignored by
/// kinds that do not need them:
///   circle          radius
///   ellipse         a (x semi-axis), b (y semi-axis)
///   regular_polygon radius (circumradius), sides
///   superellipse    a, b, exponent
///   perturbed       radius, noise (radial jitter amplitude), seed
struct ShapeSpec {
  std::string name = "shape";
  ShapeKind kind = ShapeKind::Circle;
  double radius = 1.0;
  double a = 1.0;
  double b = 1.0;
  double exponent = 4.0;
  double noise = 0.05;
  std::size_t sides = 4;
  std::size_t point_count = 64;
  std::uint64_t seed = 1;
  double rotation = 0.0;  // radians, applied about the center
  Point2 center{};
  AttrMap attrs;
};

/// Counterclockwise samples starting at parameter angle 0 (before rotation).
/// Throws std::invalid_argument on non-positive sizes or point_count < 3.
Contour generate_shape(const ShapeSpec& spec);

ShapeKind parse_shape_kind(const std::string& text);
std::string to_string(ShapeKind kind);

/// Seeded mix of ellipses, polygons, superellipses and perturbed circles
/// named "s00", "s01", ...
std::vector<ShapeSpec> random_shape_specs(std::size_t count, std::uint64_t seed,
                                          std::size_t point_count = 64);

}  // namespace nem
