#include "nem/shapes.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace nem {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be positive and finite");
  }
}

double param_angle(std::size_t k, std::size_t n) {
  return kTwoPi * static_cast<double>(k) / static_cast<double>(n);
}

// Point on the regular polygon boundary at perimeter fraction u in [0, 1).
Point2 polygon_point(double radius, std::size_t sides, double u) {
  const double pos = u * static_cast<double>(sides);
  const auto edge = static_cast<std::size_t>(std::floor(pos)) % sides;
  const double t = pos - std::floor(pos);
  const double a0 = param_angle(edge, sides);
  const double a1 = param_angle(edge + 1, sides);
  const Point2 p0{radius * std::cos(a0), radius * std::sin(a0)};
  const Point2 p1{radius * std::cos(a1), radius * std::sin(a1)};
  if (t == 0.0) return p0;
  return {p0.x + t * (p1.x - p0.x), p0.y + t * (p1.y - p0.y)};
}

double signed_pow(double v, double e) { return std::copysign(std::pow(std::fabs(v), e), v); }

}  // namespace

Contour generate_shape(const ShapeSpec& spec) {
  const std::size_t n = spec.point_count;
  if (n < 3) throw std::invalid_argument("point_count must be at least 3");

  std::vector<Point2> pts;
  pts.reserve(n);
  switch (spec.kind) {
    case ShapeKind::Circle:
      require_positive(spec.radius, "radius");
      for (std::size_t k = 0; k < n; ++k) {
        const double t = param_angle(k, n);
        pts.push_back({spec.radius * std::cos(t), spec.radius * std::sin(t)});
      }
      break;
    case ShapeKind::Ellipse:
      require_positive(spec.a, "a");
      require_positive(spec.b, "b");
      for (std::size_t k = 0; k < n; ++k) {
        const double t = param_angle(k, n);
        pts.push_back({spec.a * std::cos(t), spec.b * std::sin(t)});
      }
      break;
    case ShapeKind::RegularPolygon:
      require_positive(spec.radius, "radius");
      if (spec.sides < 3) throw std::invalid_argument("regular polygon needs at least 3 sides");
      for (std::size_t k = 0; k < n; ++k) {
        pts.push_back(polygon_point(spec.radius, spec.sides,
                                    static_cast<double>(k) / static_cast<double>(n)));
      }
      break;
    case ShapeKind::Superellipse:
      require_positive(spec.a, "a");
      require_positive(spec.b, "b");
      require_positive(spec.exponent, "exponent");
      for (std::size_t k = 0; k < n; ++k) {
        const double t = param_angle(k, n);
        const double e = 2.0 / spec.exponent;
        pts.push_back({spec.a * signed_pow(std::cos(t), e), spec.b * signed_pow(std::sin(t), e)});
      }
      break;
    case ShapeKind::Perturbed: {
      require_positive(spec.radius, "radius");
      if (!(spec.noise >= 0.0) || spec.noise >= spec.radius) {
        throw std::invalid_argument("noise must lie in [0, radius)");
      }
      std::mt19937_64 rng(spec.seed);
      std::uniform_real_distribution<double> jitter(-spec.noise, spec.noise);
      for (std::size_t k = 0; k < n; ++k) {
        const double t = param_angle(k, n);
        const double rho = spec.radius + jitter(rng);
        pts.push_back({rho * std::cos(t), rho * std::sin(t)});
      }
      break;
    }
  }

  if (spec.rotation != 0.0 || spec.center.x != 0.0 || spec.center.y != 0.0) {
    const double c = std::cos(spec.rotation);
    const double s = std::sin(spec.rotation);
    for (Point2& p : pts) {
      p = {spec.center.x + c * p.x - s * p.y, spec.center.y + s * p.x + c * p.y};
    }
  }
  return Contour(spec.name, std::move(pts), true, spec.attrs);
}

ShapeKind parse_shape_kind(const std::string& text) {
  if (text == "circle") return ShapeKind::Circle;
  if (text == "ellipse") return ShapeKind::Ellipse;
  if (text == "regular_polygon" || text == "regular-polygon" || text == "polygon") {
    return ShapeKind::RegularPolygon;
  }
  if (text == "superellipse") return ShapeKind::Superellipse;
  if (text == "perturbed") return ShapeKind::Perturbed;
  throw std::invalid_argument("unknown shape kind '" + text + "'");
}

std::string to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::Circle: return "circle";
    case ShapeKind::Ellipse: return "ellipse";
    case ShapeKind::RegularPolygon: return "regular_polygon";
    case ShapeKind::Superellipse: return "superellipse";
    case ShapeKind::Perturbed: return "perturbed";
  }
  return "unknown";
}

std::vector<ShapeSpec> random_shape_specs(std::size_t count, std::uint64_t seed,
                                          std::size_t point_count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> axis(0.5, 2.0);
  std::uniform_real_distribution<double> turn(0.0, kTwoPi);
  std::uniform_int_distribution<int> sides(3, 8);
  std::uniform_real_distribution<double> expo(1.5, 6.0);

  std::vector<ShapeSpec> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    ShapeSpec s;
    s.name = (i < 10 ? "s0" : "s") + std::to_string(i);
    s.point_count = point_count;
    s.rotation = turn(rng);
    switch (i % 4) {
      case 0:
        s.kind = ShapeKind::Ellipse;
        s.a = axis(rng);
        s.b = axis(rng);
        break;
      case 1:
        s.kind = ShapeKind::RegularPolygon;
        s.radius = axis(rng);
        s.sides = static_cast<std::size_t>(sides(rng));
        break;
      case 2:
        s.kind = ShapeKind::Superellipse;
        s.a = axis(rng);
        s.b = axis(rng);
        s.exponent = expo(rng);
        break;
      default:
        s.kind = ShapeKind::Perturbed;
        s.radius = axis(rng);
        s.noise = 0.1 * s.radius;
        s.seed = rng();
        break;
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace nem
