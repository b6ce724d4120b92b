#include <cmath>
#include <stdexcept>

#include "nem/elastic.hpp"
#include "nem/kernels.hpp"
#include "nem/retrieval.hpp"

namespace nem {

namespace {

bool point_in_polygon(Point2 p, std::span<const Point2> poly) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2 a = poly[i];
    const Point2 b = poly[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) {
      inside = !inside;
    }
  }
  return inside;
}

}  // namespace

double boundary_gap(const Contour& a, const Contour& b) {
  std::vector<double> ax, ay, bx, by;
  for (const Point2 p : a.points()) {
    ax.push_back(p.x);
    ay.push_back(p.y);
  }
  for (const Point2 p : b.points()) {
    bx.push_back(p.x);
    by.push_back(p.y);
  }
  return std::sqrt(kernels::active().min_sq_distance(ax, ay, bx, by));
}

bool contours_overlap(const Contour& a, const Contour& b) {
  for (const Point2 p : b.points()) {
    if (point_in_polygon(p, a.points())) return true;
  }
  for (const Point2 p : a.points()) {
    if (point_in_polygon(p, b.points())) return true;
  }
  return false;
}

SceneSpec SceneSpec::unit_circles(std::array<double, 3> velocities, double t) {
  SceneSpec scene;
  const char* names[] = {"green", "blue", "purple"};
  for (std::size_t k = 0; k < 3; ++k) {
    Robot& r = scene.robots[k];
    r.shape.name = names[k];
    r.shape.kind = ShapeKind::Circle;
    r.shape.radius = 1.0;
    r.shape.point_count = scene.gap_samples;
    r.x = 4.0 * static_cast<double>(k);
    r.velocity = velocities[k];
  }
  scene.t = t;
  return scene;
}

RobotReport robot_scenario(const SceneSpec& scene) {
  if (!std::isfinite(scene.t)) throw std::invalid_argument("scene time must be finite");
  std::vector<Contour> shapes;
  std::vector<FeatureSequence> seqs;
  std::vector<std::string> names;
  for (const Robot& robot : scene.robots) {
    if (!std::isfinite(robot.x) || !std::isfinite(robot.velocity)) {
      throw std::invalid_argument("robot position and velocity must be finite");
    }
    ShapeSpec spec = robot.shape;
    spec.center = {0.0, 0.0};
    spec.attrs["velocity"] = robot.velocity;
    const Contour base = generate_shape(spec);
    const Contour placed = translate(base, {robot.x + scene.t * robot.velocity, 0.0});
    shapes.push_back(resample_uniform(placed, scene.gap_samples));
    seqs.push_back(to_features(resample_uniform(placed, scene.match_samples)));
    names.push_back(placed.name());
  }

  bool overlapping = false;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) overlapping = overlapping || contours_overlap(shapes[i], shapes[j]);

  const PairTable gap = PairTable::tabulate(
      names, [&](std::size_t x, std::size_t y) { return x == y ? 0.0 : boundary_gap(shapes[x], shapes[y]); });

  CostModel cm = CostModel::feature_scaled(scene.r0, scene.r1, "velocity");
  const PairTable nem_table = PairTable::tabulate(
      names, [&](std::size_t x, std::size_t y) { return nem_sigma_total(seqs[x], seqs[y], cm); });

  const auto triples = sample_triples(3, 0, 0);
  AuditReport gap_audit = audit_table(gap, triples, [](std::size_t, std::size_t) { return 1.0; });
  gap_audit.bound = 1.0;
  AuditReport nem_audit = audit_table(nem_table, triples, [&](std::size_t x, std::size_t z) {
    return theta_surrogate_nem_sigma(seqs[x], seqs[z], cm);
  });
  const std::optional<double> theta_hat = relaxation_modulus(nem_table, triples).theta_hat;

  return RobotReport{std::move(shapes), gap, nem_table, std::move(gap_audit), std::move(nem_audit),
                     theta_hat, overlapping};
}

}  // namespace nem
