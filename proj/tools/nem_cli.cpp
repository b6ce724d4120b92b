// nem: command-line front end for elastic shape matching and metric audits.
//
// Exit status: 0 success, 1 audit violations under --strict, 2 usage or input
// errors.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "nem/elastic.hpp"
#include "nem/io.hpp"
#include "nem/kernels.hpp"
#include "nem/metric_audit.hpp"
#include "nem/retrieval.hpp"
#include "nem/shapes.hpp"

namespace {

using nem::io::json;

constexpr std::uint64_t kDefaultSeed = 20240607;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    nem::io::write_text_file(out_path, text);
  }
}

nem::CostModel model_or_default(const std::string& path) {
  if (path.empty()) return nem::CostModel::angular_constant(1.0);
  return nem::io::load_cost_model(path);
}

nem::FeatureSequence prepare(const nem::Contour& c, std::size_t resample) {
  return nem::to_features(resample > 0 ? nem::resample_uniform(c, resample) : c);
}

/// "start:stop:step", inclusive of stop up to rounding.
std::vector<double> parse_range(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      parts.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError("bad range component '" + item + "'");
    }
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
    throw UsageError("range must be start:stop:step with step > 0 and stop >= start");
  }
  std::vector<double> out;
  const auto steps = static_cast<std::size_t>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
  for (std::size_t k = 0; k <= steps; ++k) out.push_back(parts[0] + static_cast<double>(k) * parts[2]);
  return out;
}

std::vector<double> parse_triplet(const std::string& text, const char* what) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError(std::string("bad ") + what + " value '" + item + "'");
    }
  }
  if (v.size() != 3) throw UsageError(std::string(what) + " needs three comma-separated values");
  return v;
}

// gen -----------------------------------------------------------------------

struct GenArgs {
  std::string kind = "circle";
  nem::ShapeSpec spec;
  std::optional<double> velocity;
  std::string out;
};

int run_gen(const GenArgs& a) {
  nem::ShapeSpec spec = a.spec;
  spec.kind = nem::parse_shape_kind(a.kind);
  if (spec.name == "shape") spec.name = a.kind;
  if (a.velocity) spec.attrs["velocity"] = *a.velocity;
  const nem::Contour c = nem::generate_shape(spec);
  emit(a.out, nem::io::contour_to_json(c).dump(2) + "\n");
  return 0;
}

// dist ----------------------------------------------------------------------

struct DistArgs {
  std::string x, y, model, mapping_out, out;
  std::size_t resample = 0;
  bool cyclic = false;
};

int run_dist(const DistArgs& a) {
  const nem::CostModel cm = model_or_default(a.model);
  const nem::FeatureSequence xs = prepare(nem::io::load_contour(a.x), a.resample);
  const nem::FeatureSequence ys = prepare(nem::io::load_contour(a.y), a.resample);

  json doc;
  std::optional<nem::DistanceReport> report;
  if (a.cyclic) {
    auto cyc = nem::nem_sigma_cyclic(xs, ys, cm);
    doc = nem::io::distance_report_to_json(cyc.report);
    doc["best_rotation"] = cyc.best_rotation;
    report = std::move(cyc.report);
  } else {
    report = nem::nem_sigma(xs, ys, cm);
    doc = nem::io::distance_report_to_json(*report);
  }
  if (!a.mapping_out.empty()) {
    std::ostringstream text;
    nem::write_mapping_text(text, report->optimal_mapping);
    nem::io::write_text_file(a.mapping_out, text.str());
  }
  emit(a.out, doc.dump(2) + "\n");
  return 0;
}

// audit ---------------------------------------------------------------------

struct AuditArgs {
  std::string manifest, model, mode = "nem-r", out;
  std::size_t random = 12;
  std::size_t n = 32;
  std::size_t triples = 200;
  double r = nem::kPi / 2.0;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 1;
  bool strict = false;
};

int run_audit(const AuditArgs& a) {
  std::mt19937_64 root(a.seed);
  const std::uint64_t shape_seed = root();
  const std::uint64_t triple_seed = root();

  nem::io::Manifest manifest;
  if (!a.manifest.empty()) {
    manifest = nem::io::load_manifest(a.manifest);
  } else {
    std::uniform_real_distribution<double> speed(0.0, 2.0);
    for (auto& s : nem::random_shape_specs(a.random, shape_seed)) {
      s.attrs["velocity"] = speed(root);
      manifest.items.emplace_back(std::move(s));
    }
    manifest.resample = a.n;
  }
  if (!a.model.empty()) manifest.model = nem::io::load_cost_model(a.model);

  json doc;
  nem::AuditReport report;
  if (a.mode == "nem-r") {
    std::vector<nem::Contour> shapes;
    for (const auto& item : manifest.items) {
      shapes.push_back(std::holds_alternative<nem::ShapeSpec>(item)
                           ? nem::generate_shape(std::get<nem::ShapeSpec>(item))
                           : std::get<nem::Contour>(item));
    }
    nem::NemRBoundConfig cfg{a.r, a.n, a.triples, triple_seed, a.threads};
    report = nem::audit_nem_r_bound(shapes, cfg);
    doc = nem::io::audit_report_to_json(report);
    doc["mode"] = "nem-r";
    doc["r"] = a.r;
  } else if (a.mode == "nem-sigma") {
    const nem::Corpus corpus =
        nem::build_corpus(manifest.items, manifest.model, manifest.resample, manifest.cyclic);
    const auto& e = corpus.entries;
    const nem::PairTable table = nem::PairTable::tabulate(
        corpus.names(),
        [&](std::size_t x, std::size_t y) { return nem::corpus_distance(corpus, e[x].features, e[y].features); },
        a.threads);
    const auto triples = nem::sample_triples(table.size(), a.triples, triple_seed);
    report = nem::audit_table(table, triples, [&](std::size_t x, std::size_t z) {
      return nem::theta_surrogate_nem_sigma(e[x].features, e[z].features, corpus.model);
    });
    const auto est = nem::relaxation_modulus(table, triples);
    doc = nem::io::audit_report_to_json(report);
    doc["mode"] = "nem-sigma";
    doc["theta_hat"] = est.theta_hat ? json(*est.theta_hat) : json(nullptr);
    doc["model"] = nem::io::cost_model_to_json(corpus.model);
  } else {
    throw UsageError("unknown audit mode '" + a.mode + "' (expected nem-r or nem-sigma)");
  }
  emit(a.out, doc.dump(2) + "\n");
  if (a.strict && !report.passed()) return 1;
  return 0;
}

// retrieve ------------------------------------------------------------------

struct RetrieveArgs {
  std::string manifest, query, matrix_out;
  std::size_t k = 3;
  unsigned threads = 0;
};

int run_retrieve(const RetrieveArgs& a) {
  const auto manifest = nem::io::load_manifest(a.manifest);
  const nem::Corpus corpus =
      nem::build_corpus(manifest.items, manifest.model, manifest.resample, manifest.cyclic);
  if (!a.matrix_out.empty()) nem::save_matrix(a.matrix_out, nem::distance_matrix(corpus, a.threads));
  if (!a.query.empty()) {
    for (const auto& nb : nem::knn_query(corpus, nem::io::load_contour(a.query), a.k)) {
      std::cout << nb.name << "," << fmt17(nb.distance) << "\n";
    }
  }
  return 0;
}

// demo-robots ---------------------------------------------------------------

struct RobotArgs {
  std::string velocities = "0,0,0";
  std::string positions = "0,4,8";
  double t = 0.0;
  double r0 = 1.0;
  double r1 = 1.0;
  std::string out;
};

int run_robots(const RobotArgs& a) {
  const auto v = parse_triplet(a.velocities, "velocity");
  const auto x = parse_triplet(a.positions, "position");
  nem::SceneSpec scene = nem::SceneSpec::unit_circles({v[0], v[1], v[2]}, a.t);
  for (std::size_t k = 0; k < 3; ++k) scene.robots[k].x = x[k];
  scene.r0 = a.r0;
  scene.r1 = a.r1;
  const nem::RobotReport rep = nem::robot_scenario(scene);

  auto table_json = [](const nem::PairTable& t) {
    json rows = json::object();
    for (std::size_t i = 0; i < t.size(); ++i) {
      json row = json::object();
      for (std::size_t j = 0; j < t.size(); ++j) row[t.names()[j]] = t(i, j);
      rows[t.names()[i]] = row;
    }
    return rows;
  };
  json doc = {{"t", a.t},
              {"overlapping", rep.overlapping},
              {"boundary_gap", table_json(rep.gap)},
              {"boundary_gap_audit", nem::io::audit_report_to_json(rep.gap_audit)},
              {"nem_sigma", table_json(rep.nem)},
              {"nem_sigma_audit", nem::io::audit_report_to_json(rep.nem_sigma_audit)},
              {"theta_hat", rep.theta_hat ? json(*rep.theta_hat) : json(nullptr)}};

  const auto& g = rep.gap;
  std::cerr << "boundary gap: G-B " << g(0, 1) << " + B-P " << g(1, 2) << " vs G-P " << g(0, 2)
            << (g(0, 2) > g(0, 1) + g(1, 2) ? "  (triangle inequality fails)\n" : "\n");
  emit(a.out, doc.dump(2) + "\n");
  return 0;
}

// sweep-r -------------------------------------------------------------------

struct SweepArgs {
  std::string x, y, range = "0:2:0.25", out;
  std::size_t resample = 0;
};

int run_sweep(const SweepArgs& a) {
  const nem::FeatureSequence xs = prepare(nem::io::load_contour(a.x), a.resample);
  const nem::FeatureSequence ys = prepare(nem::io::load_contour(a.y), a.resample);
  std::string csv = "r,total,stretch_part,distance_part\n";
  for (const double r : parse_range(a.range)) {
    if (r < 0.0) throw UsageError("r must be >= 0");
    const auto rep = nem::nem_r(xs, ys, r);
    csv += fmt17(r) + "," + fmt17(rep.total) + "," + fmt17(rep.stretch_part) + "," +
           fmt17(rep.distance_part) + "\n";
  }
  emit(a.out, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elastic shape matching (NEM, NEM_r, NEM_sigma) and metric audits"};
  app.require_subcommand(1);
  bool show_kernels = false;
  app.add_flag("--kernels", show_kernels, "Print the selected kernel variant to stderr");

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a synthetic contour");
  g->add_option("--kind", gen.kind, "circle|ellipse|regular_polygon|superellipse|perturbed")
      ->capture_default_str();
  g->add_option("--name", gen.spec.name, "Contour name (defaults to the kind)");
  g->add_option("--radius", gen.spec.radius)->capture_default_str();
  g->add_option("--a", gen.spec.a)->capture_default_str();
  g->add_option("--b", gen.spec.b)->capture_default_str();
  g->add_option("--sides", gen.spec.sides)->capture_default_str();
  g->add_option("--exponent", gen.spec.exponent)->capture_default_str();
  g->add_option("--noise", gen.spec.noise)->capture_default_str();
  g->add_option("--rotation", gen.spec.rotation, "Radians")->capture_default_str();
  g->add_option("--n", gen.spec.point_count, "Point count")->capture_default_str();
  g->add_option("--seed", gen.spec.seed)->capture_default_str();
  g->add_option("--velocity", gen.velocity, "Per-contour velocity attribute");
  g->add_option("--out", gen.out, "Output path (stdout when omitted)");

  DistArgs dist;
  auto* d = app.add_subcommand("dist", "NEM_sigma between two contour files");
  d->add_option("--x", dist.x)->required()->check(CLI::ExistingFile);
  d->add_option("--y", dist.y)->required()->check(CLI::ExistingFile);
  d->add_option("--model", dist.model, "Cost model JSON (default: angular, r = 1)")
      ->check(CLI::ExistingFile);
  d->add_option("--resample", dist.resample, "Uniform resample count (0 = as given)");
  d->add_flag("--cyclic", dist.cyclic, "Minimize over start points of --y");
  d->add_option("--mapping", dist.mapping_out, "Write the optimal mapping as text");
  d->add_option("--out", dist.out, "Report path (stdout when omitted)");

  AuditArgs audit;
  auto* au = app.add_subcommand("audit", "Audit metric axioms and relaxed triangle bounds");
  au->add_option("--mode", audit.mode, "nem-r | nem-sigma")->capture_default_str();
  au->add_option("--manifest", audit.manifest, "Corpus manifest JSON")->check(CLI::ExistingFile);
  au->add_option("--random", audit.random, "Seeded random shapes when no manifest")
      ->capture_default_str();
  au->add_option("--model", audit.model, "Cost model JSON (nem-sigma)")->check(CLI::ExistingFile);
  au->add_option("--r", audit.r, "Stretch penalty (nem-r)")->capture_default_str();
  au->add_option("--n", audit.n, "Resample count")->capture_default_str();
  au->add_option("--triples", audit.triples, "Sampled triples above 12 shapes")->capture_default_str();
  au->add_option("--seed", audit.seed)->capture_default_str();
  au->add_option("--threads", audit.threads)->capture_default_str();
  au->add_flag("--strict", audit.strict, "Exit 1 when the audit finds violations");
  au->add_option("--out", audit.out, "Report path (stdout when omitted)");

  RetrieveArgs ret;
  auto* re = app.add_subcommand("retrieve", "k-NN query and distance matrix over a corpus");
  re->add_option("--manifest", ret.manifest)->required()->check(CLI::ExistingFile);
  re->add_option("--query", ret.query)->check(CLI::ExistingFile);
  re->add_option("--k", ret.k)->capture_default_str();
  re->add_option("--matrix", ret.matrix_out, "Write the distance matrix CSV");
  re->add_option("--threads", ret.threads, "0 = hardware concurrency");

  RobotArgs robots;
  auto* ro = app.add_subcommand("demo-robots", "Three collinear robots: boundary gap vs NEM_sigma");
  ro->add_option("--velocities", robots.velocities, "v_green,v_blue,v_purple")->capture_default_str();
  ro->add_option("--positions", robots.positions, "x_green,x_blue,x_purple")->capture_default_str();
  ro->add_option("--t", robots.t, "Time")->capture_default_str();
  ro->add_option("--r0", robots.r0)->capture_default_str();
  ro->add_option("--r1", robots.r1)->capture_default_str();
  ro->add_option("--out", robots.out, "Report path (stdout when omitted)");

  SweepArgs sweep;
  auto* sw = app.add_subcommand("sweep-r", "NEM_r totals over a range of r, as CSV");
  sw->add_option("--x", sweep.x)->required()->check(CLI::ExistingFile);
  sw->add_option("--y", sweep.y)->required()->check(CLI::ExistingFile);
  sw->add_option("--r", sweep.range, "start:stop:step")->capture_default_str();
  sw->add_option("--resample", sweep.resample, "Uniform resample count (0 = as given)");
  sw->add_option("--out", sweep.out, "CSV path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (show_kernels) std::cerr << "kernels: " << nem::kernels::active().name << "\n";

  try {
    if (*g) return run_gen(gen);
    if (*d) return run_dist(dist);
    if (*au) return run_audit(audit);
    if (*re) return run_retrieve(ret);
    if (*ro) return run_robots(robots);
    if (*sw) return run_sweep(sweep);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
