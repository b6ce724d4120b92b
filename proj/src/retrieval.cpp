#include "nem/retrieval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "nem/elastic.hpp"

namespace nem {

std::vector<std::string> Corpus::names() const {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.contour.name());
  return out;
}

Corpus build_corpus(const std::vector<CorpusItem>& items, const CostModel& model,
                    std::size_t resample_n, bool cyclic) {
  if (resample_n < 3) throw std::invalid_argument("resample count must be at least 3");
  model.validate();
  Corpus corpus{{}, model, resample_n, cyclic};
  std::set<std::string> seen;
  for (const CorpusItem& item : items) {
    Contour raw = std::holds_alternative<ShapeSpec>(item) ? generate_shape(std::get<ShapeSpec>(item))
                                                          : std::get<Contour>(item);
    if (!seen.insert(raw.name()).second) {
      throw std::invalid_argument("duplicate corpus name '" + raw.name() + "'");
    }
    Contour sampled = resample_uniform(raw, resample_n);
    FeatureSequence features = to_features(sampled);
    corpus.entries.push_back({std::move(sampled), std::move(features)});
  }
  return corpus;
}

FeatureSequence prepare_query(const Corpus& corpus, const Contour& query) {
  return to_features(resample_uniform(query, corpus.resample_n));
}

double corpus_distance(const Corpus& corpus, const FeatureSequence& a, const FeatureSequence& b) {
  if (corpus.cyclic) return nem_sigma_cyclic(a, b, corpus.model).report.total;
  return nem_sigma_total(a, b, corpus.model);
}

DistanceMatrix distance_matrix(const Corpus& corpus, unsigned threads) {
  const std::size_t n = corpus.entries.size();
  if (n == 0) throw std::invalid_argument("distance matrix of an empty corpus");
  for (const auto& e : corpus.entries) {
    require_features(corpus.model, e.features, e.features);
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

  DistanceMatrix out{corpus.names(), std::vector<double>(n * n, 0.0)};
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next.fetch_add(1); k < pairs.size(); k = next.fetch_add(1)) {
      const auto [i, j] = pairs[k];
      const double d = corpus_distance(corpus, corpus.entries[i].features, corpus.entries[j].features);
      out.values[i * n + j] = d;
      out.values[j * n + i] = d;
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, pairs.size())));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  return out;
}

std::vector<Neighbor> knn_query(const Corpus& corpus, const Contour& query, std::size_t k) {
  if (corpus.entries.empty()) throw std::invalid_argument("knn query on an empty corpus");
  if (k < 1 || k > corpus.entries.size()) {
    throw std::invalid_argument("k must lie in [1, " + std::to_string(corpus.entries.size()) + "]");
  }
  const FeatureSequence q = prepare_query(corpus, query);
  std::vector<Neighbor> all;
  all.reserve(corpus.entries.size());
  for (const auto& e : corpus.entries) {
    all.push_back({e.contour.name(), corpus_distance(corpus, q, e.features)});
  }
  std::sort(all.begin(), all.end(), [](const Neighbor& a, const Neighbor& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.name < b.name;
  });
  all.resize(k);
  return all;
}

std::string matrix_to_csv(const DistanceMatrix& m) {
  std::string out = "name";
  for (const auto& name : m.names) out += "," + name;
  out += "\n";
  char buf[32];
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += m.names[i];
    for (std::size_t j = 0; j < m.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m.at(i, j));
      out += ",";
      out += buf;
    }
    out += "\n";
  }
  return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_cell(const std::string& cell) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(cell, &used);
  } catch (const std::exception&) {
    throw std::runtime_error("matrix cell '" + cell + "' is not a number");
  }
  if (used != cell.size()) throw std::runtime_error("matrix cell '" + cell + "' is not a number");
  return v;
}

}  // namespace

DistanceMatrix matrix_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rows.push_back(split_csv_line(line));
  }
  if (rows.empty() || rows[0].empty() || rows[0][0] != "name") {
    throw std::runtime_error("matrix CSV must start with a 'name,...' header");
  }
  DistanceMatrix m;
  m.names.assign(rows[0].begin() + 1, rows[0].end());
  const std::size_t n = m.names.size();
  if (rows.size() != n + 1) {
    throw std::runtime_error("matrix CSV has " + std::to_string(rows.size() - 1) + " rows for " +
                             std::to_string(n) + " columns");
  }
  m.values.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = rows[i + 1];
    if (row.size() != n + 1) {
      throw std::runtime_error("matrix CSV row " + std::to_string(i + 1) + " has " +
                               std::to_string(row.size()) + " cells, expected " +
                               std::to_string(n + 1));
    }
    if (row[0] != m.names[i]) {
      throw std::runtime_error("matrix CSV row label '" + row[0] + "' does not match column '" +
                               m.names[i] + "'");
    }
    for (std::size_t j = 0; j < n; ++j) m.values[i * n + j] = parse_cell(row[j + 1]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::fabs(m.at(i, j) - m.at(j, i)) > 1e-9) {
        throw std::runtime_error("matrix CSV is not symmetric at (" + m.names[i] + ", " +
                                 m.names[j] + ")");
      }
    }
  }
  return m;
}

void save_matrix(const std::filesystem::path& path, const DistanceMatrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << matrix_to_csv(m);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

DistanceMatrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return matrix_from_csv(ss.str());
}

}  // namespace nem
