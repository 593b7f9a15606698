#include "cat0/json_io.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cat0 {

using nlohmann::json;

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const char ch : bytes) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  if (!in.good() && !in.eof())
    throw std::runtime_error("error while reading " + path);
  return out.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("error while writing " + path);
}

std::string file_checksum(const std::string& path) {
  return fnv1a_hex(read_file(path));
}

namespace {

json matrix_to_rows(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (long i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (long j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd rows_to_matrix(const json& rows, const char* what) {
  if (!rows.is_array() || rows.empty())
    throw std::runtime_error(std::string(what) + ": expected non-empty array");
  const long nr = static_cast<long>(rows.size());
  const long nc = static_cast<long>(rows[0].size());
  Eigen::MatrixXd m(nr, nc);
  for (long i = 0; i < nr; ++i) {
    if (static_cast<long>(rows[i].size()) != nc)
      throw std::runtime_error(std::string(what) + ": ragged rows");
    for (long j = 0; j < nc; ++j) m(i, j) = rows[i][j].get<double>();
  }
  return m;
}

json vector_to_array(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (long i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Eigen::VectorXd array_to_vector(const json& arr, const char* what) {
  if (!arr.is_array())
    throw std::runtime_error(std::string(what) + ": expected array");
  Eigen::VectorXd v(arr.size());
  for (long i = 0; i < v.size(); ++i) v[i] = arr[i].get<double>();
  return v;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& err) {
    throw std::runtime_error(std::string("malformed JSON: ") + err.what());
  }
}

}  // namespace

FiniteMetricSpace space_from_json(const std::string& text) {
  const json doc = parse(text);
  if (!doc.contains("labels") || !doc.contains("dist"))
    throw std::runtime_error("space file needs \"labels\" and \"dist\"");
  std::vector<std::string> labels =
      doc.at("labels").get<std::vector<std::string>>();
  Eigen::MatrixXd dist = rows_to_matrix(doc.at("dist"), "dist");
  return FiniteMetricSpace::from_matrix(std::move(labels), std::move(dist));
}

std::string space_to_json(const FiniteMetricSpace& space) {
  json doc;
  doc["labels"] = space.labels();
  doc["dist"] = matrix_to_rows(space.dist());
  return doc.dump(2) + "\n";
}

ConfigFile config_from_json(const std::string& text) {
  const json doc = parse(text);
  if (!doc.contains("labels") || !doc.contains("points"))
    throw std::runtime_error("config file needs \"labels\" and \"points\"");
  std::vector<std::string> labels =
      doc.at("labels").get<std::vector<std::string>>();
  // stored one point per row; columns internally
  const Eigen::MatrixXd by_rows = rows_to_matrix(doc.at("points"), "points");
  ConfigFile out{EuclideanConfig::create(std::move(labels),
                                         by_rows.transpose()),
                 std::nullopt};
  if (doc.contains("epsilon")) out.epsilon = doc.at("epsilon").get<double>();
  return out;
}

std::string config_to_json(const EuclideanConfig& config,
                           std::optional<double> epsilon) {
  json doc;
  doc["labels"] = config.labels;
  doc["points"] = matrix_to_rows(config.points.transpose());
  if (epsilon) doc["epsilon"] = *epsilon;
  return doc.dump(2) + "\n";
}

FiniteMetricSpace load_space(const std::string& path) {
  const std::string text = read_file(path);
  const json doc = parse(text);
  if (doc.contains("dist")) return space_from_json(text);
  if (doc.contains("points")) {
    const ConfigFile file = config_from_json(text);
    FiniteMetricSpace space = file.config.to_metric_space();
    if (file.epsilon && *file.epsilon != 0.0)
      space = space.perturb_pair("z0", "z1", *file.epsilon);
    return space;
  }
  throw std::runtime_error(path + ": neither a space nor a config file");
}

ComparisonGraph graph_from_json(const std::string& text) {
  const json doc = parse(text);
  if (!doc.contains("n") || !doc.contains("edges"))
    throw std::runtime_error("graph file needs \"n\" and \"edges\"");
  const int n = doc.at("n").get<int>();
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : doc.at("edges")) {
    if (!e.is_array() || e.size() != 2)
      throw std::runtime_error("graph edges must be [u,v] pairs");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return ComparisonGraph::create(n, std::move(edges));
}

std::string graph_to_json(const ComparisonGraph& graph) {
  json doc;
  doc["n"] = graph.size();
  json edges = json::array();
  for (const auto& [u, v] : graph.edges()) edges.push_back({u, v});
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

std::string certificate_to_json(const ComparisonGraph& graph,
                                const FarkasCertificate& cert) {
  json doc;
  doc["n"] = graph.size();
  auto weight_list = [](const std::vector<std::pair<int, int>>& pairs,
                        const Eigen::VectorXd& w) {
    json list = json::array();
    for (size_t k = 0; k < pairs.size(); ++k)
      list.push_back(
          {{"u", pairs[k].first}, {"v", pairs[k].second}, {"w", w[k]}});
    return list;
  };
  doc["edge_weights"] = weight_list(graph.edges(), cert.edge_weights);
  doc["nonedge_weights"] =
      weight_list(graph.non_edges(), cert.nonedge_weights);
  return doc.dump(2) + "\n";
}

FarkasCertificate certificate_from_json(const ComparisonGraph& graph,
                                        const std::string& text) {
  const json doc = parse(text);
  if (doc.contains("n") && doc.at("n").get<int>() != graph.size())
    throw std::runtime_error("certificate is for a different vertex count");
  auto read_weights = [&doc](const char* key,
                             const std::vector<std::pair<int, int>>& pairs) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(pairs.size());
    if (!doc.contains(key)) return w;
    for (const auto& entry : doc.at(key)) {
      const std::pair<int, int> pr{
          std::min(entry.at("u").get<int>(), entry.at("v").get<int>()),
          std::max(entry.at("u").get<int>(), entry.at("v").get<int>())};
      const auto it = std::find(pairs.begin(), pairs.end(), pr);
      if (it == pairs.end())
        throw std::runtime_error("certificate weight on an unexpected pair");
      w[it - pairs.begin()] = entry.at("w").get<double>();
    }
    return w;
  };
  FarkasCertificate cert;
  cert.edge_weights = read_weights("edge_weights", graph.edges());
  cert.nonedge_weights = read_weights("nonedge_weights", graph.non_edges());
  return cert;
}

std::string gram_to_json(const GramSolution& solution) {
  json doc;
  doc["gram"] = matrix_to_rows(solution.gram);
  doc["embedding"] = matrix_to_rows(solution.embedding);
  doc["max_violation"] = solution.max_violation;
  return doc.dump(2) + "\n";
}

std::string ann_to_json(const AnnCertificate& cert) {
  json doc;
  doc["c"] = vector_to_array(cert.c);
  doc["p"] = matrix_to_rows(cert.p);
  doc["q"] = matrix_to_rows(cert.q);
  json a = json::array(), b = json::array();
  for (const auto& mat : cert.A) a.push_back(matrix_to_rows(mat));
  for (const auto& mat : cert.B) b.push_back(matrix_to_rows(mat));
  doc["A"] = std::move(a);
  doc["B"] = std::move(b);
  return doc.dump(2) + "\n";
}

AnnCertificate ann_from_json(const std::string& text) {
  const json doc = parse(text);
  AnnCertificate cert;
  cert.c = array_to_vector(doc.at("c"), "c");
  cert.p = rows_to_matrix(doc.at("p"), "p");
  cert.q = rows_to_matrix(doc.at("q"), "q");
  for (const auto& mat : doc.at("A"))
    cert.A.push_back(rows_to_matrix(mat, "A"));
  for (const auto& mat : doc.at("B"))
    cert.B.push_back(rows_to_matrix(mat, "B"));
  return cert;
}

std::string trace_to_json(const ProofTrace& trace) {
  json doc;
  doc["params"] = {{"a", trace.params.a},
                   {"b", trace.params.b},
                   {"c", trace.params.c},
                   {"s", trace.params.s},
                   {"t", trace.params.t}};
  json steps = json::array();
  for (const auto& step : trace.steps) {
    json entry = {{"step", step.id}, {"residual", step.residual}};
    if (step.skipped) entry["skipped"] = true;
    steps.push_back(std::move(entry));
  }
  doc["steps"] = std::move(steps);
  doc["wz_sq"] = trace.wz_sq;
  doc["margin"] = trace.margin;
  return doc.dump(2) + "\n";
}

}  // namespace cat0
