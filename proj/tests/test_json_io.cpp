#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <json.hpp>
#include <random>

#include "cat0/ann.hpp"
#include "cat0/euclidean.hpp"
#include "cat0/graph_comparison.hpp"
#include "cat0/json_io.hpp"
#include "cat0/lebedeva.hpp"
#include "test_helpers.hpp"

using nlohmann::json;

namespace {

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "cat0_json_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("space serialization round-trips") {
  std::mt19937_64 rng(91u);
  const auto space = testhelp::perturbed_metric(5, 3, 0.1, rng);
  const auto copy = cat0::space_from_json(cat0::space_to_json(space));
  CHECK(copy.labels() == space.labels());
  CHECK((copy.dist() - space.dist()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("malformed input raises a parse error") {
  CHECK_THROWS_WITH_AS((void)cat0::space_from_json("not json"),
                       doctest::Contains("malformed JSON"),
                       std::runtime_error);
}

TEST_CASE("configuration files carry points row-wise plus epsilon") {
  const std::string text = R"({
    "labels": ["u", "v", "w"],
    "points": [[0, 0], [1, 0], [0, 2]],
    "epsilon": 0.25
  })";
  const cat0::ConfigFile file = cat0::config_from_json(text);
  CHECK(file.config.dim() == 2);
  CHECK(file.config.points(1, 2) == 2.0);
  REQUIRE(file.epsilon.has_value());
  CHECK(*file.epsilon == 0.25);
  // Round trip.
  const auto again =
      cat0::config_from_json(cat0::config_to_json(file.config, 0.25));
  CHECK(again.config.labels == file.config.labels);
  CHECK((again.config.points - file.config.points).norm() == 0.0);
}

TEST_CASE("load_space dispatches on the file contents") {
  const auto dir = scratch_dir();
  std::mt19937_64 rng(92u);

  const auto space = testhelp::perturbed_metric(4, 3, 0.1, rng);
  const auto metric_path = (dir / "space.json").string();
  cat0::write_file(metric_path, cat0::space_to_json(space));
  CHECK(cat0::load_space(metric_path).dist(0, 3) == space.dist(0, 3));

  // A configuration file with a perturbation applies it to (z0, z1).
  const auto config = cat0::equality_config({0.3, 0.45, 0.55, 0.6, 0.5});
  const auto config_path = (dir / "config.json").string();
  cat0::write_file(config_path,
                   cat0::config_to_json(config.to_euclidean(),
                                        config.epsilon()));
  const auto loaded = cat0::load_space(config_path);
  const auto flat = cat0::FiniteMetricSpace::from_euclidean(
      config.points(), {"x0", "x1", "y0", "y1", "z0", "z1"});
  const int z0 = loaded.index_of("z0"), z1 = loaded.index_of("z1");
  CHECK(loaded.dist(z0, z1) ==
        doctest::Approx(flat.dist(z0, z1) + config.epsilon()).epsilon(1e-12));

  CHECK_THROWS_AS((void)cat0::load_space((dir / "missing.json").string()),
                  std::runtime_error);
}

TEST_CASE("graph serialization round-trips") {
  const auto o3 = cat0::graph_octahedron();
  const auto copy = cat0::graph_from_json(cat0::graph_to_json(o3));
  CHECK(copy.size() == 6);
  CHECK(copy.edges() == o3.edges());
  CHECK(copy.non_edges() == o3.non_edges());
}

TEST_CASE("certificate serialization aligns weights with pairs") {
  const auto c4 = cat0::graph_cycle(4);
  cat0::FarkasCertificate cert;
  cert.edge_weights = Eigen::VectorXd::LinSpaced(4, 1.0, 4.0);
  cert.nonedge_weights = Eigen::VectorXd::LinSpaced(2, 5.0, 6.0);
  const std::string text = cat0::certificate_to_json(c4, cert);
  const auto copy = cat0::certificate_from_json(c4, text);
  CHECK((copy.edge_weights - cert.edge_weights).norm() == 0.0);
  CHECK((copy.nonedge_weights - cert.nonedge_weights).norm() == 0.0);
  // A weight on a pair the graph does not know is rejected.
  json doc = json::parse(text);
  doc["edge_weights"][0]["u"] = 0;
  doc["edge_weights"][0]["v"] = 2;  // (0,2) is a non-edge of the cycle
  CHECK_THROWS_AS((void)cat0::certificate_from_json(c4, doc.dump()),
                  std::runtime_error);
}

TEST_CASE("ann certificates round-trip") {
  const auto cert = cat0::ann_sample(4, 2, 123);
  const auto copy = cat0::ann_from_json(cat0::ann_to_json(cert));
  CHECK((copy.c - cert.c).norm() == 0.0);
  CHECK((copy.p - cert.p).norm() == 0.0);
  CHECK((copy.q - cert.q).norm() == 0.0);
  for (int k = 0; k < 2; ++k) {
    CHECK((copy.A[static_cast<size_t>(k)] - cert.A[static_cast<size_t>(k)])
              .norm() == 0.0);
    CHECK((copy.B[static_cast<size_t>(k)] - cert.B[static_cast<size_t>(k)])
              .norm() == 0.0);
  }
}

TEST_CASE("trace serialization lists the ten steps in order") {
  const auto config = cat0::equality_config({0.3, 0.45, 0.55, 0.6, 0.5});
  const cat0::SixPointParams p{0.3, 0.45, 0.55, 0.6, 0.5};
  const auto trace = cat0::proof_trace(config.points(), p);
  const json doc = json::parse(cat0::trace_to_json(trace));
  REQUIRE(doc["steps"].size() == 10);
  CHECK(doc["steps"][0]["step"] == "3.1");
  CHECK(doc["steps"][9]["step"] == "3.10");
  CHECK(doc["params"]["a"] == doctest::Approx(0.3));
  CHECK(doc.contains("margin"));
  CHECK(doc.contains("wz_sq"));
}

TEST_CASE("checksums are stable and content-sensitive") {
  const auto dir = scratch_dir();
  const auto path = (dir / "checksum.txt").string();
  cat0::write_file(path, "some bytes");
  const std::string first = cat0::file_checksum(path);
  CHECK(first == cat0::file_checksum(path));
  CHECK(first.size() == 16);
  cat0::write_file(path, "other bytes");
  CHECK(first != cat0::file_checksum(path));
}
