#include <doctest.h>

#include <random>

#include "cat0/graph_comparison.hpp"
#include "cat0/lebedeva.hpp"
#include "test_helpers.hpp"

using cat0::ComparisonGraph;
using cat0::FeasibilityStatus;
using cat0::FiniteMetricSpace;

namespace {

FiniteMetricSpace unit_square() {
  const double r2 = std::sqrt(2.0);
  Eigen::MatrixXd d(4, 4);
  d << 0, 1, r2, 1, 1, 0, 1, r2, r2, 1, 0, 1, 1, r2, 1, 0;
  return FiniteMetricSpace::from_matrix({"a", "b", "c", "d"}, d);
}

FiniteMetricSpace stretched_square() {
  Eigen::MatrixXd d(4, 4);
  const double diag = 1.95;
  d << 0, 1, diag, 1, 1, 0, 1, diag, diag, 1, 0, 1, 1, diag, 1, 0;
  return FiniteMetricSpace::from_matrix({"a", "b", "c", "d"}, d);
}

// Both long distances sit on one diagonal matching: the space passes the
// cycle comparison seated one way and fails it seated the other way.
FiniteMetricSpace two_long_pairs() {
  Eigen::MatrixXd d(4, 4);
  d << 0, 1.8, 1, 1, 1.8, 0, 1, 1, 1, 1, 0, 1.8, 1, 1, 1.8, 0;
  return FiniteMetricSpace::from_matrix({"a", "b", "c", "d"}, d);
}

}  // namespace

TEST_CASE("graph construction and canned graphs") {
  const ComparisonGraph c4 = cat0::graph_cycle(4);
  CHECK(c4.size() == 4);
  CHECK(c4.edges().size() == 4);
  CHECK(c4.non_edges().size() == 2);
  CHECK(c4.has_edge(0, 1));
  CHECK(c4.has_edge(3, 0));
  CHECK(!c4.has_edge(0, 2));
  CHECK(c4.non_edges_perfect_matching());

  const ComparisonGraph c5 = cat0::graph_cycle(5);
  CHECK(c5.non_edges().size() == 5);
  CHECK(!c5.non_edges_perfect_matching());
  CHECK_THROWS_AS((void)cat0::graph_cycle(3), std::invalid_argument);

  const ComparisonGraph o3 = cat0::graph_octahedron();
  CHECK(o3.size() == 6);
  CHECK(o3.edges().size() == 12);
  REQUIRE(o3.non_edges().size() == 3);
  CHECK(o3.non_edges()[0] == std::pair<int, int>{0, 1});
  CHECK(o3.non_edges()[1] == std::pair<int, int>{2, 3});
  CHECK(o3.non_edges()[2] == std::pair<int, int>{4, 5});
  CHECK(o3.non_edges_perfect_matching());

  CHECK_THROWS_AS((void)ComparisonGraph::create(3, {{0, 0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)ComparisonGraph::create(3, {{0, 5}}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)ComparisonGraph::create(3, {{0, 1}, {1, 0}}),
                  std::invalid_argument);
}

TEST_CASE("targets follow the vertex map") {
  const auto space = unit_square();
  const auto c4 = cat0::graph_cycle(4);
  const std::vector<std::string> map{"c", "a", "d", "b"};
  const Eigen::MatrixXd t = cat0::graph_targets(space, c4, map);
  CHECK(t(0, 1) == space.dist(2, 0));
  CHECK(t(2, 3) == space.dist(3, 1));
  // Identity map needs matching sizes.
  CHECK_NOTHROW((void)cat0::graph_targets(space, c4, {}));
  const auto c5 = cat0::graph_cycle(5);
  CHECK_THROWS_AS((void)cat0::graph_targets(space, c5, {}),
                  std::invalid_argument);
}

TEST_CASE("certificate value on the unit square is balanced") {
  const auto c4 = cat0::graph_cycle(4);
  cat0::FarkasCertificate cert;
  cert.edge_weights = Eigen::VectorXd::Ones(4);
  cert.nonedge_weights = Eigen::VectorXd::Ones(2);
  const Eigen::MatrixXd targets =
      cat0::graph_targets(unit_square(), c4, {});
  // 4 * 1^2 on edges minus 2 * 2 on the diagonals, over total weight 6.
  CHECK(cat0::certificate_value(c4, cert, targets) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(!cat0::verify_certificate(c4, cert, targets));
}

TEST_CASE("quadrilateral certificate refutes the stretched square") {
  const auto c4 = cat0::graph_cycle(4);
  const auto cert = cat0::certificate_from_boxtimes({0.5, 0.5});
  CHECK(cert.edge_weights.minCoeff() >= 0.0);
  CHECK(cert.nonedge_weights.minCoeff() >= 0.0);
  CHECK(cat0::laplacian_psd_check(cat0::certificate_form(c4, cert)));
  CHECK(cat0::verify_certificate(c4, cert, stretched_square(), {}));
  CHECK(!cat0::verify_certificate(c4, cert, unit_square(), {}));
}

TEST_CASE("six-point certificate is sound for any valid parameters") {
  std::mt19937_64 rng(81u);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto o3 = cat0::graph_octahedron();
  for (int rep = 0; rep < 100; ++rep) {
    const double s = unit(rng);
    const cat0::SixPointParams p{unit(rng) * s, unit(rng), unit(rng), s,
                                 unit(rng)};
    const auto cert = cat0::certificate_from_sixpoint(p);
    CHECK(cert.edge_weights.minCoeff() >= 0.0);
    CHECK(cert.nonedge_weights.minCoeff() >= 0.0);
    CHECK(cat0::laplacian_psd_check(cat0::certificate_form(o3, cert)));
  }
  // Degenerate corner: no weight ends up on the first non-edge pair.
  const auto reduced = cat0::certificate_from_sixpoint({0.0, 0.5, 0.5, 0.5, 0.5});
  CHECK(cat0::laplacian_psd_check(cat0::certificate_form(o3, reduced)));
}

TEST_CASE("six-point certificate refutes the perturbed configuration") {
  const cat0::SixPointParams p{0.3, 0.45, 0.55, 0.6, 0.5};
  const auto space = cat0::d_epsilon(cat0::equality_config(p));
  const auto cert = cat0::certificate_from_sixpoint(p);
  CHECK(cat0::verify_certificate(cat0::graph_octahedron(), cert, space, {}));
}

TEST_CASE("gram verification accepts the exact embedding and spots fraud") {
  Eigen::MatrixXd pts(2, 4);
  pts << 0, 1, 1, 0, 0, 0, 1, 1;
  const Eigen::MatrixXd gram = pts.transpose() * pts;
  const auto c4 = cat0::graph_cycle(4);
  const Eigen::MatrixXd targets = cat0::graph_targets(unit_square(), c4, {});
  CHECK(cat0::verify_gram(c4, gram, targets));
  Eigen::MatrixXd bad = gram;
  bad(0, 0) += 1.0;  // stretches the edges at vertex 0
  CHECK(!cat0::verify_gram(c4, bad, targets));
}

TEST_CASE("feasibility on a Euclidean square is verified feasible") {
  const auto res = cat0::feasibility(unit_square(), cat0::graph_cycle(4), {});
  REQUIRE(res.status == FeasibilityStatus::kFeasible);
  REQUIRE(res.gram.has_value());
  const auto c4 = cat0::graph_cycle(4);
  const Eigen::MatrixXd targets = cat0::graph_targets(unit_square(), c4, {});
  CHECK(cat0::verify_gram(c4, res.gram->gram, targets));
  // The reported embedding reproduces the gram matrix.
  const Eigen::MatrixXd recon =
      res.gram->embedding.transpose() * res.gram->embedding;
  CHECK((recon - res.gram->gram).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("feasibility certifies the stretched square infeasible") {
  const auto res = cat0::feasibility(stretched_square(), cat0::graph_cycle(4), {});
  REQUIRE(res.status == FeasibilityStatus::kCertifiedInfeasible);
  REQUIRE(res.certificate.has_value());
  CHECK(res.certificate_value < 0.0);
  CHECK(cat0::verify_certificate(cat0::graph_cycle(4), *res.certificate,
                                 stretched_square(), {}));
}

TEST_CASE("statuses are mutually exclusive evidence") {
  // Whatever the outcome, the attached evidence must verify.
  std::mt19937_64 rng(82u);
  for (int rep = 0; rep < 20; ++rep) {
    const auto space = testhelp::perturbed_metric(4, 3, 0.2, rng);
    const auto c4 = cat0::graph_cycle(4);
    const auto res = cat0::feasibility(space, c4, {});
    if (res.status == FeasibilityStatus::kFeasible) {
      REQUIRE(res.gram.has_value());
      CHECK(!res.certificate.has_value());
      CHECK(cat0::verify_gram(c4, res.gram->gram,
                              cat0::graph_targets(space, c4, {})));
    } else if (res.status == FeasibilityStatus::kCertifiedInfeasible) {
      REQUIRE(res.certificate.has_value());
      CHECK(!res.gram.has_value());
      CHECK(cat0::verify_certificate(c4, *res.certificate, space, {}));
    }
  }
}

TEST_CASE("seating matters: one matching passes, the other is refuted") {
  const auto space = two_long_pairs();
  // Long pairs seated on cycle edges: a unit square witnesses feasibility,
  // since edges may shrink and the short diagonals only need length 1.
  const std::vector<std::string> good{"a", "b", "c", "d"};
  CHECK(cat0::cycl_check(space, 4, good).status == FeasibilityStatus::kFeasible);
  // Long pairs seated on the diagonals: four short edges cannot hold two
  // expanded diagonals, and the quadrilateral inequality certifies it.
  const std::vector<std::string> bad{"a", "c", "b", "d"};
  CHECK(cat0::cycl_check(space, 4, bad).status ==
        FeasibilityStatus::kCertifiedInfeasible);
}

TEST_CASE("octahedron comparison separates flat from perturbed") {
  const cat0::SixPointParams p{0.25, 0.5, 0.5, 0.5, 0.5};
  const auto config = cat0::equality_config(p);
  const auto flat = cat0::FiniteMetricSpace::from_euclidean(
      config.points(), {"x0", "x1", "y0", "y1", "z0", "z1"});
  CHECK(cat0::o3_check(flat, {}).status == FeasibilityStatus::kFeasible);
  CHECK(cat0::o3_check(cat0::d_epsilon(config), {}).status ==
        FeasibilityStatus::kCertifiedInfeasible);
}

TEST_CASE("feasibility is deterministic across job counts") {
  const auto space = stretched_square();
  const auto one = cat0::feasibility(space, cat0::graph_cycle(4), {}, 5000, 1);
  const auto four = cat0::feasibility(space, cat0::graph_cycle(4), {}, 5000, 4);
  CHECK(one.status == four.status);
  CHECK(one.certificate_value == doctest::Approx(four.certificate_value));
}
