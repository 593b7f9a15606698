#pragma once

#include <Eigen/Core>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cat0/boxtimes.hpp"
#include "cat0/quadratic_form.hpp"
#include "cat0/sixpoint.hpp"
#include "cat0/tolerances.hpp"

namespace cat0 {

/// Simple undirected graph on vertices 0..n-1.  Pairs outside the edge list
/// are non-edges and carry the opposite constraint in the comparison
/// problem: edges bound distances from above, non-edges from below.
class ComparisonGraph {
 public:
  /// Validates vertex ranges and rejects loops and duplicate edges.
  static ComparisonGraph create(int n, std::vector<std::pair<int, int>> edges);

  int size() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<std::pair<int, int>>& non_edges() const {
    return non_edges_;
  }
  bool has_edge(int u, int v) const;

  /// True when the non-edges are pairwise vertex-disjoint and cover every
  /// vertex (the structure exploited by the certificate fast paths).
  bool non_edges_perfect_matching() const;

 private:
  ComparisonGraph(int n, std::vector<std::pair<int, int>> edges);

  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::pair<int, int>> non_edges_;
  std::vector<char> adj_;
};

/// Cycle 0-1-...-(n-1)-0; requires n >= 4.
ComparisonGraph graph_cycle(int n);

/// K6 minus the perfect matching {(0,1),(2,3),(4,5)}; vertex order
/// x0,x1,y0,y1,z0,z1.
ComparisonGraph graph_octahedron();

/// Nonnegative weights refuting comparison feasibility: the signed form
/// (+y on edges, -z on non-edges) is PSD as a signed Laplacian -- so it is
/// nonnegative on every Hilbert configuration -- yet strictly negative on
/// the target distances.
struct FarkasCertificate {
  Eigen::VectorXd edge_weights;     // aligned with graph.edges()
  Eigen::VectorXd nonedge_weights;  // aligned with graph.non_edges()
};

struct GramSolution {
  Eigen::MatrixXd gram;       // n x n, PSD
  Eigen::MatrixXd embedding;  // dim x n; gram = embedding^T embedding
  double max_violation = 0.0;
};

enum class FeasibilityStatus { kFeasible, kCertifiedInfeasible, kUnknown };

std::string to_string(FeasibilityStatus status);

struct FeasibilityResult {
  FeasibilityStatus status = FeasibilityStatus::kUnknown;
  std::optional<GramSolution> gram;              // when feasible
  std::optional<FarkasCertificate> certificate;  // when certified infeasible
  double certificate_value = 0.0;  // weight-normalized value on the targets
  double residual = 0.0;           // final solver residual
  int iterations = 0;
};

/// Target distance matrix t(u,v) = d(map[u], map[v]).  The map assigns a
/// point label to every vertex (repeats allowed); an empty map stands for
/// the identity assignment and then requires space.size() == graph.size().
Eigen::MatrixXd graph_targets(const FiniteMetricSpace& space,
                              const ComparisonGraph& graph,
                              std::span<const std::string> map);

/// The certificate's signed form on graph.size() indices.
QuadraticForm certificate_form(const ComparisonGraph& graph,
                               const FarkasCertificate& cert);

/// sum_E y d^2 - sum_N z d^2 divided by the total weight.
double certificate_value(const ComparisonGraph& graph,
                         const FarkasCertificate& cert,
                         const Eigen::MatrixXd& targets);

/// Exact acceptance check: weights nonnegative and not all zero, signed
/// Laplacian PSD, normalized value < -tol::margin * max target^2.
bool verify_certificate(const ComparisonGraph& graph,
                        const FarkasCertificate& cert,
                        const Eigen::MatrixXd& targets);

bool verify_certificate(const ComparisonGraph& graph,
                        const FarkasCertificate& cert,
                        const FiniteMetricSpace& space,
                        std::span<const std::string> map);

/// Exact acceptance check for a claimed solution: gram PSD within tol::eig
/// and every pair constraint within tol_feas * max target^2.
bool verify_gram(const ComparisonGraph& graph, const Eigen::MatrixXd& gram,
                 const Eigen::MatrixXd& targets, double tol_feas = tol::feas);

bool verify_gram(const ComparisonGraph& graph, const Eigen::MatrixXd& gram,
                 const FiniteMetricSpace& space,
                 std::span<const std::string> map,
                 double tol_feas = tol::feas);

/// Certificate for graph_octahedron() read off the six-point form at
/// `params`: the three negative coefficients become non-edge weights, the
/// rest edge weights.  PSD of the signed Laplacian is asserted; whether the
/// value is negative depends on the targets and is left to
/// verify_certificate.
FarkasCertificate certificate_from_sixpoint(const SixPointParams& params);

/// Certificate for graph_cycle(4) read off the quadrilateral form.
FarkasCertificate certificate_from_boxtimes(const BoxtimesParams& params);

/// Decide one comparison instance.  Alternating projections (a Dykstra
/// variant) search for a Gram solution; Feasible is returned only after
/// verify_gram passes.  Otherwise a certificate search runs (special forms
/// on matched non-edges first, then projected subgradient ascent) and only
/// a certificate passing verify_certificate yields CertifiedInfeasible.
FeasibilityResult feasibility(const FiniteMetricSpace& space,
                              const ComparisonGraph& graph,
                              std::span<const std::string> map,
                              int max_iterations = 5000, int jobs = 1);

/// Same decision from a raw target matrix.
FeasibilityResult feasibility_targets(const ComparisonGraph& graph,
                                      const Eigen::MatrixXd& targets,
                                      int max_iterations = 5000, int jobs = 1);

FeasibilityResult cycl_check(const FiniteMetricSpace& space, int n,
                             std::span<const std::string> map,
                             int max_iterations = 5000, int jobs = 1);

FeasibilityResult o3_check(const FiniteMetricSpace& space,
                           std::span<const std::string> map,
                           int max_iterations = 5000, int jobs = 1);

}  // namespace cat0
