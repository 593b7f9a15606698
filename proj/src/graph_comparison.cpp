#include "cat0/graph_comparison.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cat0 {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::pair<int, int> ordered(int u, int v) {
  return u < v ? std::make_pair(u, v) : std::make_pair(v, u);
}

}  // namespace

ComparisonGraph::ComparisonGraph(int n, std::vector<std::pair<int, int>> edges)
    : n_(n), edges_(std::move(edges)), adj_(static_cast<size_t>(n) * n, 0) {
  for (const auto& [u, v] : edges_) adj_[u * n_ + v] = adj_[v * n_ + u] = 1;
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v)
      if (!adj_[u * n_ + v]) non_edges_.emplace_back(u, v);
}

ComparisonGraph ComparisonGraph::create(int n,
                                        std::vector<std::pair<int, int>> edges) {
  if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
  for (auto& e : edges) {
    if (e.first < 0 || e.first >= n || e.second < 0 || e.second >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (e.first == e.second) throw std::invalid_argument("loops not allowed");
    e = ordered(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("duplicate edge");
  return ComparisonGraph(n, std::move(edges));
}

bool ComparisonGraph::has_edge(int u, int v) const {
  if (u < 0 || u >= n_ || v < 0 || v >= n_ || u == v) return false;
  return adj_[u * n_ + v] != 0;
}

bool ComparisonGraph::non_edges_perfect_matching() const {
  if (n_ % 2 != 0 || static_cast<int>(non_edges_.size()) != n_ / 2)
    return false;
  std::vector<char> seen(n_, 0);
  for (const auto& [u, v] : non_edges_) {
    if (seen[u] || seen[v]) return false;
    seen[u] = seen[v] = 1;
  }
  return true;
}

ComparisonGraph graph_cycle(int n) {
  if (n < 4) throw std::invalid_argument("graph_cycle needs n >= 4");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(n);
  for (int i = 0; i < n; ++i) edges.push_back(ordered(i, (i + 1) % n));
  return ComparisonGraph::create(n, std::move(edges));
}

ComparisonGraph graph_octahedron() {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < 6; ++u)
    for (int v = u + 1; v < 6; ++v)
      if (!(v == u + 1 && u % 2 == 0)) edges.emplace_back(u, v);
  return ComparisonGraph::create(6, std::move(edges));
}

std::string to_string(FeasibilityStatus status) {
  switch (status) {
    case FeasibilityStatus::kFeasible:
      return "Feasible";
    case FeasibilityStatus::kCertifiedInfeasible:
      return "CertifiedInfeasible";
    default:
      return "Unknown";
  }
}

Eigen::MatrixXd graph_targets(const FiniteMetricSpace& space,
                              const ComparisonGraph& graph,
                              std::span<const std::string> map) {
  const int n = graph.size();
  std::vector<int> idx(n);
  if (map.empty()) {
    if (space.size() != n)
      throw std::invalid_argument(
          "graph_targets: empty map needs space size == vertex count");
    for (int u = 0; u < n; ++u) idx[u] = u;
  } else {
    if (static_cast<int>(map.size()) != n)
      throw std::invalid_argument("graph_targets: map size != vertex count");
    for (int u = 0; u < n; ++u) idx[u] = space.index_of(map[u]);
  }
  Eigen::MatrixXd t(n, n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) t(u, v) = space.dist(idx[u], idx[v]);
  return t;
}

QuadraticForm certificate_form(const ComparisonGraph& graph,
                               const FarkasCertificate& cert) {
  const auto& edges = graph.edges();
  const auto& nonedges = graph.non_edges();
  if (cert.edge_weights.size() != static_cast<long>(edges.size()) ||
      cert.nonedge_weights.size() != static_cast<long>(nonedges.size()))
    throw std::invalid_argument("certificate_form: weight count mismatch");
  QuadraticForm form = QuadraticForm::zero(graph.size());
  for (size_t e = 0; e < edges.size(); ++e)
    form.add_pair(edges[e].first, edges[e].second, cert.edge_weights[e]);
  for (size_t f = 0; f < nonedges.size(); ++f)
    form.add_pair(nonedges[f].first, nonedges[f].second,
                  -cert.nonedge_weights[f]);
  return form;
}

double certificate_value(const ComparisonGraph& graph,
                         const FarkasCertificate& cert,
                         const Eigen::MatrixXd& targets) {
  const auto& edges = graph.edges();
  const auto& nonedges = graph.non_edges();
  double value = 0.0;
  for (size_t e = 0; e < edges.size(); ++e) {
    const double d = targets(edges[e].first, edges[e].second);
    value += cert.edge_weights[e] * d * d;
  }
  for (size_t f = 0; f < nonedges.size(); ++f) {
    const double d = targets(nonedges[f].first, nonedges[f].second);
    value -= cert.nonedge_weights[f] * d * d;
  }
  const double wsum = cert.edge_weights.sum() + cert.nonedge_weights.sum();
  return wsum > 0.0 ? value / wsum : 0.0;
}

bool verify_certificate(const ComparisonGraph& graph,
                        const FarkasCertificate& cert,
                        const Eigen::MatrixXd& targets) {
  if (cert.edge_weights.size() != static_cast<long>(graph.edges().size()) ||
      cert.nonedge_weights.size() !=
          static_cast<long>(graph.non_edges().size()))
    return false;
  if ((cert.edge_weights.size() > 0 && cert.edge_weights.minCoeff() < 0.0) ||
      (cert.nonedge_weights.size() > 0 &&
       cert.nonedge_weights.minCoeff() < 0.0))
    return false;
  const double wsum = cert.edge_weights.sum() + cert.nonedge_weights.sum();
  if (!(wsum > 0.0)) return false;
  if (!laplacian_psd_check(certificate_form(graph, cert))) return false;
  const double maxd = targets.maxCoeff();
  return certificate_value(graph, cert, targets) <
         -tol::margin * maxd * maxd;
}

bool verify_certificate(const ComparisonGraph& graph,
                        const FarkasCertificate& cert,
                        const FiniteMetricSpace& space,
                        std::span<const std::string> map) {
  return verify_certificate(graph, cert, graph_targets(space, graph, map));
}

bool verify_gram(const ComparisonGraph& graph, const Eigen::MatrixXd& gram,
                 const Eigen::MatrixXd& targets, double tol_feas) {
  const int n = graph.size();
  if (gram.rows() != n || gram.cols() != n) return false;
  const Eigen::MatrixXd g = 0.5 * (gram + gram.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
  const double ref = std::max(1.0, g.cwiseAbs().maxCoeff());
  if (es.eigenvalues().minCoeff() < -tol::eig * ref) return false;

  const double scale = targets.size() > 0 ? targets.maxCoeff() : 0.0;
  const double tau = tol_feas * scale * scale;
  auto sq = [&g](int u, int v) {
    return g(u, u) + g(v, v) - 2.0 * g(u, v);
  };
  for (const auto& [u, v] : graph.edges()) {
    const double d = targets(u, v);
    const double val = sq(u, v);
    if (val > d * d + tau || val < -tau) return false;
  }
  for (const auto& [u, v] : graph.non_edges()) {
    const double d = targets(u, v);
    if (sq(u, v) < d * d - tau) return false;
  }
  return true;
}

bool verify_gram(const ComparisonGraph& graph, const Eigen::MatrixXd& gram,
                 const FiniteMetricSpace& space,
                 std::span<const std::string> map, double tol_feas) {
  return verify_gram(graph, gram, graph_targets(space, graph, map), tol_feas);
}

namespace {

// Weights on graph pairs read off a quadratic form under a role -> vertex
// assignment.  Fails (nullopt) when a positive coefficient lands on a
// non-edge or a negative one on an edge.
template <size_t R, size_t P>
std::optional<FarkasCertificate> assignment_certificate(
    const ComparisonGraph& graph, const std::array<int, R>& vr,
    const std::array<std::pair<int, int>, P>& pairs,
    const std::array<double, P>& coeffs) {
  const auto& edges = graph.edges();
  const auto& nonedges = graph.non_edges();
  auto index_in = [](const std::vector<std::pair<int, int>>& list,
                     std::pair<int, int> key) {
    const auto it = std::find(list.begin(), list.end(), key);
    return it == list.end() ? -1 : static_cast<int>(it - list.begin());
  };
  FarkasCertificate cert;
  cert.edge_weights = Eigen::VectorXd::Zero(edges.size());
  cert.nonedge_weights = Eigen::VectorXd::Zero(nonedges.size());
  for (size_t k = 0; k < P; ++k) {
    const auto key = ordered(vr[pairs[k].first], vr[pairs[k].second]);
    const double w = coeffs[k];
    if (graph.has_edge(key.first, key.second)) {
      if (w < 0.0) return std::nullopt;
      cert.edge_weights[index_in(edges, key)] += w;
    } else {
      if (w > 0.0) return std::nullopt;
      const int f = index_in(nonedges, key);
      if (f < 0) return std::nullopt;  // degenerate pair (repeated vertex)
      cert.nonedge_weights[f] += -w;
    }
  }
  return cert;
}

std::array<double, 6> boxtimes_pair_coeffs(const BoxtimesParams& p) {
  const double s = p.s, t = p.t;
  return {(1 - s) * (1 - t), s * (1 - t),  s * t,
          (1 - s) * t,       -s * (1 - s), -t * (1 - t)};
}

constexpr std::array<std::pair<int, int>, 6> kBoxtimesPairs = {
    {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {1, 3}}};

std::optional<FarkasCertificate> sixpoint_certificate_search(
    const ComparisonGraph& graph, const Eigen::MatrixXd& targets,
    const Eigen::MatrixXd& t2, int jobs) {
  // Cheap first try: the unconstrained search witness, when its three
  // role pairs happen to land on the non-edges.
  try {
    std::vector<std::string> labels;
    for (int v = 0; v < 6; ++v) labels.push_back("v" + std::to_string(v));
    const FiniteMetricSpace tspace =
        FiniteMetricSpace::from_matrix(labels, targets);
    const SixPointWitness witness = sixpoint_search(tspace, jobs);
    if (witness.margin < 0.0) {
      std::array<int, 6> vr{};
      for (int r = 0; r < 6; ++r)
        vr[r] = tspace.index_of(witness.labeling[r]);
      auto cert = assignment_certificate(graph, vr, kSixPointPairs,
                                         sixpoint_coeffs(witness.params));
      if (cert && verify_certificate(graph, *cert, targets)) return cert;
    }
  } catch (const std::exception&) {
    // targets need not form a metric space (repeated vertices); the
    // assignment sweep below does not care.
  }

  // Full sweep: all 48 assignments of the role pairs (x0,x1), (y0,y1),
  // (z0,z1) onto the matched non-edges.
  const auto& m = graph.non_edges();
  double best_margin = kInf;
  std::array<int, 6> best_vr{};
  SixPointParams best_params;
  std::array<int, 3> p3 = {0, 1, 2};
  do {
    for (int bits = 0; bits < 8; ++bits) {
      std::array<int, 6> vr{};
      for (int r = 0; r < 3; ++r) {
        const auto& ne = m[p3[r]];
        const bool flip = (bits >> r) & 1;
        vr[2 * r] = flip ? ne.second : ne.first;
        vr[2 * r + 1] = flip ? ne.first : ne.second;
      }
      std::array<double, 12> pair_sq{};
      for (size_t k = 0; k < 12; ++k)
        pair_sq[k] = t2(vr[kSixPointPairs[k].first],
                        vr[kSixPointPairs[k].second]);
      const SixPointMinResult res = sixpoint_min_sq(pair_sq);
      if (res.margin < best_margin) {
        best_margin = res.margin;
        best_vr = vr;
        best_params = res.params;
      }
    }
  } while (std::next_permutation(p3.begin(), p3.end()));

  if (best_margin < 0.0) {
    auto cert = assignment_certificate(graph, best_vr, kSixPointPairs,
                                       sixpoint_coeffs(best_params));
    if (cert && verify_certificate(graph, *cert, targets)) return cert;
  }
  return std::nullopt;
}

std::optional<FarkasCertificate> boxtimes_certificate_search(
    const ComparisonGraph& graph, const Eigen::MatrixXd& targets,
    const Eigen::MatrixXd& t2) {
  const auto& m = graph.non_edges();  // two disjoint pairs
  double best_margin = kInf;
  std::array<int, 4> best_vr{};
  BoxtimesParams best_params;
  for (int which = 0; which < 2; ++which) {
    const auto& xz = m[which];
    const auto& yw = m[1 - which];
    for (int bits = 0; bits < 4; ++bits) {
      // roles x,y,z,w
      const std::array<int, 4> vr = {
          (bits & 1) ? xz.second : xz.first,
          (bits & 2) ? yw.second : yw.first,
          (bits & 1) ? xz.first : xz.second,
          (bits & 2) ? yw.first : yw.second,
      };
      std::array<double, 6> sq{};
      for (int k = 0; k < 6; ++k)
        sq[k] = t2(vr[kBoxtimesPairs[k].first], vr[kBoxtimesPairs[k].second]);
      const BoxtimesMinResult res = boxtimes_min_sq(sq);
      if (res.margin < best_margin) {
        best_margin = res.margin;
        best_vr = vr;
        best_params = res.params;
      }
    }
  }
  if (best_margin < 0.0) {
    auto cert = assignment_certificate(graph, best_vr, kBoxtimesPairs,
                                       boxtimes_pair_coeffs(best_params));
    if (cert && verify_certificate(graph, *cert, targets)) return cert;
  }
  return std::nullopt;
}

Eigen::MatrixXd weights_laplacian(const ComparisonGraph& graph,
                                  const Eigen::VectorXd& y,
                                  const Eigen::VectorXd& z) {
  FarkasCertificate cert{y, z};
  return signed_laplacian(certificate_form(graph, cert));
}

double min_eigenvalue(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// Projected subgradient ascent on the certificate value; the PSD side
// condition is re-established each round by shrinking the non-edge weights.
std::optional<FarkasCertificate> ascent_certificate_search(
    const ComparisonGraph& graph, const Eigen::MatrixXd& targets,
    const Eigen::MatrixXd& t2) {
  const auto& edges = graph.edges();
  const auto& nonedges = graph.non_edges();
  const long ne = static_cast<long>(edges.size());
  const long nf = static_cast<long>(nonedges.size());
  if (nf == 0) return std::nullopt;  // value can never be negative

  Eigen::VectorXd d2e(ne), d2f(nf);
  for (long e = 0; e < ne; ++e) d2e[e] = t2(edges[e].first, edges[e].second);
  for (long f = 0; f < nf; ++f)
    d2f[f] = t2(nonedges[f].first, nonedges[f].second);
  const double scale = std::max(t2.maxCoeff(), 1e-300);

  Eigen::VectorXd y = Eigen::VectorXd::Ones(ne);
  Eigen::VectorXd z = Eigen::VectorXd::Ones(nf);
  std::optional<FarkasCertificate> best;
  double best_value = 0.0;

  for (int it = 0; it < 200; ++it) {
    // Largest shrink factor keeping the signed Laplacian PSD; beta = 0 is
    // always admissible (plain nonnegative graph Laplacian).
    const Eigen::MatrixXd ly = weights_laplacian(
        graph, y, Eigen::VectorXd::Zero(nf));
    const Eigen::MatrixXd lz =
        weights_laplacian(graph, Eigen::VectorXd::Zero(ne), z) * -1.0;
    const double ref =
        std::max(1.0, ly.cwiseAbs().maxCoeff() + lz.cwiseAbs().maxCoeff());
    auto admissible = [&](double beta) {
      return min_eigenvalue(ly - beta * lz) >= -1e-12 * ref;
    };
    double beta = 0.0;
    if (admissible(1.0)) {
      beta = 1.0;
    } else {
      double lo = 0.0, hi = 1.0;
      for (int b = 0; b < 50; ++b) {
        const double mid = 0.5 * (lo + hi);
        (admissible(mid) ? lo : hi) = mid;
      }
      beta = lo;
    }
    z *= beta;

    const double wsum = y.sum() + z.sum();
    if (wsum <= 1e-300) break;
    y /= wsum;
    z /= wsum;

    FarkasCertificate cand{y, z};
    const double value = certificate_value(graph, cand, targets);
    if (value < best_value && verify_certificate(graph, cand, targets)) {
      best = cand;
      best_value = value;
    }

    const double eta = 0.5 / std::sqrt(it + 1.0);
    y = (y - eta * d2e / scale).cwiseMax(0.0);
    z += eta * d2f / scale;
  }
  return best;
}

Eigen::MatrixXd project_psd(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (m + m.transpose()));
  const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

Eigen::MatrixXd embedding_from_gram(const Eigen::MatrixXd& gram) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
  const double lmax = std::max(lam.maxCoeff(), 1e-300);
  std::vector<int> keep;
  for (int i = 0; i < lam.size(); ++i)
    if (lam[i] > 1e-14 * lmax) keep.push_back(i);
  if (keep.empty()) return Eigen::MatrixXd::Zero(1, gram.rows());
  Eigen::MatrixXd emb(keep.size(), gram.rows());
  for (size_t k = 0; k < keep.size(); ++k)
    emb.row(k) =
        std::sqrt(lam[keep[k]]) * es.eigenvectors().col(keep[k]).transpose();
  return emb;
}

struct PairCon {
  int u, v;
  double lo, hi;
};

struct SolveOutcome {
  Eigen::MatrixXd gram;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

double constraint_residual(const Eigen::MatrixXd& g,
                           const std::vector<PairCon>& cons) {
  double r = 0.0;
  for (const auto& c : cons) {
    const double val = g(c.u, c.u) + g(c.v, c.v) - 2.0 * g(c.u, c.v);
    r = std::max(r, std::max(c.lo - val, val - c.hi));
  }
  return std::max(r, -min_eigenvalue(g));
}

SolveOutcome dykstra_solve(const ComparisonGraph& graph,
                           const Eigen::MatrixXd& t2, int max_iter) {
  const int n = graph.size();
  std::vector<PairCon> cons;
  for (const auto& [u, v] : graph.edges())
    cons.push_back({u, v, 0.0, t2(u, v)});
  for (const auto& [u, v] : graph.non_edges())
    cons.push_back({u, v, t2(u, v), kInf});
  const double scale = std::max(t2.maxCoeff(), 1e-300);
  const double stop = 0.4 * tol::feas * scale;

  // classical scaling start: exact when the targets are Euclidean
  const Eigen::MatrixXd j =
      Eigen::MatrixXd::Identity(n, n) -
      Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  Eigen::MatrixXd g = -0.5 * j * t2 * j;
  g = 0.5 * (g + g.transpose()).eval();

  SolveOutcome out;
  out.residual = constraint_residual(g, cons);
  if (out.residual <= stop) {
    out.gram = g;
    out.converged = true;
    out.residual = std::max(out.residual, 0.0);
    return out;
  }

  Eigen::MatrixXd psd_corr = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd pair_corr = Eigen::VectorXd::Zero(cons.size());
  for (int it = 1; it <= max_iter; ++it) {
    const Eigen::MatrixXd y = g + psd_corr;
    g = project_psd(y);
    psd_corr = y - g;
    for (size_t k = 0; k < cons.size(); ++k) {
      const auto& c = cons[k];
      const double val_y =
          g(c.u, c.u) + g(c.v, c.v) - 2.0 * g(c.u, c.v) + 4.0 * pair_corr[k];
      const double target = std::clamp(val_y, c.lo, c.hi);
      const double step = (target - val_y) / 4.0;
      const double delta = pair_corr[k] + step;
      g(c.u, c.u) += delta;
      g(c.v, c.v) += delta;
      g(c.u, c.v) -= delta;
      g(c.v, c.u) -= delta;
      pair_corr[k] = -step;
    }
    out.iterations = it;
    if (it % 5 == 0 || it == max_iter) {
      out.residual = constraint_residual(g, cons);
      if (out.residual <= stop) {
        out.converged = true;
        break;
      }
    }
  }
  out.gram = g;
  out.residual = std::max(out.residual, 0.0);
  return out;
}

double gram_violation(const ComparisonGraph& graph, const Eigen::MatrixXd& g,
                      const Eigen::MatrixXd& t2) {
  std::vector<PairCon> cons;
  for (const auto& [u, v] : graph.edges())
    cons.push_back({u, v, 0.0, t2(u, v)});
  for (const auto& [u, v] : graph.non_edges())
    cons.push_back({u, v, t2(u, v), kInf});
  return std::max(constraint_residual(g, cons), 0.0);
}

}  // namespace

FarkasCertificate certificate_from_sixpoint(const SixPointParams& params) {
  validate_params(params);
  const ComparisonGraph octa = graph_octahedron();
  const std::array<int, 6> identity = {0, 1, 2, 3, 4, 5};
  auto cert = assignment_certificate(octa, identity, kSixPointPairs,
                                     sixpoint_coeffs(params));
  if (!cert)
    throw std::logic_error("certificate_from_sixpoint: sign pattern broken");
  if (!laplacian_psd_check(certificate_form(octa, *cert)))
    throw std::logic_error("certificate_from_sixpoint: signed form not PSD");
  return *cert;
}

FarkasCertificate certificate_from_boxtimes(const BoxtimesParams& params) {
  if (!(params.s >= 0.0 && params.s <= 1.0 && params.t >= 0.0 &&
        params.t <= 1.0))
    throw std::invalid_argument("certificate_from_boxtimes: s,t in [0,1]");
  const ComparisonGraph cyc = graph_cycle(4);
  const std::array<int, 4> identity = {0, 1, 2, 3};
  auto cert = assignment_certificate(cyc, identity, kBoxtimesPairs,
                                     boxtimes_pair_coeffs(params));
  if (!cert)
    throw std::logic_error("certificate_from_boxtimes: sign pattern broken");
  if (!laplacian_psd_check(certificate_form(cyc, *cert)))
    throw std::logic_error("certificate_from_boxtimes: signed form not PSD");
  return *cert;
}

FeasibilityResult feasibility_targets(const ComparisonGraph& graph,
                                      const Eigen::MatrixXd& targets,
                                      int max_iterations, int jobs) {
  const int n = graph.size();
  if (targets.rows() != n || targets.cols() != n)
    throw std::invalid_argument("feasibility: target matrix size mismatch");
  const Eigen::MatrixXd t2 = targets.array().square().matrix();

  FeasibilityResult result;
  const SolveOutcome outcome = dykstra_solve(graph, t2, max_iterations);
  result.iterations = outcome.iterations;
  result.residual = outcome.residual;

  const Eigen::MatrixXd gram = project_psd(outcome.gram);
  if (verify_gram(graph, gram, targets, tol::feas)) {
    GramSolution sol;
    sol.gram = gram;
    sol.embedding = embedding_from_gram(gram);
    sol.max_violation = gram_violation(graph, gram, t2);
    result.status = FeasibilityStatus::kFeasible;
    result.gram = std::move(sol);
    return result;
  }

  std::optional<FarkasCertificate> cert;
  if (graph.non_edges_perfect_matching()) {
    if (n == 6) cert = sixpoint_certificate_search(graph, targets, t2, jobs);
    if (!cert && n == 4)
      cert = boxtimes_certificate_search(graph, targets, t2);
  }
  if (!cert) cert = ascent_certificate_search(graph, targets, t2);

  if (cert) {
    result.status = FeasibilityStatus::kCertifiedInfeasible;
    result.certificate_value = certificate_value(graph, *cert, targets);
    result.certificate = std::move(cert);
  }
  return result;
}

FeasibilityResult feasibility(const FiniteMetricSpace& space,
                              const ComparisonGraph& graph,
                              std::span<const std::string> map,
                              int max_iterations, int jobs) {
  return feasibility_targets(graph, graph_targets(space, graph, map),
                             max_iterations, jobs);
}

FeasibilityResult cycl_check(const FiniteMetricSpace& space, int n,
                             std::span<const std::string> map,
                             int max_iterations, int jobs) {
  return feasibility(space, graph_cycle(n), map, max_iterations, jobs);
}

FeasibilityResult o3_check(const FiniteMetricSpace& space,
                           std::span<const std::string> map,
                           int max_iterations, int jobs) {
  return feasibility(space, graph_octahedron(), map, max_iterations, jobs);
}

}  // namespace cat0
