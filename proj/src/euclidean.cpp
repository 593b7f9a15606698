#include "cat0/euclidean.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "cat0/tolerances.hpp"

namespace cat0 {

EuclideanConfig EuclideanConfig::create(std::vector<std::string> labels,
                                        Eigen::MatrixXd points) {
  if (static_cast<Eigen::Index>(labels.size()) != points.cols())
    throw std::invalid_argument("EuclideanConfig: labels/points count mismatch");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second)
      throw std::invalid_argument("EuclideanConfig: duplicate label " + l);
  return {std::move(labels), std::move(points)};
}

int EuclideanConfig::index_of(std::string_view label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end())
    throw std::out_of_range("unknown label: " + std::string(label));
  return static_cast<int>(it - labels.begin());
}

double EuclideanConfig::diameter() const {
  double diam = 0.0;
  for (int i = 0; i < size(); ++i)
    for (int j = i + 1; j < size(); ++j)
      diam = std::max(diam, (points.col(i) - points.col(j)).norm());
  return diam;
}

FiniteMetricSpace EuclideanConfig::to_metric_space() const {
  return FiniteMetricSpace::from_euclidean(points, labels);
}

namespace {

void check_measure(const EuclideanConfig& config, const WeightedMeasure& mu) {
  if (mu.support.size() != static_cast<size_t>(mu.weights.size()))
    throw std::invalid_argument("WeightedMeasure: support/weights mismatch");
  if (mu.support.empty())
    throw std::invalid_argument("WeightedMeasure: empty support");
  std::unordered_set<int> seen;
  for (int i : mu.support) {
    if (i < 0 || i >= config.size())
      throw std::out_of_range("WeightedMeasure: support index out of range");
    if (!seen.insert(i).second)
      throw std::invalid_argument("WeightedMeasure: repeated support index");
  }
  if (mu.weights.minCoeff() < 0.0)
    throw std::invalid_argument("WeightedMeasure: negative weight");
  if (std::abs(mu.weights.sum() - 1.0) > tol::cert)
    throw std::invalid_argument("WeightedMeasure: weights do not sum to 1");
}

}  // namespace

Eigen::VectorXd barycenter(const EuclideanConfig& config,
                           const WeightedMeasure& mu) {
  check_measure(config, mu);
  Eigen::VectorXd bar = Eigen::VectorXd::Zero(config.dim());
  for (size_t i = 0; i < mu.support.size(); ++i)
    bar += mu.weights[static_cast<Eigen::Index>(i)] *
           config.points.col(mu.support[i]);
  return bar;
}

double variance_residual(const EuclideanConfig& config,
                         const WeightedMeasure& mu, const Eigen::VectorXd& w) {
  const Eigen::VectorXd z = barycenter(config, mu);
  if (w.size() != z.size())
    throw std::invalid_argument("variance_residual: witness dimension mismatch");
  double residual = -(w - z).squaredNorm();
  for (size_t i = 0; i < mu.support.size(); ++i) {
    const auto x = config.points.col(mu.support[i]);
    const double p = mu.weights[static_cast<Eigen::Index>(i)];
    residual += p * (w - x).squaredNorm() - p * (z - x).squaredNorm();
  }
  return residual;
}

double double_variance_residual(const EuclideanConfig& config,
                                const WeightedMeasure& mu,
                                const WeightedMeasure& nu) {
  const Eigen::VectorXd bm = barycenter(config, mu);
  const Eigen::VectorXd bn = barycenter(config, nu);
  double residual = -(bm - bn).squaredNorm();
  for (size_t i = 0; i < mu.support.size(); ++i) {
    const double p = mu.weights[static_cast<Eigen::Index>(i)];
    const auto x = config.points.col(mu.support[i]);
    residual -= p * (bm - x).squaredNorm();
    for (size_t j = 0; j < nu.support.size(); ++j)
      residual += p * nu.weights[static_cast<Eigen::Index>(j)] *
                  (x - config.points.col(nu.support[j])).squaredNorm();
  }
  for (size_t j = 0; j < nu.support.size(); ++j)
    residual -= nu.weights[static_cast<Eigen::Index>(j)] *
                (bn - config.points.col(nu.support[j])).squaredNorm();
  return residual;
}

double thick_prop_residual(const Eigen::VectorXd& x0, const Eigen::VectorXd& x1,
                           const Eigen::VectorXd& y, double a, double s) {
  if (!(0.0 <= a && a <= s && s <= 1.0))
    throw std::invalid_argument("thick_prop_residual: need 0 <= a <= s <= 1");
  const Eigen::VectorXd xs = (1 - s) * x0 + s * x1;
  const Eigen::VectorXd xa = (1 - a) * x0 + a * x1;
  return a * (y - xs).squaredNorm() - s * (y - xa).squaredNorm() +
         (s - a) * (y - x0).squaredNorm() -
         s * a * (s - a) * (x0 - x1).squaredNorm();
}

ProofTrace proof_trace(const Eigen::MatrixXd& pts, const SixPointParams& p) {
  validate_params(p);
  if (pts.cols() != 6)
    throw std::invalid_argument("proof_trace: expected six points");
  const double a = p.a, b = p.b, c = p.c, s = p.s, t = p.t;
  const auto x0 = pts.col(0), x1 = pts.col(1), y0 = pts.col(2), y1 = pts.col(3),
             z0 = pts.col(4), z1 = pts.col(5);
  auto sq = [](const auto& u, const auto& v) { return (u - v).squaredNorm(); };

  const Eigen::VectorXd z = (1 - c) * z0 + c * z1;
  const Eigen::VectorXd w = (1 - t) * y1 + (1 - s) * t * x0 + s * t * x1;
  const Eigen::VectorXd x = (1 - s) * x0 + s * x1;
  const Eigen::VectorXd xp = (1 - a) * x0 + a * x1;

  // Right-hand side shared by the first and fourth steps.
  const double rhs_dv = (1 - t) * (1 - c) * sq(y1, z0) +
                        (1 - s) * t * (1 - c) * sq(x0, z0) +
                        s * t * (1 - c) * sq(x1, z0) + (1 - t) * c * sq(y1, z1) +
                        (1 - s) * t * c * sq(x0, z1) + s * t * c * sq(x1, z1);
  const double w_spread =
      (1 - t) * sq(w, y1) + (1 - s) * t * sq(w, x0) + s * t * sq(w, x1);
  const double z_spread = (1 - c) * sq(z, z0) + c * sq(z, z1);

  ProofTrace trace;
  trace.params = p;
  trace.wz_sq = sq(w, z);
  trace.w = w;
  trace.z = z;
  auto push = [&trace](const char* id, double residual) {
    trace.steps.push_back({id, residual, false});
  };
  auto push_skipped = [&trace](const char* id) {
    trace.steps.push_back({id, 0.0, true});
  };

  push("3.1", rhs_dv - (sq(w, z) + w_spread + z_spread));
  push("3.2", w_spread -
                  ((1 - t) * t * sq(y1, x) + (1 - s) * s * t * sq(x0, x1)));
  push("3.3", z_spread - (1 - c) * c * sq(z0, z1));
  push("3.4", rhs_dv - (sq(w, z) + (1 - t) * t * sq(y1, x) +
                        (1 - s) * s * t * sq(x0, x1) + (1 - c) * c * sq(z0, z1)));
  push("3.5", b * sq(y1, xp) - (1 - b) * b * sq(y0, y1) + (1 - b) * sq(y0, xp));
  push("3.6", (1 - a) * sq(y0, x0) + a * sq(y0, x1) -
                  (1 - a) * a * sq(x0, x1) - sq(y0, xp));

  constexpr double kTiny = 1e-12;  // below this the displayed divisions blow up
  if (b >= kTiny) {
    push("3.7",
         sq(y1, xp) -
             ((1 - b) * sq(y0, y1) - ((1 - a) * (1 - b) / b) * sq(y0, x0) -
              (a * (1 - b) / b) * sq(y0, x1) +
              ((1 - a) * a * (1 - b) / b) * sq(x0, x1)));
  } else {
    push_skipped("3.7");
  }
  if (a >= kTiny) {
    push("3.8", sq(y1, x) - ((s / a) * sq(y1, xp) - ((s - a) / a) * sq(y1, x0) +
                             s * (s - a) * sq(x0, x1)));
  } else {
    push_skipped("3.8");
  }
  if (a >= kTiny && b >= kTiny) {
    push("3.9",
         sq(y1, x) -
             ((s * ((1 - a) * (1 - b) + (s - a) * b) / b) * sq(x0, x1) +
              (s * (1 - b) / a) * sq(y0, y1) -
              (s * (1 - a) * (1 - b) / (a * b)) * sq(y0, x0) -
              (s * (1 - b) / b) * sq(y0, x1) - ((s - a) / a) * sq(y1, x0)));
  } else {
    push_skipped("3.9");
  }

  // Final step from the division-free coefficient expansion; for a = 0 or
  // b = 0 this is exactly the degenerate three-point reduction.
  const auto coeffs = sixpoint_coeffs(p);
  double margin = 0.0;
  for (size_t k = 0; k < coeffs.size(); ++k)
    margin += coeffs[k] * sq(pts.col(kSixPointPairs[k].first),
                             pts.col(kSixPointPairs[k].second));
  trace.margin = margin;
  push("3.10", margin - a * b * trace.wz_sq);
  return trace;
}

ProofTrace proof_trace(const EuclideanConfig& config,
                       const std::array<std::string, 6>& labeling,
                       const SixPointParams& p) {
  Eigen::MatrixXd pts(config.dim(), 6);
  for (size_t i = 0; i < labeling.size(); ++i)
    pts.col(static_cast<Eigen::Index>(i)) =
        config.points.col(config.index_of(labeling[i]));
  return proof_trace(pts, p);
}

}  // namespace cat0
