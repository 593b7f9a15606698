#include "cat0/metric_space.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "cat0/tolerances.hpp"

namespace cat0 {

std::string ValidationReport::summary() const {
  if (ok) return "ok";
  std::ostringstream os;
  os << violations.size() << " violation(s):";
  for (const auto& v : violations) {
    os << " [" << v.kind;
    for (int k : v.idx)
      if (k >= 0) os << " " << k;
    os << " slack=" << v.slack << "]";
  }
  return os.str();
}

ValidationReport validate(const std::vector<std::string>& labels,
                          const Eigen::MatrixXd& dist) {
  ValidationReport report;
  auto flag = [&report](std::string kind, std::array<int, 3> idx,
                        double slack) {
    report.ok = false;
    report.violations.push_back({std::move(kind), idx, slack});
  };

  const int n = static_cast<int>(labels.size());
  if (dist.rows() != n || dist.cols() != n) {
    flag("shape", {static_cast<int>(dist.rows()), static_cast<int>(dist.cols()), n}, 0.0);
    return report;
  }
  {
    std::unordered_set<std::string> seen;
    for (int i = 0; i < n; ++i)
      if (!seen.insert(labels[i]).second) flag("duplicate_label", {i, -1, -1}, 0.0);
  }
  for (int i = 0; i < n; ++i) {
    if (dist(i, i) != 0.0) flag("diagonal", {i, -1, -1}, -std::abs(dist(i, i)));
    for (int j = i + 1; j < n; ++j) {
      if (dist(i, j) != dist(j, i))
        flag("symmetry", {i, j, -1}, -std::abs(dist(i, j) - dist(j, i)));
      if (!(dist(i, j) > 0.0)) flag("positivity", {i, j, -1}, dist(i, j));
    }
  }
  if (!report.ok) return report;  // triangle checks need a sane matrix

  const double scale = dist.maxCoeff();
  const double slack_tol = tol::metric * scale;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const double slack = dist(i, k) + dist(k, j) - dist(i, j);
        if (slack < -slack_tol) flag("triangle", {i, j, k}, slack);
      }
  return report;
}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels,
                                     Eigen::MatrixXd dist)
    : labels_(std::move(labels)), dist_(std::move(dist)) {
  max_dist_ = dist_.size() > 0 ? dist_.maxCoeff() : 0.0;
}

FiniteMetricSpace FiniteMetricSpace::from_matrix(
    std::vector<std::string> labels, Eigen::MatrixXd dist) {
  if (dist.rows() != dist.cols() ||
      dist.rows() != static_cast<Eigen::Index>(labels.size()))
    throw std::invalid_argument("from_matrix: labels/matrix dimension mismatch");
  ValidationReport report = validate(labels, dist);
  if (!report.ok)
    throw ValidationError("from_matrix: not a metric space: " + report.summary(),
                          std::move(report));
  return FiniteMetricSpace(std::move(labels), std::move(dist));
}

FiniteMetricSpace FiniteMetricSpace::from_euclidean(
    const Eigen::MatrixXd& points, std::vector<std::string> labels) {
  const int n = static_cast<int>(points.cols());
  if (n != static_cast<int>(labels.size()))
    throw std::invalid_argument("from_euclidean: labels/points count mismatch");
  Eigen::MatrixXd dist(n, n);
  for (int i = 0; i < n; ++i) {
    dist(i, i) = 0.0;
    for (int j = i + 1; j < n; ++j) {
      const double d = (points.col(i) - points.col(j)).norm();
      dist(i, j) = dist(j, i) = d;
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (dist(i, j) == 0.0)
        throw std::invalid_argument("from_euclidean: duplicate points " +
                                    labels[i] + ", " + labels[j]);
  return from_matrix(std::move(labels), std::move(dist));
}

int FiniteMetricSpace::index_of(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end())
    throw std::out_of_range("unknown label: " + std::string(label));
  return static_cast<int>(it - labels_.begin());
}

FiniteMetricSpace FiniteMetricSpace::restrict(
    std::span<const std::string> subset) const {
  std::vector<int> idx;
  idx.reserve(subset.size());
  for (const auto& l : subset) idx.push_back(index_of(l));
  const int m = static_cast<int>(idx.size());
  Eigen::MatrixXd sub(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) sub(i, j) = dist_(idx[i], idx[j]);
  return from_matrix(std::vector<std::string>(subset.begin(), subset.end()),
                     std::move(sub));
}

FiniteMetricSpace FiniteMetricSpace::perturb_pair(std::string_view p,
                                                  std::string_view q,
                                                  double eps) const {
  const int i = index_of(p);
  const int j = index_of(q);
  if (i == j) throw std::invalid_argument("perturb_pair: p == q");
  Eigen::MatrixXd d = dist_;
  d(i, j) += eps;
  d(j, i) = d(i, j);
  return from_matrix(labels_, std::move(d));
}

}  // namespace cat0
