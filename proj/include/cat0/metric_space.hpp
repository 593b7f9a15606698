#pragma once

#include <Eigen/Core>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cat0/validation.hpp"

namespace cat0 {

/// Immutable finite metric space: labelled points plus a full symmetric
/// distance matrix.  Construction always validates (symmetry, zero diagonal,
/// positivity off the diagonal, triangle inequalities up to tol::metric
/// scaled by the largest distance) and throws ValidationError on failure.
class FiniteMetricSpace {
 public:
  static FiniteMetricSpace from_matrix(std::vector<std::string> labels,
                                       Eigen::MatrixXd dist);

  /// Points are the columns of `points` (any ambient dimension).
  /// Duplicate points are rejected: the result must be a metric space.
  static FiniteMetricSpace from_euclidean(const Eigen::MatrixXd& points,
                                          std::vector<std::string> labels);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Eigen::MatrixXd& dist() const { return dist_; }
  double dist(int i, int j) const { return dist_(i, j); }

  /// Index of a label; throws std::out_of_range for unknown labels.
  int index_of(std::string_view label) const;

  double max_distance() const { return max_dist_; }

  /// Induced subspace on `subset` (labels, order preserved).
  FiniteMetricSpace restrict(std::span<const std::string> subset) const;

  /// Copy with dist(p,q) increased by eps (may be negative); revalidates.
  FiniteMetricSpace perturb_pair(std::string_view p, std::string_view q,
                                 double eps) const;

 private:
  FiniteMetricSpace(std::vector<std::string> labels, Eigen::MatrixXd dist);

  std::vector<std::string> labels_;
  Eigen::MatrixXd dist_;
  double max_dist_ = 0.0;
};

/// Validate raw input for use as a finite metric space.  Symmetry, the zero
/// diagonal and off-diagonal positivity are checked exactly; triangle
/// inequalities get a slack of tol::metric * max_distance.
ValidationReport validate(const std::vector<std::string>& labels,
                          const Eigen::MatrixXd& dist);

inline ValidationReport validate(const FiniteMetricSpace& space) {
  return validate(space.labels(), space.dist());
}

}  // namespace cat0
