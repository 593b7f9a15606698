#pragma once

#include <array>
#include <string>

#include "cat0/euclidean.hpp"
#include "cat0/metric_space.hpp"
#include "cat0/sixpoint.hpp"

namespace cat0 {

/// Geometry knobs for equality_config: angle between the two coplanar
/// lines, starting length scale of the second line (the builder rescales it
/// while tuning the configuration), and a knob for how far from the plane
/// crossing the z-segment passes its aimed vertex.  The defaults give a
/// unit-diameter configuration.
struct LebedevaShape {
  double angle = 1.0471975511965976;  // pi/3
  double span = 1.0;
  double height = 0.5;
};

/// Diagnostics for the two-part position condition on six points
/// (x0,x1,y0,y1,z0,z1): the open segments (x0,x1) and (y0,y1) must cross in
/// exactly one point, and the open segment (z0,z1) must meet the convex hull
/// of {x0,y0,x1,y1} minus its sides and diagonals in exactly one point.
struct LebedevaConditionReport {
  bool ok = false;
  bool diagonals_cross = false;     // part one
  bool transversal_ok = false;      // part two
  std::string detail;
  Eigen::Vector3d crossing_xy = Eigen::Vector3d::Zero();  // (x0,x1)x(y0,y1)
  Eigen::Vector3d crossing_z = Eigen::Vector3d::Zero();   // (z0,z1) vs plane
};

/// Checks the position condition with tol::geom scaled by the diameter.
LebedevaConditionReport check_condition(const Eigen::Matrix<double, 3, 6>& pts);

/// Six labelled points in R^3 satisfying the position condition, plus the
/// size of the single-distance perturbation applied by d_epsilon.
class LebedevaConfig {
 public:
  /// Columns in role order x0,x1,y0,y1,z0,z1.  Validates the position
  /// condition and 0 < epsilon <= max_metric_epsilon.
  static LebedevaConfig create(Eigen::Matrix<double, 3, 6> points,
                               double epsilon);

  const Eigen::Matrix<double, 3, 6>& points() const { return points_; }
  double epsilon() const { return epsilon_; }
  double diameter() const;

  static const std::array<std::string, 6>& role_labels();

  EuclideanConfig to_euclidean() const;

 private:
  LebedevaConfig(Eigen::Matrix<double, 3, 6> points, double epsilon)
      : points_(std::move(points)), epsilon_(epsilon) {}

  Eigen::Matrix<double, 3, 6> points_;
  double epsilon_;
};

/// Largest eps keeping the perturbed distance function a metric: the
/// smallest triangle slack (|z0-u| + |u-z1| - |z0-z1|) over the other four
/// points.  Strictly positive whenever the position condition holds.
double max_metric_epsilon(const Eigen::Matrix<double, 3, 6>& pts);

/// min(0.1 * max_metric_epsilon, 0.01 * diameter).
double default_epsilon(const Eigen::Matrix<double, 3, 6>& pts);

/// Configuration on which the six-point inequality holds with equality at
/// `params` (all parameters strictly inside (0,1) and a < s): the two
/// interpolation identities
///   (1-a)x0 + a x1 = (1-b)y0 + b y1,
///   (1-t)y1 + t((1-s)x0 + s x1) = (1-c)z0 + c z1
/// hold exactly, scaled to unit diameter.  A deterministic ladder of base
/// geometries (aimed z-segment tilts crossed with a logarithmic range of
/// y-line lengths), refined around the first admissible rung, picks a
/// configuration whose five-point subspaces verifiably stay box-feasible
/// when d(z0,z1) is stretched by a tenth of the metric headroom.
LebedevaConfig equality_config(const SixPointParams& params,
                               const LebedevaShape& shape = {});

/// The Euclidean metric of the configuration with the single distance
/// d(z0,z1) increased by config.epsilon().
FiniteMetricSpace d_epsilon(const LebedevaConfig& config);

}  // namespace cat0
