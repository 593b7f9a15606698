#pragma once

#include <array>
#include <string>
#include <vector>

#include "cat0/metric_space.hpp"
#include "cat0/sixpoint.hpp"

namespace cat0 {

/// Labelled point configuration in R^dim; points are columns.
struct EuclideanConfig {
  std::vector<std::string> labels;
  Eigen::MatrixXd points;

  static EuclideanConfig create(std::vector<std::string> labels,
                                Eigen::MatrixXd points);

  int size() const { return static_cast<int>(points.cols()); }
  int dim() const { return static_cast<int>(points.rows()); }
  int index_of(std::string_view label) const;
  double diameter() const;

  /// The induced metric space (points must be distinct).
  FiniteMetricSpace to_metric_space() const;
};

/// Finitely supported probability measure on a configuration's points.
struct WeightedMeasure {
  std::vector<int> support;
  Eigen::VectorXd weights;  // nonnegative, sums to 1 within tol::cert
};

/// Weighted mean of the supported points (the Euclidean barycenter).
/// Validates the measure.
Eigen::VectorXd barycenter(const EuclideanConfig& config,
                           const WeightedMeasure& mu);

/// Residual of the variance identity at witness point w with z the
/// barycenter of mu:
///   sum_i p_i d(w,x_i)^2 - d(w,z)^2 - sum_i p_i d(z,x_i)^2.
/// Identically zero for Euclidean configurations.
double variance_residual(const EuclideanConfig& config,
                         const WeightedMeasure& mu, const Eigen::VectorXd& w);

/// Residual of the two-measure variance identity:
///   sum_ij p_i q_j d(x_i,y_j)^2 - d(bar mu,bar nu)^2
///   - sum_i p_i d(bar mu,x_i)^2 - sum_j q_j d(bar nu,y_j)^2.
/// Identically zero for Euclidean configurations.
double double_variance_residual(const EuclideanConfig& config,
                                const WeightedMeasure& mu,
                                const WeightedMeasure& nu);

/// Residual of the interpolated-point comparison along the segment x0-x1
/// with x_t = (1-t)x0 + t*x1 and 0 <= a <= s <= 1:
///   a d(y,x_s)^2 - s d(y,x_a)^2 + (s-a) d(y,x0)^2 - s*a*(s-a) d(x0,x1)^2.
/// Identically zero for Euclidean inputs.
double thick_prop_residual(const Eigen::VectorXd& x0, const Eigen::VectorXd& x1,
                           const Eigen::VectorXd& y, double a, double s);

struct ProofStep {
  std::string id;
  double residual = 0.0;
  bool skipped = false;
};

/// Step-by-step residual trace of the six-point inequality on a Euclidean
/// configuration.  Every displayed intermediate inequality is evaluated as
/// (larger side) - (smaller side); nonnegative residuals certify each step.
struct ProofTrace {
  SixPointParams params;
  std::vector<ProofStep> steps;
  double wz_sq = 0.0;       // squared distance between the two barycenters
  double margin = 0.0;      // six-point margin of the induced distances
  Eigen::VectorXd w, z;     // the barycenters themselves
};

/// `pts` holds the six role points as columns in the order
/// x0,x1,y0,y1,z0,z1 (any ambient dimension).  Steps whose evaluation
/// divides by a (or b) are marked skipped when that parameter is below
/// 1e-12; the final step uses a division-free expansion and is always
/// evaluated.
ProofTrace proof_trace(const Eigen::MatrixXd& pts, const SixPointParams& p);

ProofTrace proof_trace(const EuclideanConfig& config,
                       const std::array<std::string, 6>& labeling,
                       const SixPointParams& p);

}  // namespace cat0
