#pragma once

#include <array>
#include <utility>

#include "cat0/quadratic_form.hpp"

namespace cat0 {

/// Parameters of the five-parameter six-point family.  All lie in [0,1]
/// and a <= s.
struct SixPointParams {
  double a = 0.0, b = 0.5, c = 0.5, s = 0.5, t = 0.5;
};

/// Throws std::invalid_argument unless all parameters are in [0,1] and
/// a <= s.
void validate_params(const SixPointParams& p);

/// Role order of the six form indices.
inline constexpr std::array<const char*, 6> kSixPointRoles = {
    "x0", "x1", "y0", "y1", "z0", "z1"};

/// The twelve index pairs carrying a coefficient, in the fixed order used by
/// sixpoint_coeffs.  Pairs (y0,z0) and (y0,z1) never appear.
inline constexpr std::array<std::pair<int, int>, 12> kSixPointPairs = {{
    {0, 1},  // x0 x1
    {2, 3},  // y0 y1
    {4, 5},  // z0 z1
    {0, 4},  // x0 z0
    {1, 4},  // x1 z0
    {3, 4},  // y1 z0
    {0, 5},  // x0 z1
    {1, 5},  // x1 z1
    {3, 5},  // y1 z1
    {0, 2},  // x0 y0
    {1, 2},  // x1 y0
    {0, 3},  // x0 y1
}};

/// Pair coefficients of the margin (value = sum coeff * squared distance;
/// nonnegative value = the inequality holds).  For a = 0, b = 0, or t = 0
/// the family degenerates to three-point relations valid in every metric
/// space; for s = 0 the form vanishes identically.
std::array<double, 12> sixpoint_coeffs(const SixPointParams& p);

/// The same coefficients assembled as a 6-index quadratic form.
QuadraticForm sixpoint_form(const SixPointParams& p);

/// Margin of `labeling` (role order x0,x1,y0,y1,z0,z1, indices into the
/// space) at the given parameters.
double sixpoint_margin(const FiniteMetricSpace& space,
                       const std::array<int, 6>& labeling,
                       const SixPointParams& p);

double sixpoint_margin(const FiniteMetricSpace& space,
                       const std::array<std::string, 6>& labeling,
                       const SixPointParams& p);

struct SixPointWitness {
  std::array<std::string, 6> labeling;
  SixPointParams params;
  double margin = 0.0;
  bool satisfied = true;
};

/// Coarse parameter grid shared by searches: nine points per axis for
/// (u,b,c,s,t) with a = s*u, so the constraint a <= s holds on every cell.
/// `coeffs` row r holds sixpoint_coeffs of `params` row r (columns
/// a,b,c,s,t); margins for one labeling are coeffs * (squared distances).
struct SixPointGrid {
  Eigen::Matrix<double, Eigen::Dynamic, 5> params;
  Eigen::Matrix<double, Eigen::Dynamic, 5> raw;  // (u,b,c,s,t)
  Eigen::Matrix<double, Eigen::Dynamic, 12, Eigen::RowMajor> coeffs;
};

const SixPointGrid& sixpoint_grid();

struct SixPointMinResult {
  SixPointParams params;
  double margin = 0.0;
};

/// Minimum of the margin over the whole parameter box for one fixed
/// labeling, from raw squared distances in kSixPointPairs order.  For
/// fixed (c,s,t) the margin is quadratic in (a,b) with nonnegative
/// curvature in each variable, so the minimum over [0,s] x [0,1] is
/// found exactly from corners, edge minimizers and the stationary
/// point; a grid sweep over (c,s,t) with simplex refinement covers the
/// remaining coordinates.  Deterministic.
SixPointMinResult sixpoint_min_sq(const std::array<double, 12>& sq);

/// Minimize the margin over all role labelings and parameters: runs
/// sixpoint_min_sq for every labeling (injective when the space has at
/// least six points, all tuples with repeats below that).  Deterministic
/// for any `jobs` >= 1; `satisfied` compares against
/// -tol::margin * max_distance^2.
SixPointWitness sixpoint_search(const FiniteMetricSpace& space, int jobs = 1);

}  // namespace cat0
