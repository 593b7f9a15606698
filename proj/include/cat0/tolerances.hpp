#pragma once

// Central numeric tolerances.  All margin-style tolerances are understood
// relative to a space whose largest distance is 1; callers working with
// unnormalized data scale by max_distance^2 as appropriate.

namespace cat0::tol {

// Metric validation: relative slack on triangle inequalities, scaled by the
// largest distance in the space.
inline constexpr double metric = 1e-12;

// Inequality margins (quadratic in the distances): absolute, after
// normalizing the largest distance to 1.
inline constexpr double margin = 1e-9;

// Certificate entry checks (stochasticity, coupling sums).
inline constexpr double cert = 1e-10;

// Eigenvalue nonnegativity threshold for PSD checks.
inline constexpr double eig = 1e-9;

// Gram feasibility: allowed slack on edge/non-edge distance constraints.
inline constexpr double feas = 1e-8;

// Geometric predicates (intersections, coplanarity), diameter-normalized.
inline constexpr double geom = 1e-9;

}  // namespace cat0::tol
