#pragma once

#include <array>
#include <optional>

#include "cat0/quadratic_form.hpp"

namespace cat0 {

/// Parameters of the two-parameter quadrilateral family.  Both lie in [0,1].
struct BoxtimesParams {
  double s = 0.5;
  double t = 0.5;
};

/// Role order of the four form indices.
inline constexpr std::array<const char*, 4> kBoxtimesRoles = {"x", "y", "z",
                                                             "w"};

/// Coefficient form (indices x,y,z,w):
///   (1-s)(1-t) d(x,y)^2 + s(1-t) d(y,z)^2 + st d(z,w)^2 + (1-s)t d(w,x)^2
///   - s(1-s) d(x,z)^2 - t(1-t) d(y,w)^2  >= 0.
QuadraticForm boxtimes_form(const BoxtimesParams& params);

/// Margin of the quadruple (indices into `space`) at fixed parameters.
double boxtimes_margin(const FiniteMetricSpace& space,
                       const std::array<int, 4>& quad,
                       const BoxtimesParams& params);

struct BoxtimesMinResult {
  BoxtimesParams params;
  double margin = 0.0;
};

/// Exact minimum of the margin over (s,t) in [0,1]^2 for one quadruple.
/// The margin is quadratic with nonnegative curvature in each variable, so
/// the minimum is attained at a corner, an edge minimizer, or the interior
/// stationary point; all candidates are enumerated.
BoxtimesMinResult boxtimes_min(const FiniteMetricSpace& space,
                               const std::array<int, 4>& quad);

/// Same minimum from raw squared distances in the pair order
/// (x,y), (y,z), (z,w), (w,x), (x,z), (y,w).
BoxtimesMinResult boxtimes_min_sq(const std::array<double, 6>& sq);

struct BoxtimesWitness {
  std::array<std::string, 4> labeling;  // role order x,y,z,w
  BoxtimesParams params;
  double margin = 0.0;
};

struct BoxtimesVerdict {
  bool satisfied = true;
  double min_margin = 0.0;  // most negative margin over all quadruples
  BoxtimesWitness witness;  // attaining quadruple/parameters
};

/// Sweep all ordered quadruples (repeats included).  Satisfied means the
/// minimum margin is >= -tol::margin * max_distance^2.  Deterministic for
/// any `jobs` >= 1.
BoxtimesVerdict check_boxtimes(const FiniteMetricSpace& space, int jobs = 1);

struct Embed5Result {
  bool embeddable = false;
  BoxtimesVerdict verdict;
};

/// Decision for spaces with at most five points: such a space embeds
/// isometrically into a CAT(0) space iff every quadrilateral inequality
/// holds.  Throws std::invalid_argument for larger spaces.
Embed5Result embed5_decide(const FiniteMetricSpace& space, int jobs = 1);

}  // namespace cat0
