#include "cat0/boxtimes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "cat0/tolerances.hpp"

namespace cat0 {

QuadraticForm boxtimes_form(const BoxtimesParams& p) {
  const double s = p.s, t = p.t;
  QuadraticForm form = QuadraticForm::zero(4);
  form.add_pair(0, 1, (1 - s) * (1 - t));  // (x,y)
  form.add_pair(1, 2, s * (1 - t));        // (y,z)
  form.add_pair(2, 3, s * t);              // (z,w)
  form.add_pair(3, 0, (1 - s) * t);        // (w,x)
  form.add_pair(0, 2, -s * (1 - s));       // (x,z)
  form.add_pair(1, 3, -t * (1 - t));       // (y,w)
  return form;
}

namespace {

// Squared distances of a quadruple in the pair order used throughout:
// A=(x,y), B=(y,z), C=(z,w), D=(w,x), E=(x,z), F=(y,w).
struct QuadSq {
  double A, B, C, D, E, F;
};

QuadSq quad_sq(const FiniteMetricSpace& space, const std::array<int, 4>& q) {
  auto sq = [&space, &q](int i, int j) {
    const double d = space.dist(q[i], q[j]);
    return d * d;
  };
  return {sq(0, 1), sq(1, 2), sq(2, 3), sq(3, 0), sq(0, 2), sq(1, 3)};
}

double eval(const QuadSq& m, double s, double t) {
  return (1 - s) * (1 - t) * m.A + s * (1 - t) * m.B + s * t * m.C +
         (1 - s) * t * m.D - s * (1 - s) * m.E - t * (1 - t) * m.F;
}

// Exact minimum over the unit square via candidate enumeration.
BoxtimesMinResult min_over_box(const QuadSq& m) {
  // In expanded form the margin is
  //   A + s(B-A-E) + t(D-A-F) + st*g + s^2 E + t^2 F,  g = A-B+C-D,
  // convex in each variable separately (curvatures E, F >= 0).
  const double g = m.A - m.B + m.C - m.D;
  const double ls = m.B - m.A - m.E;
  const double lt = m.D - m.A - m.F;

  std::vector<std::pair<double, double>> cand = {
      {0, 0}, {1, 0}, {0, 1}, {1, 1}};
  auto add_edge_t = [&](double s0) {  // minimize over t at fixed s
    if (m.F > 0.0) {
      const double t0 = -(lt + s0 * g) / (2 * m.F);
      if (std::isfinite(t0)) cand.emplace_back(s0, std::clamp(t0, 0.0, 1.0));
    }
  };
  auto add_edge_s = [&](double t0) {
    if (m.E > 0.0) {
      const double s0 = -(ls + t0 * g) / (2 * m.E);
      if (std::isfinite(s0)) cand.emplace_back(std::clamp(s0, 0.0, 1.0), t0);
    }
  };
  add_edge_t(0.0);
  add_edge_t(1.0);
  add_edge_s(0.0);
  add_edge_s(1.0);

  const double det = 4 * m.E * m.F - g * g;
  if (det != 0.0) {
    const double s0 = (-2 * m.F * ls + g * lt) / det;
    const double t0 = (-2 * m.E * lt + g * ls) / det;
    if (std::isfinite(s0) && std::isfinite(t0))
      cand.emplace_back(std::clamp(s0, 0.0, 1.0), std::clamp(t0, 0.0, 1.0));
  }

  BoxtimesMinResult best{{cand[0].first, cand[0].second},
                         eval(m, cand[0].first, cand[0].second)};
  for (size_t i = 1; i < cand.size(); ++i) {
    const double v = eval(m, cand[i].first, cand[i].second);
    if (v < best.margin) best = {{cand[i].first, cand[i].second}, v};
  }
  return best;
}

}  // namespace

double boxtimes_margin(const FiniteMetricSpace& space,
                       const std::array<int, 4>& quad,
                       const BoxtimesParams& params) {
  return eval(quad_sq(space, quad), params.s, params.t);
}

BoxtimesMinResult boxtimes_min(const FiniteMetricSpace& space,
                               const std::array<int, 4>& quad) {
  for (int i : quad)
    if (i < 0 || i >= space.size())
      throw std::out_of_range("boxtimes_min: index out of range");
  return min_over_box(quad_sq(space, quad));
}

BoxtimesMinResult boxtimes_min_sq(const std::array<double, 6>& sq) {
  return min_over_box({sq[0], sq[1], sq[2], sq[3], sq[4], sq[5]});
}

BoxtimesVerdict check_boxtimes(const FiniteMetricSpace& space, int jobs) {
  const int n = space.size();
  const long total = static_cast<long>(n) * n * n * n;
  jobs = std::max(1, jobs);

  struct Best {
    double margin = std::numeric_limits<double>::infinity();
    long index = -1;
  };
  auto scan = [&space, n](long lo, long hi) {
    Best best;
    std::array<int, 4> q{};
    for (long f = lo; f < hi; ++f) {
      long r = f;
      q[3] = static_cast<int>(r % n);
      r /= n;
      q[2] = static_cast<int>(r % n);
      r /= n;
      q[1] = static_cast<int>(r % n);
      q[0] = static_cast<int>(r / n);
      const double m = min_over_box(quad_sq(space, q)).margin;
      if (m < best.margin) best = {m, f};
    }
    return best;
  };

  Best best;
  if (jobs == 1 || total < 4096) {
    best = scan(0, total);
  } else {
    std::vector<Best> parts(jobs);
    std::vector<std::thread> pool;
    const long chunk = (total + jobs - 1) / jobs;
    for (int w = 0; w < jobs; ++w)
      pool.emplace_back([&, w] {
        parts[w] = scan(w * chunk, std::min(total, (w + 1) * chunk));
      });
    for (auto& th : pool) th.join();
    best = parts[0];
    for (const auto& p : parts)
      if (p.margin < best.margin ||
          (p.margin == best.margin && p.index < best.index))
        best = p;
  }

  // Recompute the winning quadruple serially for a reproducible witness.
  std::array<int, 4> q{};
  long r = best.index;
  q[3] = static_cast<int>(r % n);
  r /= n;
  q[2] = static_cast<int>(r % n);
  r /= n;
  q[1] = static_cast<int>(r % n);
  q[0] = static_cast<int>(r / n);
  const BoxtimesMinResult res = boxtimes_min(space, q);

  BoxtimesVerdict verdict;
  verdict.min_margin = res.margin;
  verdict.witness = {{space.labels()[q[0]], space.labels()[q[1]],
                      space.labels()[q[2]], space.labels()[q[3]]},
                     res.params,
                     res.margin};
  const double scale = space.max_distance();
  verdict.satisfied = res.margin >= -tol::margin * scale * scale;
  return verdict;
}

Embed5Result embed5_decide(const FiniteMetricSpace& space, int jobs) {
  if (space.size() > 5)
    throw std::invalid_argument(
        "embed5_decide: only spaces with at most 5 points are decidable");
  Embed5Result out;
  out.verdict = check_boxtimes(space, jobs);
  out.embeddable = out.verdict.satisfied;
  return out;
}

}  // namespace cat0
