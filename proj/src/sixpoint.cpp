#include "cat0/sixpoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "cat0/nelder_mead.hpp"
#include "cat0/tolerances.hpp"

namespace cat0 {

void validate_params(const SixPointParams& p) {
  for (double v : {p.a, p.b, p.c, p.s, p.t})
    if (!(v >= 0.0 && v <= 1.0))
      throw std::invalid_argument("sixpoint params must lie in [0,1]");
  if (p.a > p.s)
    throw std::invalid_argument("sixpoint params require a <= s");
}

std::array<double, 12> sixpoint_coeffs(const SixPointParams& p) {
  const double a = p.a, b = p.b, c = p.c, s = p.s, t = p.t;
  return {
      -s * t * a * ((1 - t) * (1 - a) + (1 - s) * t * b),  // x0 x1
      -s * (1 - t) * t * (1 - b) * b,                      // y0 y1
      -a * b * (1 - c) * c,                                // z0 z1
      (1 - s) * t * a * b * (1 - c),                       // x0 z0
      s * t * a * b * (1 - c),                             // x1 z0
      (1 - t) * a * b * (1 - c),                           // y1 z0
      (1 - s) * t * a * b * c,                             // x0 z1
      s * t * a * b * c,                                   // x1 z1
      (1 - t) * a * b * c,                                 // y1 z1
      s * (1 - t) * t * (1 - a) * (1 - b),                 // x0 y0
      s * (1 - t) * t * a * (1 - b),                       // x1 y0
      (1 - t) * t * (s - a) * b,                           // x0 y1
  };
}

QuadraticForm sixpoint_form(const SixPointParams& p) {
  validate_params(p);
  const auto coeffs = sixpoint_coeffs(p);
  QuadraticForm form = QuadraticForm::zero(6);
  for (size_t k = 0; k < coeffs.size(); ++k)
    form.add_pair(kSixPointPairs[k].first, kSixPointPairs[k].second, coeffs[k]);
  return form;
}

namespace {

std::array<double, 12> pair_sq(const FiniteMetricSpace& space,
                               const std::array<int, 6>& lab) {
  std::array<double, 12> sq{};
  for (size_t k = 0; k < kSixPointPairs.size(); ++k) {
    const double d =
        space.dist(lab[kSixPointPairs[k].first], lab[kSixPointPairs[k].second]);
    sq[k] = d * d;
  }
  return sq;
}

double margin_from_sq(const SixPointParams& p,
                      const std::array<double, 12>& sq) {
  const auto coeffs = sixpoint_coeffs(p);
  double m = 0.0;
  for (size_t k = 0; k < 12; ++k) m += coeffs[k] * sq[k];
  return m;
}

SixPointParams params_from_raw(const Eigen::Matrix<double, 5, 1>& raw) {
  // raw = (u, b, c, s, t), a = s*u
  return {raw[3] * raw[0], raw[1], raw[2], raw[3], raw[4]};
}

}  // namespace

double sixpoint_margin(const FiniteMetricSpace& space,
                       const std::array<int, 6>& labeling,
                       const SixPointParams& p) {
  validate_params(p);
  for (int i : labeling)
    if (i < 0 || i >= space.size())
      throw std::out_of_range("sixpoint_margin: index out of range");
  return margin_from_sq(p, pair_sq(space, labeling));
}

double sixpoint_margin(const FiniteMetricSpace& space,
                       const std::array<std::string, 6>& labeling,
                       const SixPointParams& p) {
  std::array<int, 6> idx{};
  for (size_t i = 0; i < labeling.size(); ++i)
    idx[i] = space.index_of(labeling[i]);
  return sixpoint_margin(space, idx, p);
}

const SixPointGrid& sixpoint_grid() {
  static const SixPointGrid grid = [] {
    constexpr int kAxis = 9;
    const int rows = kAxis * kAxis * kAxis * kAxis * kAxis;
    SixPointGrid g;
    g.params.resize(rows, 5);
    g.raw.resize(rows, 5);
    g.coeffs.resize(rows, 12);
    int r = 0;
    auto tick = [](int i) { return static_cast<double>(i) / (kAxis - 1); };
    for (int iu = 0; iu < kAxis; ++iu)
      for (int ib = 0; ib < kAxis; ++ib)
        for (int ic = 0; ic < kAxis; ++ic)
          for (int is = 0; is < kAxis; ++is)
            for (int it = 0; it < kAxis; ++it, ++r) {
              Eigen::Matrix<double, 5, 1> raw;
              raw << tick(iu), tick(ib), tick(ic), tick(is), tick(it);
              const SixPointParams p = params_from_raw(raw);
              g.raw.row(r) = raw.transpose();
              g.params.row(r) << p.a, p.b, p.c, p.s, p.t;
              const auto coeffs = sixpoint_coeffs(p);
              for (int k = 0; k < 12; ++k)
                g.coeffs(r, k) = coeffs[static_cast<size_t>(k)];
            }
    return g;
  }();
  return grid;
}

namespace {

// Role labelings are enumerated by rank so sweeps need no materialized
// list: injective 6-tuples (falling-factorial digits) when the space has
// at least six points, otherwise all 6-tuples with repeats.
struct LabelingSpace {
  int n;
  bool injective;

  long count() const {
    if (!injective) {
      long c = 1;
      for (int k = 0; k < 6; ++k) c *= n;
      return c;
    }
    long c = 1;
    for (int k = 0; k < 6; ++k) c *= n - k;
    return c;
  }

  std::array<int, 6> decode(long rank) const {
    std::array<int, 6> lab{};
    if (!injective) {
      for (int k = 5; k >= 0; --k) {
        lab[static_cast<size_t>(k)] = static_cast<int>(rank % n);
        rank /= n;
      }
      return lab;
    }
    std::array<int, 6> digits{};
    for (int k = 5; k >= 0; --k) {
      const int radix = n - k;
      digits[static_cast<size_t>(k)] = static_cast<int>(rank % radix);
      rank /= radix;
    }
    std::vector<int> pool(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<size_t>(i)] = i;
    for (int k = 0; k < 6; ++k) {
      const int d = digits[static_cast<size_t>(k)];
      lab[static_cast<size_t>(k)] = pool[static_cast<size_t>(d)];
      pool.erase(pool.begin() + d);
    }
    return lab;
  }
};

// Exact minimization over (a,b) for fixed (c,s,t).  Collecting
// sixpoint_coeffs by powers of a and b gives
//   margin = alpha + beta a + gamma b + delta a^2 + eps2 b^2 + zeta ab
// over the box [0,s] x [0,1], with delta, eps2 >= 0 whenever the squared
// distances are nonnegative.
struct ABQuad {
  double alpha, beta, gamma, delta, eps2, zeta, amax;
};

ABQuad ab_quad(double c, double s, double t,
               const std::array<double, 12>& sq) {
  const double p = s * t * (1 - t);
  ABQuad q;
  q.amax = s;
  q.alpha = p * sq[9];
  q.beta = p * (sq[10] - sq[0] - sq[9]);
  q.gamma = p * (sq[11] - sq[1] - sq[9]);
  q.delta = p * sq[0];
  q.eps2 = p * sq[1];
  q.zeta = -s * (1 - s) * t * t * sq[0] - (1 - c) * c * sq[2] +
           (1 - s) * t * (1 - c) * sq[3] + s * t * (1 - c) * sq[4] +
           (1 - t) * (1 - c) * sq[5] + (1 - s) * t * c * sq[6] +
           s * t * c * sq[7] + (1 - t) * c * sq[8] + p * (sq[9] - sq[10]) -
           t * (1 - t) * sq[11];
  return q;
}

struct ABMin {
  double a = 0.0, b = 0.0;
  double value = std::numeric_limits<double>::infinity();
};

ABMin ab_min(const ABQuad& q) {
  ABMin best;
  auto consider = [&](double a, double b) {
    const double v = q.alpha + a * (q.beta + q.delta * a + q.zeta * b) +
                     b * (q.gamma + q.eps2 * b);
    if (v < best.value) best = {a, b, v};
  };
  consider(0.0, 0.0);
  consider(q.amax, 0.0);
  consider(0.0, 1.0);
  consider(q.amax, 1.0);
  if (q.delta > 0.0) {
    consider(std::clamp(-q.beta / (2 * q.delta), 0.0, q.amax), 0.0);
    consider(std::clamp(-(q.beta + q.zeta) / (2 * q.delta), 0.0, q.amax), 1.0);
  }
  if (q.eps2 > 0.0) {
    consider(0.0, std::clamp(-q.gamma / (2 * q.eps2), 0.0, 1.0));
    consider(q.amax,
             std::clamp(-(q.gamma + q.zeta * q.amax) / (2 * q.eps2), 0.0, 1.0));
  }
  const double det = 4 * q.delta * q.eps2 - q.zeta * q.zeta;
  if (det > 0.0) {
    const double a = (q.zeta * q.gamma - 2 * q.eps2 * q.beta) / det;
    const double b = (q.zeta * q.beta - 2 * q.delta * q.gamma) / det;
    if (a > 0.0 && a < q.amax && b > 0.0 && b < 1.0) consider(a, b);
  }
  return best;
}

// (c,s,t) scan lattice: 17 ticks per axis, a superset of the nine-tick
// lattice behind SixPointGrid, so together with the exact (a,b) step the
// sweep is pointwise at least as sharp as a full sweep of that grid.
constexpr int kCstTicks = 17;

struct CstCell {
  double c, s, t;
};

const std::vector<CstCell>& cst_cells() {
  static const std::vector<CstCell> cells = [] {
    std::vector<CstCell> v;
    v.reserve(kCstTicks * kCstTicks * kCstTicks);
    auto tick = [](int i) { return static_cast<double>(i) / (kCstTicks - 1); };
    for (int ic = 0; ic < kCstTicks; ++ic)
      for (int is = 0; is < kCstTicks; ++is)
        for (int it = 0; it < kCstTicks; ++it)
          v.push_back({tick(ic), tick(is), tick(it)});
    return v;
  }();
  return cells;
}

}  // namespace

SixPointMinResult sixpoint_min_sq(const std::array<double, 12>& sq) {
  const auto& cells = cst_cells();
  constexpr size_t kSeeds = 3;
  struct Seed {
    double value = std::numeric_limits<double>::infinity();
    size_t cell = 0;
  };
  std::array<Seed, kSeeds> seeds{};
  for (size_t i = 0; i < cells.size(); ++i) {
    const double v =
        ab_min(ab_quad(cells[i].c, cells[i].s, cells[i].t, sq)).value;
    for (size_t k = 0; k < kSeeds; ++k)
      if (v < seeds[k].value) {
        for (size_t j = kSeeds - 1; j > k; --j) seeds[j] = seeds[j - 1];
        seeds[k] = {v, i};
        break;
      }
  }

  // Simplex refinement over (c,s,t) with the exact (a,b) inner step.
  auto objective = [&sq](const Eigen::VectorXd& v) {
    return ab_min(ab_quad(v[0], v[1], v[2], sq)).value;
  };
  double best_value = seeds[0].value;
  Eigen::VectorXd best_cst(3);
  best_cst << cells[seeds[0].cell].c, cells[seeds[0].cell].s,
      cells[seeds[0].cell].t;
  for (const auto& seed : seeds) {
    Eigen::VectorXd start(3);
    start << cells[seed.cell].c, cells[seed.cell].s, cells[seed.cell].t;
    const auto [cst, value] =
        nelder_mead_box(objective, start, 1.0 / (kCstTicks - 1), 160);
    if (value < best_value) {
      best_value = value;
      best_cst = cst;
    }
  }

  const ABMin ab = ab_min(ab_quad(best_cst[0], best_cst[1], best_cst[2], sq));
  SixPointMinResult res;
  res.params = {ab.a, ab.b, best_cst[0], best_cst[1], best_cst[2]};
  res.margin = margin_from_sq(res.params, sq);
  return res;
}

SixPointWitness sixpoint_search(const FiniteMetricSpace& space, int jobs) {
  const int n = space.size();
  if (n < 1) throw std::invalid_argument("sixpoint_search: empty space");
  const LabelingSpace labs{n, n >= 6};
  const long total = labs.count();
  jobs = std::max(1, jobs);

  struct Best {
    double margin = std::numeric_limits<double>::infinity();
    long rank = -1;
    SixPointParams params;
  };
  auto scan = [&](long lo, long hi) {
    Best best;
    for (long r = lo; r < hi; ++r) {
      const auto res = sixpoint_min_sq(pair_sq(space, labs.decode(r)));
      if (res.margin < best.margin) best = {res.margin, r, res.params};
    }
    return best;
  };

  Best best;
  if (jobs == 1 || total < 64) {
    best = scan(0, total);
  } else {
    std::vector<Best> parts(static_cast<size_t>(jobs));
    std::vector<std::thread> pool;
    const long chunk = (total + jobs - 1) / jobs;
    for (int w = 0; w < jobs; ++w)
      pool.emplace_back([&, w] {
        parts[static_cast<size_t>(w)] =
            scan(w * chunk, std::min(total, (w + 1) * chunk));
      });
    for (auto& th : pool) th.join();
    for (const auto& part : parts)
      if (part.rank >= 0 && (best.rank < 0 || part.margin < best.margin))
        best = part;
  }

  const auto lab = labs.decode(best.rank);
  SixPointWitness witness;
  for (size_t i = 0; i < 6; ++i)
    witness.labeling[i] = space.labels()[static_cast<size_t>(lab[i])];
  witness.params = best.params;
  witness.margin = sixpoint_margin(space, lab, best.params);
  const double scale = space.max_distance();
  witness.satisfied = witness.margin >= -tol::margin * scale * scale;
  return witness;
}

}  // namespace cat0
