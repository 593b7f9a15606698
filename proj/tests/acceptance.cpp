// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <numeric>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "cat0/ann.hpp"
#include "cat0/boxtimes.hpp"
#include "cat0/euclidean.hpp"
#include "cat0/graph_comparison.hpp"
#include "cat0/json_io.hpp"
#include "cat0/lebedeva.hpp"
#include "cat0/metric_space.hpp"
#include "cat0/sixpoint.hpp"
#include "cat0/tolerances.hpp"

using namespace cat0;

namespace {

int g_failures = 0;

int pool_jobs() {
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::min(4u, hw == 0 ? 1u : hw));
}

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double sec() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

template <typename F>
void criterion(int num, const char* title, double budget_sec, F&& body) {
  Timer timer;
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double elapsed = timer.sec();
  if (elapsed >= budget_sec) {
    ok = false;
    detail += " [over time budget]";
  }
  if (!ok) ++g_failures;
  std::printf("criterion %d: %s  %s — %s  [%.2f s]\n", num,
              ok ? "PASS" : "FAIL", title, detail.c_str(), elapsed);
  std::fflush(stdout);
}

std::array<std::string, 6> role_array() {
  std::array<std::string, 6> roles;
  const auto& labels = LebedevaConfig::role_labels();
  std::copy(labels.begin(), labels.end(), roles.begin());
  return roles;
}

std::vector<SixPointParams> sample_tuples(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  std::vector<SixPointParams> tuples;
  while (static_cast<int>(tuples.size()) < count) {
    SixPointParams p{unif(rng), unif(rng), unif(rng), unif(rng), unif(rng)};
    if (p.a > p.s) std::swap(p.a, p.s);
    if (p.a == p.s) continue;
    tuples.push_back(p);
  }
  return tuples;
}

EuclideanConfig random_config(int n, int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd pts(dim, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < dim; ++i) pts(i, j) = gauss(rng);
  std::vector<std::string> labels;
  for (int j = 0; j < n; ++j) labels.push_back("p" + std::to_string(j));
  return EuclideanConfig::create(labels, pts);
}

// Euclidean metric with multiplicative jitter on each distance, resampled
// until the triangle inequalities survive.
FiniteMetricSpace perturbed_metric(int n, int dim, double jitter,
                                   std::mt19937_64& rng) {
  std::uniform_real_distribution<double> factor(1.0 - jitter, 1.0 + jitter);
  for (;;) {
    const EuclideanConfig config = random_config(n, dim, rng);
    const FiniteMetricSpace base = config.to_metric_space();
    Eigen::MatrixXd dist = base.dist();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double f = factor(rng);
        dist(i, j) *= f;
        dist(j, i) = dist(i, j);
      }
    if (validate(base.labels(), dist).ok)
      return FiniteMetricSpace::from_matrix(base.labels(), dist);
  }
}

Eigen::VectorXd pair_sq_vector(const FiniteMetricSpace& space) {
  Eigen::VectorXd sq(12);
  for (int k = 0; k < 12; ++k) {
    const auto& pr = kSixPointPairs[static_cast<size_t>(k)];
    const double d = space.dist(pr.first, pr.second);
    sq[k] = d * d;
  }
  return sq;
}

// Shared across criteria 1-3 and 8.
struct LebedevaBatch {
  std::vector<SixPointParams> tuples;
  std::vector<LebedevaConfig> flats;       // equality configurations
  std::vector<FiniteMetricSpace> spaces;   // perturbed, eps = 0.1 * maxeps
  std::vector<double> epsilons;
  std::vector<double> z_distances;
};

}  // namespace

int main() {
  const int jobs = pool_jobs();
  const auto roles = role_array();
  LebedevaBatch batch;
  batch.tuples = sample_tuples(100, 20260823u);

  criterion(1, "equality reproduction", 5.0, [&](std::string& detail) {
    double worst_margin = 0.0, worst_residual = 0.0;
    for (const auto& p : batch.tuples) {
      const LebedevaConfig cfg = equality_config(p);
      batch.flats.push_back(cfg);
      const EuclideanConfig euc = cfg.to_euclidean();
      const double margin = sixpoint_margin(euc.to_metric_space(), roles, p);
      worst_margin = std::max(worst_margin, std::abs(margin));
      const ProofTrace trace = proof_trace(euc, roles, p);
      for (const auto& step : trace.steps)
        if (!step.skipped)
          worst_residual = std::max(worst_residual, std::abs(step.residual));
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "100 tuples, worst |margin| %.2e, worst |residual| %.2e",
                  worst_margin, worst_residual);
    detail = buf;
    return worst_margin <= 1e-9 && worst_residual <= 1e-9;
  });

  criterion(2, "violation magnitude", 5.0, [&](std::string& detail) {
    if (batch.flats.size() != batch.tuples.size()) {
      detail = "criterion 1 did not build the configurations";
      return false;
    }
    double worst = 0.0;
    for (size_t i = 0; i < batch.tuples.size(); ++i) {
      const SixPointParams& p = batch.tuples[i];
      const auto& pts = batch.flats[i].points();
      const double eps = 0.1 * max_metric_epsilon(pts);
      const FiniteMetricSpace space =
          d_epsilon(LebedevaConfig::create(pts, eps));
      const double dz = (pts.col(4) - pts.col(5)).norm();
      const double predicted =
          -p.a * p.b * (1.0 - p.c) * p.c * (2.0 * dz * eps + eps * eps);
      const double measured = sixpoint_margin(space, roles, p);
      worst = std::max(worst, std::abs(measured - predicted));
      batch.spaces.push_back(space);
      batch.epsilons.push_back(eps);
      batch.z_distances.push_back(dz);
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "worst |measured - predicted| %.2e", worst);
    detail = buf;
    return worst <= 1e-9;
  });

  criterion(3, "five-point embeddability", 10.0, [&](std::string& detail) {
    if (batch.spaces.size() != batch.tuples.size()) {
      detail = "criterion 2 did not build the perturbed spaces";
      return false;
    }
    double worst = 0.0;
    for (const auto& space : batch.spaces) {
      for (int drop = 0; drop < 6; ++drop) {
        std::vector<std::string> keep;
        for (int i = 0; i < 6; ++i)
          if (i != drop) keep.push_back(space.labels()[static_cast<size_t>(i)]);
        const BoxtimesVerdict v = check_boxtimes(space.restrict(keep), 1);
        worst = std::min(worst, v.min_margin);
      }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf,
                  "600 restrictions, most negative margin %.2e", worst);
    detail = buf;
    return worst >= -1e-9;
  });

  criterion(4, "Hilbert validity sweep", 120.0, [&](std::string& detail) {
    std::mt19937_64 rng(40u);
    const SixPointGrid& grid = sixpoint_grid();
    double worst = 0.0;
    std::vector<int> identity{0, 1, 2, 3, 4, 5};
    for (int rep = 0; rep < 1000; ++rep) {
      const EuclideanConfig config = random_config(6, 3, rng);
      const FiniteMetricSpace space = config.to_metric_space();
      const Eigen::VectorXd margins = grid.coeffs * pair_sq_vector(space);
      worst = std::min(worst, margins.minCoeff());
      worst = std::min(worst, check_boxtimes(space, 1).min_margin);
      for (int k = 0; k < 20; ++k) {
        const AnnCertificate cert =
            ann_sample(6, 1 + (k % 3), 4000u + 20u * rep + k);
        worst = std::min(worst, ann_margin(space, cert, identity));
      }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf,
                  "1000 configurations, most negative margin %.2e", worst);
    detail = buf;
    return worst >= -1e-9;
  });

  criterion(5, "quadrilateral minimizer oracle", 30.0,
            [&](std::string& detail) {
    std::mt19937_64 rng(50u);
    const std::array<int, 4> quad{0, 1, 2, 3};
    double worst_gap = 0.0, worst_attain = 0.0;
    for (int rep = 0; rep < 1000; ++rep) {
      const FiniteMetricSpace space =
          (rep % 2 == 0) ? random_config(4, 2 + rep % 3, rng).to_metric_space()
                         : perturbed_metric(4, 3, 0.15, rng);
      const double d01 = space.dist(0, 1), d12 = space.dist(1, 2);
      const double d23 = space.dist(2, 3), d30 = space.dist(3, 0);
      const double d02 = space.dist(0, 2), d13 = space.dist(1, 3);
      auto literal = [&](double s, double t) {
        return (1 - s) * (1 - t) * d01 * d01 + s * (1 - t) * d12 * d12 +
               s * t * d23 * d23 + (1 - s) * t * d30 * d30 -
               s * (1 - s) * d02 * d02 - t * (1 - t) * d13 * d13;
      };
      double grid_min = std::numeric_limits<double>::infinity();
      for (int i = 0; i <= 200; ++i)
        for (int j = 0; j <= 200; ++j)
          grid_min = std::min(grid_min, literal(i / 200.0, j / 200.0));
      const BoxtimesMinResult exact = boxtimes_min(space, quad);
      // The candidate enumeration is exact, so it can only undercut a
      // finite grid; it must never exceed it, and the reported value must
      // be attained at the reported parameters.
      worst_gap = std::max(worst_gap, exact.margin - grid_min);
      worst_attain =
          std::max(worst_attain,
                   std::abs(literal(exact.params.s, exact.params.t) -
                            exact.margin));
    }
    char buf[112];
    std::snprintf(buf, sizeof buf,
                  "worst excess over grid %.2e, worst attainment gap %.2e",
                  worst_gap, worst_attain);
    detail = buf;
    return worst_gap <= 1e-9 && worst_attain <= 1e-9;
  });

  criterion(6, "Euclidean identity suite", 10.0, [&](std::string& detail) {
    std::mt19937_64 rng(60u);
    std::uniform_int_distribution<int> dim_pick(3, 5);
    std::uniform_int_distribution<int> size_pick(2, 6);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double worst = 0.0;
    for (int rep = 0; rep < 10000; ++rep) {
      const int dim = dim_pick(rng);
      const int n = size_pick(rng);
      const EuclideanConfig config = random_config(n, dim, rng);

      WeightedMeasure mu;
      Eigen::VectorXd w1(n);
      for (int i = 0; i < n; ++i) {
        mu.support.push_back(i);
        w1[i] = 0.05 + unit(rng);
      }
      mu.weights = w1 / w1.sum();
      Eigen::VectorXd witness(dim);
      for (int i = 0; i < dim; ++i) witness[i] = gauss(rng);
      worst = std::max(worst, std::abs(variance_residual(config, mu, witness)));

      WeightedMeasure nu;
      Eigen::VectorXd w2(n);
      for (int i = 0; i < n; ++i) {
        nu.support.push_back(i);
        w2[i] = 0.05 + unit(rng);
      }
      nu.weights = w2 / w2.sum();
      worst =
          std::max(worst, std::abs(double_variance_residual(config, mu, nu)));

      Eigen::VectorXd x0(dim), x1(dim), y(dim);
      for (int i = 0; i < dim; ++i) {
        x0[i] = gauss(rng);
        x1[i] = gauss(rng);
        y[i] = gauss(rng);
      }
      double a = unit(rng), s = unit(rng);
      if (a > s) std::swap(a, s);
      worst = std::max(worst, std::abs(thick_prop_residual(x0, x1, y, a, s)));
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "10000 instances, worst |residual| %.2e",
                  worst);
    detail = buf;
    return worst <= 1e-10;
  });

  criterion(7, "six-point form is Hilbert-valid", 30.0,
            [&](std::string& detail) {
    const SixPointGrid& grid = sixpoint_grid();
    long checked = 0;
    for (int r = 0; r < grid.params.rows(); ++r) {
      const SixPointParams p{grid.params(r, 0), grid.params(r, 1),
                             grid.params(r, 2), grid.params(r, 3),
                             grid.params(r, 4)};
      if (!laplacian_psd_check(sixpoint_form(p))) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "grid row %d not PSD", r);
        detail = buf;
        return false;
      }
      ++checked;
    }
    std::mt19937_64 rng(70u);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int rep = 0; rep < 10000; ++rep) {
      const double s = unit(rng);
      const SixPointParams p{unit(rng) * s, unit(rng), unit(rng), s,
                             unit(rng)};
      if (!laplacian_psd_check(sixpoint_form(p))) {
        detail = "random tuple not PSD";
        return false;
      }
      ++checked;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%ld parameter tuples PSD", checked);
    detail = buf;
    return true;
  });

  criterion(8, "octahedron certificates on perturbed spaces", 120.0,
            [&](std::string& detail) {
    if (batch.spaces.size() != batch.tuples.size()) {
      detail = "criterion 2 did not build the perturbed spaces";
      return false;
    }
    const ComparisonGraph octahedron = graph_octahedron();
    const std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "cat0_acceptance";
    std::filesystem::create_directories(dir);
    std::vector<int> identity{0, 1, 2, 3, 4, 5};
    // The 50 batch instances with the largest violation magnitude.
    std::vector<int> order(batch.spaces.size());
    std::iota(order.begin(), order.end(), 0);
    auto magnitude = [&](int i) {
      const SixPointParams& p = batch.tuples[static_cast<size_t>(i)];
      const double eps = batch.epsilons[static_cast<size_t>(i)];
      const double dz = batch.z_distances[static_cast<size_t>(i)];
      return p.a * p.b * (1.0 - p.c) * p.c * (2.0 * dz * eps + eps * eps);
    };
    std::sort(order.begin(), order.end(),
              [&](int l, int r) { return magnitude(l) > magnitude(r); });
    int bad_status = 0, bad_cert = 0, bad_ann = 0, bad_cli = 0;
    double worst_ann = 0.0;
    for (int sel = 0; sel < 50; ++sel) {
      const int i = order[static_cast<size_t>(sel)];
      const FiniteMetricSpace& space = batch.spaces[static_cast<size_t>(i)];
      const FeasibilityResult res = o3_check(space, {}, 5000, jobs);
      if (res.status != FeasibilityStatus::kCertifiedInfeasible ||
          !res.certificate) {
        ++bad_status;
      } else if (!verify_certificate(octahedron, *res.certificate, space,
                                     {})) {
        ++bad_cert;
      }
      for (int k = 0; k < 20; ++k) {
        const AnnCertificate cert =
            ann_sample(6, 1 + (k % 3), 8000u + 20u * i + k);
        const double margin = ann_margin(space, cert, identity);
        worst_ann = std::min(worst_ann, margin);
        if (margin < -1e-9) ++bad_ann;
      }
      const std::string file =
          (dir / ("space" + std::to_string(i) + ".json")).string();
      write_file(file, space_to_json(space));
      const std::string cmd = std::string(CAT0AUDIT_BIN) + " check " + file +
                              " --family sixpoint --jobs " +
                              std::to_string(jobs) +
                              " >/dev/null 2>/dev/null";
      const int rc = std::system(cmd.c_str());
      if (!WIFEXITED(rc) || WEXITSTATUS(rc) != 1) ++bad_cli;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "50 instances: %d status, %d certificate, %d ann (worst "
                  "%.1e), %d cli failures",
                  bad_status, bad_cert, bad_ann, worst_ann, bad_cli);
    detail = buf;
    return bad_status == 0 && bad_cert == 0 && bad_ann == 0 && bad_cli == 0;
  });

  criterion(9, "cycle-four consistency", 120.0, [&](std::string& detail) {
    std::mt19937_64 rng(90u);
    int feasible_missing = 0, feasible_spurious = 0, unknown_outside = 0;
    double worst_margin = 0.0;
    for (int rep = 0; rep < 500; ++rep) {
      const FiniteMetricSpace space =
          (rep % 2 == 0) ? random_config(4, 2 + rep % 3, rng).to_metric_space()
                         : perturbed_metric(4, 3, 0.2, rng);
      const BoxtimesVerdict verdict = check_boxtimes(space, 1);
      const auto& lab = space.labels();
      // The three seatings around the cycle, one per diagonal matching.
      const std::array<std::vector<std::string>, 3> seatings{
          std::vector<std::string>{lab[0], lab[1], lab[2], lab[3]},
          std::vector<std::string>{lab[0], lab[1], lab[3], lab[2]},
          std::vector<std::string>{lab[0], lab[2], lab[1], lab[3]}};
      int feas = 0, infeas = 0;
      for (const auto& seating : seatings) {
        const FeasibilityResult r = cycl_check(space, 4, seating, 5000, 1);
        if (r.status == FeasibilityStatus::kFeasible) ++feas;
        if (r.status == FeasibilityStatus::kCertifiedInfeasible) ++infeas;
      }
      const bool all_feasible = feas == 3;
      const double m = verdict.min_margin;
      worst_margin = std::min(worst_margin, m);
      if (verdict.satisfied && !all_feasible) ++feasible_missing;
      if (m < -1e-6 && (all_feasible || infeas == 0)) ++feasible_spurious;
      if (m > 1e-6 && !all_feasible) ++unknown_outside;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "500 spaces (most negative margin %.1e): %d satisfied-but-"
                  "infeasible, %d violated-but-undetected, %d unknown outside "
                  "band",
                  worst_margin, feasible_missing, feasible_spurious,
                  unknown_outside);
    detail = buf;
    return feasible_missing == 0 && feasible_spurious == 0 &&
           unknown_outside == 0;
  });

  if (g_failures == 0) std::printf("all criteria passed\n");
  return g_failures == 0 ? 0 : 1;
}
