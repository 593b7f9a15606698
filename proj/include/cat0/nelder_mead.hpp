#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <utility>
#include <vector>

namespace cat0 {

/// Derivative-free simplex minimization restricted to the unit box.
/// Every trial point is clamped to [0,1]^dim before evaluation, so the
/// returned minimizer always lies in the box.  Runs a fixed iteration
/// budget; no convergence test (callers refine coarse-grid cells).
template <typename F>
std::pair<Eigen::VectorXd, double> nelder_mead_box(F&& f, Eigen::VectorXd x0,
                                                   double step, int max_iter) {
  const int dim = static_cast<int>(x0.size());
  auto clamp = [](Eigen::VectorXd v) {
    for (int i = 0; i < v.size(); ++i) v[i] = std::clamp(v[i], 0.0, 1.0);
    return v;
  };

  struct Vertex {
    Eigen::VectorXd x;
    double value;
  };
  std::vector<Vertex> simplex;
  simplex.reserve(dim + 1);
  x0 = clamp(std::move(x0));
  simplex.push_back({x0, f(x0)});
  for (int i = 0; i < dim; ++i) {
    Eigen::VectorXd xi = x0;
    xi[i] += (xi[i] + step <= 1.0) ? step : -step;
    xi = clamp(std::move(xi));
    simplex.push_back({xi, f(xi)});
  }
  auto by_value = [](const Vertex& a, const Vertex& b) {
    return a.value < b.value;
  };
  std::sort(simplex.begin(), simplex.end(), by_value);

  constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5,
                   kShrink = 0.5;
  for (int iter = 0; iter < max_iter; ++iter) {
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
    for (int i = 0; i < dim; ++i) centroid += simplex[i].x;
    centroid /= dim;

    Vertex& worst = simplex[dim];
    Eigen::VectorXd xr = clamp(centroid + kReflect * (centroid - worst.x));
    const double fr = f(xr);
    if (fr < simplex[0].value) {
      Eigen::VectorXd xe = clamp(centroid + kExpand * (xr - centroid));
      const double fe = f(xe);
      worst = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
    } else if (fr < simplex[dim - 1].value) {
      worst = {xr, fr};
    } else {
      Eigen::VectorXd xc = clamp(centroid + kContract * (worst.x - centroid));
      const double fc = f(xc);
      if (fc < worst.value) {
        worst = {xc, fc};
      } else {
        for (int i = 1; i <= dim; ++i) {
          simplex[i].x =
              clamp(simplex[0].x + kShrink * (simplex[i].x - simplex[0].x));
          simplex[i].value = f(simplex[i].x);
        }
      }
    }
    std::sort(simplex.begin(), simplex.end(), by_value);
  }
  return {simplex[0].x, simplex[0].value};
}

}  // namespace cat0
