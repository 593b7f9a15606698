#include "cat0/ann.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "cat0/tolerances.hpp"

namespace cat0 {

ValidationReport ann_validate(const AnnCertificate& cert) {
  ValidationReport report;
  auto flag = [&report](std::string kind, std::array<int, 3> idx,
                        double slack) {
    report.ok = false;
    report.violations.push_back({std::move(kind), idx, slack});
  };

  const int m = cert.m();
  const int n = cert.n();
  if (m < 1 || n < 1) {
    flag("shape", {m, n, -1}, 0.0);
    return report;
  }
  if (cert.p.rows() != m || cert.q.rows() != m || cert.q.cols() != n ||
      static_cast<int>(cert.A.size()) != m ||
      static_cast<int>(cert.B.size()) != m) {
    flag("shape", {m, n, -1}, 0.0);
    return report;
  }
  for (int k = 0; k < m; ++k)
    if (cert.A[k].rows() != n || cert.A[k].cols() != n ||
        cert.B[k].rows() != n || cert.B[k].cols() != n) {
      flag("shape", {k, -1, -1}, 0.0);
      return report;
    }

  for (int k = 0; k < m; ++k) {
    if (!(cert.c[k] > 0.0)) flag("c_positive", {k, -1, -1}, cert.c[k]);
    for (int i = 0; i < n; ++i) {
      if (cert.p(k, i) < 0.0) flag("p_negative", {k, i, -1}, cert.p(k, i));
      if (cert.q(k, i) < 0.0) flag("q_negative", {k, i, -1}, cert.q(k, i));
    }
    const double psum = cert.p.row(k).sum();
    if (std::abs(psum - 1.0) > tol::cert)
      flag("p_stochastic", {k, -1, -1}, psum - 1.0);
    const double qsum = cert.q.row(k).sum();
    if (std::abs(qsum - 1.0) > tol::cert)
      flag("q_stochastic", {k, -1, -1}, qsum - 1.0);

    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (cert.A[k](i, j) < 0.0) flag("A_negative", {k, i, j}, cert.A[k](i, j));
        if (cert.B[k](i, j) < 0.0) flag("B_negative", {k, i, j}, cert.B[k](i, j));
      }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double lhs = cert.A[k].row(i).sum() + cert.B[k].col(j).sum();
        const double rhs = cert.p(k, i) + cert.q(k, j);
        if (std::abs(lhs - rhs) > tol::cert)
          flag("sum_condition", {k, i, j}, lhs - rhs);
      }
  }
  return report;
}

double ann_margin(const FiniteMetricSpace& space, const AnnCertificate& cert,
                  std::span<const int> assignment) {
  const int n = cert.n();
  if (static_cast<int>(assignment.size()) != n)
    throw std::invalid_argument("ann_margin: assignment size mismatch");
  for (int i : assignment)
    if (i < 0 || i >= space.size())
      throw std::out_of_range("ann_margin: point index out of range");

  double margin = 0.0;
  for (int k = 0; k < cert.m(); ++k) {
    const double ck = cert.c[k];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double d = space.dist(assignment[i], assignment[j]);
        const double sq = d * d;
        margin += ck * cert.p(k, i) * cert.q(k, j) * sq;
        const double a = cert.A[k](i, j);
        const double b = cert.B[k](i, j);
        if (a + b > 0.0) margin -= ck * (a * b) / (a + b) * sq;
      }
  }
  return margin;
}

QuadraticForm ann_induced_form(const AnnCertificate& cert) {
  const int n = cert.n();
  Eigen::MatrixXd coeff = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < cert.m(); ++k) {
    const double ck = cert.c[k];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        double w = ck * cert.p(k, i) * cert.q(k, j);
        const double a = cert.A[k](i, j);
        const double b = cert.B[k](i, j);
        if (a + b > 0.0) w -= ck * (a * b) / (a + b);
        coeff(i, j) += 0.5 * w;
        coeff(j, i) += 0.5 * w;
      }
  }
  return QuadraticForm::from_coeff(std::move(coeff));
}

AnnCertificate ann_sample(int n, int m, std::uint64_t seed) {
  if (n < 2 || m < 1) throw std::invalid_argument("ann_sample: need n>=2, m>=1");
  std::mt19937_64 rng(seed);
  std::gamma_distribution<double> gamma(1.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  auto dirichlet = [&](int size) {
    Eigen::VectorXd v(size);
    double total = 0.0;
    for (int i = 0; i < size; ++i) {
      v[i] = gamma(rng);
      total += v[i];
    }
    if (total <= 0.0) {
      v.setConstant(1.0);
      total = size;
    }
    return Eigen::VectorXd(v / total);
  };

  AnnCertificate cert;
  cert.c.resize(m);
  cert.p.resize(m, n);
  cert.q.resize(m, n);
  cert.A.assign(m, Eigen::MatrixXd::Zero(n, n));
  cert.B.assign(m, Eigen::MatrixXd::Zero(n, n));
  for (int k = 0; k < m; ++k) {
    cert.c[k] = 0.5 + unif(rng);
    cert.p.row(k) = dirichlet(n).transpose();
    cert.q.row(k) = dirichlet(n).transpose();
    const double kappa_lo = -cert.p.row(k).minCoeff();
    const double kappa_hi = cert.q.row(k).minCoeff();
    const double kappa = kappa_lo + (kappa_hi - kappa_lo) * unif(rng);
    for (int i = 0; i < n; ++i)
      cert.A[k].row(i) = (cert.p(k, i) + kappa) * dirichlet(n).transpose();
    for (int j = 0; j < n; ++j)
      cert.B[k].col(j) = (cert.q(k, j) - kappa) * dirichlet(n);
  }
  return cert;
}

AnnCertificate ann_from_boxtimes(const BoxtimesParams& params) {
  const double s = params.s, t = params.t;
  if (!(s >= 0 && s <= 1 && t >= 0 && t <= 1))
    throw std::invalid_argument("ann_from_boxtimes: params must lie in [0,1]");
  AnnCertificate cert;
  cert.c = Eigen::VectorXd::Constant(1, 2.0);
  cert.p.resize(1, 4);
  cert.p << (1 - s) / 2, (1 - t) / 2, s / 2, t / 2;
  cert.q = cert.p;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(4, 4);
  A(0, 2) = (1 - s) / 2;  // harmonic mass on the diagonal pair (x,z)
  A(2, 0) = s / 2;
  A(1, 3) = (1 - t) / 2;  // and on (y,w)
  A(3, 1) = t / 2;
  cert.A = {A};
  cert.B = {A.transpose()};
  return cert;
}

}  // namespace cat0
