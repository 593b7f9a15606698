#include "cat0/quadratic_form.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

#include "cat0/tolerances.hpp"

namespace cat0 {

QuadraticForm QuadraticForm::from_coeff(Eigen::MatrixXd coeff) {
  if (coeff.rows() != coeff.cols())
    throw std::invalid_argument("QuadraticForm: coefficient matrix not square");
  if (!coeff.isApprox(coeff.transpose(), 0.0))
    throw std::invalid_argument("QuadraticForm: coefficient matrix not symmetric");
  if (coeff.diagonal().cwiseAbs().maxCoeff() != 0.0)
    throw std::invalid_argument("QuadraticForm: nonzero diagonal");
  return QuadraticForm{std::move(coeff)};
}

QuadraticForm QuadraticForm::zero(int k) {
  return QuadraticForm{Eigen::MatrixXd::Zero(k, k)};
}

void QuadraticForm::add_pair(int i, int j, double w) {
  coeff(i, j) += 0.5 * w;
  coeff(j, i) += 0.5 * w;
}

double evaluate_form(const QuadraticForm& form, const FiniteMetricSpace& space,
                     std::span<const int> assignment) {
  const int k = form.size();
  if (static_cast<int>(assignment.size()) != k)
    throw std::invalid_argument("evaluate_form: assignment size mismatch");
  for (int i : assignment)
    if (i < 0 || i >= space.size())
      throw std::out_of_range("evaluate_form: point index out of range");
  double value = 0.0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const double c = form.coeff(i, j);
      if (c == 0.0) continue;
      const double d = space.dist(assignment[i], assignment[j]);
      value += c * d * d;
    }
  return value;
}

double evaluate_form(const QuadraticForm& form, const FiniteMetricSpace& space,
                     std::span<const std::string> assignment) {
  std::vector<int> idx;
  idx.reserve(assignment.size());
  for (const auto& l : assignment) idx.push_back(space.index_of(l));
  return evaluate_form(form, space, idx);
}

Eigen::MatrixXd signed_laplacian(const QuadraticForm& form) {
  const int k = form.size();
  Eigen::MatrixXd lap = -form.coeff;
  for (int i = 0; i < k; ++i) lap(i, i) = form.coeff.row(i).sum();
  return lap;
}

double laplacian_min_eigenvalue(const QuadraticForm& form) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(signed_laplacian(form),
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool laplacian_psd_check(const QuadraticForm& form) {
  const double scale = std::max(1.0, form.coeff.cwiseAbs().maxCoeff());
  return laplacian_min_eigenvalue(form) >= -tol::eig * scale;
}

}  // namespace cat0
