#pragma once

#include <Eigen/Core>
#include <span>
#include <string>
#include <vector>

#include "cat0/metric_space.hpp"

namespace cat0 {

/// Quadratic inequality form on k formal indices: symmetric coefficient
/// matrix with zero diagonal.  Its value on a metric space under an
/// assignment of indices to points is
///   sum_{i,j} coeff(i,j) * d(x_i, x_j)^2,
/// and "the form holds" means the value is >= 0.
struct QuadraticForm {
  Eigen::MatrixXd coeff;

  int size() const { return static_cast<int>(coeff.rows()); }

  static QuadraticForm from_coeff(Eigen::MatrixXd coeff);

  /// Zero form on k indices.
  static QuadraticForm zero(int k);

  /// Adds w/2 to both (i,j) and (j,i) so the unordered pair carries w.
  void add_pair(int i, int j, double w);
};

/// Value of `form` on `space` with form index i mapped to point
/// assignment[i].  Repeated points are allowed.
double evaluate_form(const QuadraticForm& form, const FiniteMetricSpace& space,
                     std::span<const int> assignment);

double evaluate_form(const QuadraticForm& form, const FiniteMetricSpace& space,
                     std::span<const std::string> assignment);

/// Signed graph Laplacian of the form's coefficients: L(i,j) = -coeff(i,j)
/// for i != j and L(i,i) = sum_{j != i} coeff(i,j).  The form holds on every
/// Hilbert (hence every Euclidean) configuration iff L is PSD.
Eigen::MatrixXd signed_laplacian(const QuadraticForm& form);

/// Smallest eigenvalue of the signed Laplacian.
double laplacian_min_eigenvalue(const QuadraticForm& form);

/// True iff the signed Laplacian is PSD within tol::eig, scaled by the
/// magnitude of the form's coefficients.
bool laplacian_psd_check(const QuadraticForm& form);

}  // namespace cat0
