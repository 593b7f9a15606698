#pragma once

#include <cstdint>
#include <vector>

#include "cat0/boxtimes.hpp"
#include "cat0/quadratic_form.hpp"
#include "cat0/validation.hpp"

namespace cat0 {

/// Certificate for one member of the transport-style inequality family on n
/// points:
///   sum_k c_k sum_{i,j : a+b>0} (a_ij^k b_ij^k)/(a_ij^k + b_ij^k) d(x_i,x_j)^2
///     <= sum_k c_k sum_{i,j} p_i^k q_j^k d(x_i,x_j)^2,
/// where each p^k, q^k is a probability vector and the couplings satisfy
///   (row i sum of A^k) + (column j sum of B^k) = p_i^k + q_j^k  for all i,j.
/// Entries may vanish; terms with a_ij + b_ij = 0 are skipped.
struct AnnCertificate {
  Eigen::VectorXd c;                  // k-th inequality weight, positive
  Eigen::MatrixXd p, q;               // m x n, rows are probability vectors
  std::vector<Eigen::MatrixXd> A, B;  // m nonnegative n x n couplings

  int m() const { return static_cast<int>(c.size()); }
  int n() const { return static_cast<int>(p.cols()); }
};

/// Checks shapes, positivity of c, nonnegativity of p/q/A/B, stochasticity
/// of p and q within tol::cert, and the row/column sum condition within
/// tol::cert.
ValidationReport ann_validate(const AnnCertificate& cert);

/// Margin (RHS - LHS) of the certificate's inequality on `space` with
/// certificate index i mapped to point assignment[i].  Repeats allowed.
double ann_margin(const FiniteMetricSpace& space, const AnnCertificate& cert,
                  std::span<const int> assignment);

/// The certificate's inequality collapsed to a quadratic form on n indices.
QuadraticForm ann_induced_form(const AnnCertificate& cert);

/// Random certificate, deterministic in `seed`: p^k and q^k are symmetric
/// Dirichlet draws, couplings are Dirichlet rows/columns scaled to match a
/// uniformly drawn kappa in [-min_i p_i, min_j q_j], and c_k is uniform in
/// [0.5, 1.5].
AnnCertificate ann_sample(int n, int m, std::uint64_t seed);

/// Exact certificate whose induced form is the quadrilateral form at (s,t):
/// one inequality (m = 1) on four indices with c = 2,
/// p = q = ((1-s)/2, (1-t)/2, s/2, t/2) and couplings supported on the two
/// diagonal pairs.
AnnCertificate ann_from_boxtimes(const BoxtimesParams& params);

}  // namespace cat0
