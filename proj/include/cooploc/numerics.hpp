#pragma once

#include <Eigen/Core>

namespace cooploc {

/// Full (not thin) singular value decomposition A = U diag(S) V^T.
/// U is m x m, V is n x n, S holds min(m, n) values sorted descending.
struct SvdFactors {
  Eigen::MatrixXd u;
  Eigen::VectorXd singular_values;
  Eigen::MatrixXd v;
};

/// Numerical-rank cutoff: singular values at or below
/// max(m, n) * eps * sigma_max count as zero.
double rank_tolerance(Eigen::Index rows, Eigen::Index cols, double sigma_max);

/// Minimum-residual solution of the overdetermined system A x = b.
/// Requires rows >= cols and finite entries (std::invalid_argument);
/// throws NumericalError when A is numerically rank deficient, which
/// upstream means a graph component without anchors.
Eigen::VectorXd least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

/// Multi-right-hand-side variant; factors A once.
Eigen::MatrixXd least_squares(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Full SVD. Throws std::invalid_argument on non-finite entries.
SvdFactors svd(const Eigen::MatrixXd& a);

/// Best rank-<=s approximation in Frobenius norm: keeps the s largest
/// singular values, zeroes the rest (hard truncation, no soft threshold).
/// Requires 1 <= rank_bound <= min(rows, cols).
Eigen::MatrixXd svt_truncate(const Eigen::MatrixXd& w, int rank_bound);

}  // namespace cooploc
