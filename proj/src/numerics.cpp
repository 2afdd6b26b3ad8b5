#include "cooploc/numerics.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "cooploc/errors.hpp"

namespace cooploc {

double rank_tolerance(Eigen::Index rows, Eigen::Index cols, double sigma_max) {
  return static_cast<double>(std::max(rows, cols)) *
         std::numeric_limits<double>::epsilon() * sigma_max;
}

Eigen::MatrixXd least_squares(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() < a.cols()) throw std::invalid_argument("least_squares: underdetermined system");
  if (b.rows() != a.rows()) throw std::invalid_argument("least_squares: dimension mismatch");
  if (!a.allFinite() || !b.allFinite()) {
    throw std::invalid_argument("least_squares: non-finite entries");
  }

  Eigen::BDCSVD<Eigen::MatrixXd> dec(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = dec.singularValues();
  const double tol = rank_tolerance(a.rows(), a.cols(), sv(0));
  if (a.cols() > 0 && sv(sv.size() - 1) <= tol) {
    throw NumericalError("least_squares: rank-deficient system (unanchored component?)");
  }
  return dec.solve(b);
}

Eigen::VectorXd least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  return Eigen::VectorXd(least_squares(a, Eigen::MatrixXd(b)));
}

SvdFactors svd(const Eigen::MatrixXd& a) {
  if (!a.allFinite()) throw std::invalid_argument("svd: non-finite entries");
  Eigen::BDCSVD<Eigen::MatrixXd> dec(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return SvdFactors{dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

Eigen::MatrixXd svt_truncate(const Eigen::MatrixXd& w, int rank_bound) {
  const Eigen::Index kmax = std::min(w.rows(), w.cols());
  if (rank_bound < 1 || rank_bound > kmax) {
    throw std::invalid_argument("svt_truncate: rank bound out of range");
  }
  if (!w.allFinite()) throw std::invalid_argument("svt_truncate: non-finite entries");

  Eigen::BDCSVD<Eigen::MatrixXd> dec(w, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return dec.matrixU().leftCols(rank_bound) *
         dec.singularValues().head(rank_bound).asDiagonal() *
         dec.matrixV().leftCols(rank_bound).transpose();
}

}  // namespace cooploc
