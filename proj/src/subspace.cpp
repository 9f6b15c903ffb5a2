#include "ssc/subspace.hpp"

#include <algorithm>
#include <cmath>

namespace ssc {

Subspace Subspace::from_basis(Eigen::MatrixXd b) {
  const int n = static_cast<int>(b.rows());
  const int d = static_cast<int>(b.cols());
  if (d < 1 || d > n) {
    throw InvalidParameter("subspace dimension must satisfy 1 <= d <= n");
  }
  const Eigen::MatrixXd gram = b.transpose() * b;
  const double defect =
      (gram - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
  if (defect > 1e-10) {
    throw InvalidParameter("basis columns are not orthonormal");
  }
  return Subspace{std::move(b)};
}

Subspace orthonormal_basis(const Eigen::Ref<const Eigen::MatrixXd>& points,
                           double rank_tol) {
  if (points.cols() < 1 || points.rows() < 1) {
    throw DegenerateInput("orthonormal_basis: empty input");
  }
  if (rank_tol <= 0) {
    throw InvalidParameter("orthonormal_basis: rank_tol must be positive");
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(points, Eigen::ComputeThinU);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) {
    throw DegenerateInput("orthonormal_basis: all points are zero");
  }
  const double cutoff = rank_tol * sv(0);
  int rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff) ++rank;
  return Subspace{svd.matrixU().leftCols(rank)};
}

Eigen::VectorXd canonical_angles(const Subspace& s, const Subspace& t) {
  if (s.ambient_dim() != t.ambient_dim()) {
    throw DimensionMismatch("canonical_angles: ambient dimensions differ");
  }
  const Eigen::MatrixXd overlap = s.basis.transpose() * t.basis;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(overlap);
  Eigen::VectorXd cosines = svd.singularValues();
  // Floating error can push cosines past 1 by ~1e-15; clamp before acos.
  Eigen::VectorXd angles(cosines.size());
  for (int i = 0; i < cosines.size(); ++i) {
    angles(i) = std::acos(std::clamp(cosines(i), 0.0, 1.0));
  }
  // Singular values are descending, so the angles come out ascending.
  return angles;
}

double angular_distance(const Subspace& s, const Subspace& t) {
  if (s.ambient_dim() != t.ambient_dim()) {
    throw DimensionMismatch("angular_distance: ambient dimensions differ");
  }
  if (s.dim() != t.dim()) {
    throw DimensionMismatch(
        "angular_distance: intrinsic dimensions differ (defined for equal d)");
  }
  const double d = static_cast<double>(s.dim());
  const double affinity_sq = (s.basis.transpose() * t.basis).squaredNorm();
  return std::clamp(d - affinity_sq, 0.0, d);
}

double wedin_subspace_bound(int d, double xi, double sigma) {
  if (d < 1) throw InvalidParameter("wedin_subspace_bound: d must be >= 1");
  if (xi < 0) throw InvalidParameter("wedin_subspace_bound: xi must be >= 0");
  if (sigma <= 0) {
    throw InvalidParameter("wedin_subspace_bound: sigma must be positive");
  }
  return 2.0 * static_cast<double>(d) * xi * xi / (sigma * sigma);
}

double projection_residual(const Eigen::Ref<const Eigen::MatrixXd>& a, int i) {
  const int m = static_cast<int>(a.cols());
  if (m < 1 || a.rows() < m) {
    throw InvalidParameter("projection_residual: need n >= m >= 1");
  }
  if (i < 0 || i >= m) {
    throw InvalidParameter("projection_residual: column index out of range");
  }
  if (m == 1) return a.col(0).norm();
  Eigen::MatrixXd rest(a.rows(), m - 1);
  rest.leftCols(i) = a.leftCols(i);
  rest.rightCols(m - 1 - i) = a.rightCols(m - 1 - i);
  const Eigen::VectorXd coeff = rest.colPivHouseholderQr().solve(a.col(i));
  return (a.col(i) - rest * coeff).norm();
}

}  // namespace ssc
