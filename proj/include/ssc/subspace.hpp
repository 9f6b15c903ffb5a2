#pragma once

#include <Eigen/Dense>

#include "ssc/errors.hpp"

namespace ssc {

// A linear subspace of R^n stored as an orthonormal basis (n x d).
struct Subspace {
  Eigen::MatrixXd basis;

  int ambient_dim() const { return static_cast<int>(basis.rows()); }
  int dim() const { return static_cast<int>(basis.cols()); }

  // Validates orthonormality (B^T B = I within 1e-10) and 1 <= d <= n.
  static Subspace from_basis(Eigen::MatrixXd b);
};

inline constexpr double kDefaultRankTol = 1e-8;

// Orthonormal basis of the numerical column space of `points` (n x m).
// Rank = number of singular values above rank_tol * sigma_max.
Subspace orthonormal_basis(const Eigen::Ref<const Eigen::MatrixXd>& points,
                           double rank_tol = kDefaultRankTol);

// Canonical angles between two subspaces of the same ambient space,
// ascending, in [0, pi/2]. Length = min(dim(s), dim(t)).
Eigen::VectorXd canonical_angles(const Subspace& s, const Subspace& t);

// Squared-sine distance sum_i sin^2(phi_i) = d - ||S^T T||_F^2 between two
// subspaces of equal intrinsic dimension d. Symmetric, in [0, d].
double angular_distance(const Subspace& s, const Subspace& t);

// Perturbation bound 2 d xi^2 / sigma^2 on the squared-sine distance between
// the span of d points with d-th singular value >= sigma and the span of
// their column-wise perturbations of norm <= xi.
double wedin_subspace_bound(int d, double xi, double sigma);

// Norm of the component of column i of A orthogonal to the span of the
// remaining columns. Always >= sigma_m(A) for an n x m matrix with n >= m.
double projection_residual(const Eigen::Ref<const Eigen::MatrixXd>& a, int i);

}  // namespace ssc
