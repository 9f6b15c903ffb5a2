#pragma once

#include <Eigen/Dense>
#include <optional>
#include <utility>
#include <vector>

#include "ssc/solvers.hpp"
#include "ssc/subspace.hpp"

namespace ssc {

// Quantities entering the clustering-consistency conditions, computed on a
// concrete instance.
struct DiagnosticsReport {
  Eigen::VectorXd inradii;                 // rho_l per cluster
  Eigen::VectorXd restricted_eigenvalues;  // sigma_l per cluster
  std::optional<std::pair<double, double>> lambda_interval;
  bool separation_ok = false;
  bool noise_ok = false;
  double mu_eps = 0.0;
  double xi = 0.0;
};

// Inradius of conv(+-points) computed in subspace coordinates as the
// reciprocal circumradius of the polar polytope {u : ||X^T u||_inf <= 1},
// by exact vertex enumeration. With leave_out, that column is excluded.
// Enumeration is limited to d <= 5 and at most 30 points.
double inradius(const Eigen::Ref<const Eigen::MatrixXd>& points,
                std::optional<int> leave_out = std::nullopt);

// min over i of inradius(points, i): the leave-one-out inradius rho_l.
double inradius_leave_one_out_min(
    const Eigen::Ref<const Eigen::MatrixXd>& points);

// Minimum d-th singular value over all d-column subsets of cluster_points.
// Subset count is limited to 10^6.
double restricted_eigenvalue(
    const Eigen::Ref<const Eigen::MatrixXd>& cluster_points, int d);

// Admissible tuning-parameter interval
// ( max_l 2 xi (1+xi)^2 (1 + 1/rho_l),  min_l rho_l sigma_l / 2 ),
// or nullopt when the lower end reaches the upper.
std::optional<std::pair<double, double>> lambda_range(
    double xi, const Eigen::Ref<const Eigen::VectorXd>& rho,
    const Eigen::Ref<const Eigen::VectorXd>& sigma);

// Fills a DiagnosticsReport for noiseless X with perturbation E and
// ground-truth labels, checking the subspace-separation and noise-magnitude
// conditions for intrinsic dimension d.
DiagnosticsReport check_recovery_conditions(
    const Eigen::Ref<const Eigen::MatrixXd>& x,
    const Eigen::Ref<const Eigen::MatrixXd>& e,
    const Eigen::Ref<const Eigen::VectorXi>& labels, int d);

// Per column: does the numerical support have at least d entries?
std::vector<bool> verify_support_bound(const CoefficientMatrix& coeffs, int d);

// For a unit vector u inside the cluster's span: checks
// max_{i != leave_out} |<u, x_i>| >= inradius(points, leave_out) - 1e-10.
bool dual_direction_check(const Eigen::Ref<const Eigen::VectorXd>& u,
                          const Eigen::Ref<const Eigen::MatrixXd>& cluster,
                          std::optional<int> leave_out = std::nullopt);

}  // namespace ssc
