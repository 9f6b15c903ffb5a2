#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "ssc/errors.hpp"

namespace ssc {

enum class SolverKind { BasisPursuit, Lasso, ExhaustiveL0 };

// Self-expression coefficients: column i represents point i in terms of the
// other columns of the data matrix. Diagonal is exactly zero.
struct CoefficientMatrix {
  Eigen::MatrixXd coeffs;
  Eigen::VectorXd kkt_residuals;
  SolverKind kind = SolverKind::Lasso;
  double lambda = 0.0;

  // Columns whose solution is entirely zero (lambda too large, or an
  // infeasible l0 column). Surfaced as a flag instead of failing.
  std::vector<int> zero_columns() const;
};

struct LassoResult {
  Eigen::VectorXd coeff;
  double kkt_residual = 0.0;
};

struct LassoOptions {
  double tol = 1e-8;          // KKT stationarity tolerance
  double change_tol = 1e-10;  // stop when no coefficient moves more than this
  int max_sweeps = 100000;
};

// min 0.5 ||target - dictionary c||^2 + lambda ||c||_1 by cyclic coordinate
// descent with exact scalar soft-threshold updates. Throws SolverDiverged
// (carrying the last KKT residual) if the sweep cap is hit first.
LassoResult lasso(const Eigen::Ref<const Eigen::MatrixXd>& dictionary,
                  const Eigen::Ref<const Eigen::VectorXd>& target,
                  double lambda, const LassoOptions& opts = {});

// min ||c||_1 subject to ||target - dictionary c|| <= tol, solved as the
// lambda -> 0 limit of lasso with a halving continuation schedule.
// Throws Infeasible when target is farther than tol from the column span.
Eigen::VectorXd basis_pursuit(
    const Eigen::Ref<const Eigen::MatrixXd>& dictionary,
    const Eigen::Ref<const Eigen::VectorXd>& target, double tol = 1e-8);

struct L0Options {
  std::uint64_t budget = 1000000;  // max number of supports examined
};

// All supports of minimum cardinality whose least-squares fit of target has
// residual <= tol. Supports are returned in lexicographic order.
std::vector<std::vector<int>> l0_min(
    const Eigen::Ref<const Eigen::MatrixXd>& dictionary,
    const Eigen::Ref<const Eigen::VectorXd>& target, double tol,
    const L0Options& opts = {});

struct SelfExpressionParams {
  double lambda = 0.0;  // Lasso only
  double tol = 1e-8;
  LassoOptions lasso_opts;
  L0Options l0_opts;
  // Per-column choice among enumerated minimal l0 supports (empty = first).
  std::vector<int> l0_support_choice;
};

// Runs the selected solver once per column of Y against the dictionary of
// all other columns and assembles the N x N coefficient matrix with zero
// diagonal. Per-column failures are rethrown with the column index attached.
CoefficientMatrix self_expression_matrix(
    const Eigen::Ref<const Eigen::MatrixXd>& y, SolverKind kind,
    const SelfExpressionParams& params = {});

// Indices with |c_j| above rel_tol * max |c| (numerical support).
std::vector<int> support_indices(const Eigen::Ref<const Eigen::VectorXd>& c,
                                 double rel_tol = 1e-6);

}  // namespace ssc
