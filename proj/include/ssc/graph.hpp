#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ssc/errors.hpp"
#include "ssc/solvers.hpp"

namespace ssc {

// Symmetric nonnegative similarity weights with zero diagonal. Entries at or
// below zero_threshold are treated as absent edges.
struct SimilarityGraph {
  Eigen::MatrixXd weights;
  double zero_threshold = 0.0;

  int size() const { return static_cast<int>(weights.rows()); }
};

// W_ij = |C_ji| + |C_ij|. The threshold defaults to 1e-6 times the largest
// weight; iterative solvers never produce exact zeros.
SimilarityGraph symmetrize(const CoefficientMatrix& coeffs);

// Maximal connected vertex sets of the super-threshold edge graph, each
// sorted ascending, ordered by smallest member.
std::vector<std::vector<int>> connected_components(const SimilarityGraph& g);

// True iff every super-threshold weight joins two same-label vertices.
bool sep_holds(const SimilarityGraph& g,
               const Eigen::Ref<const Eigen::VectorXi>& truth);

// Cross-cluster edge mass divided by same-cluster edge mass.
double relative_violation(const SimilarityGraph& g,
                          const Eigen::Ref<const Eigen::VectorXi>& truth);

}  // namespace ssc
