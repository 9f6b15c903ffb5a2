#pragma once

#include <Eigen/Dense>

#include "ssc/spectral.hpp"

namespace ssc {

// Fraction of points whose predicted label matches the truth under the best
// relabeling of the predicted clusters. Exhaustive over permutations for up
// to 10 clusters, optimal assignment above that.
double accuracy(const Eigen::Ref<const Eigen::VectorXi>& predicted,
                const Eigen::Ref<const Eigen::VectorXi>& truth);

inline double accuracy(const ClusterAssignment& predicted,
                       const Eigen::Ref<const Eigen::VectorXi>& truth) {
  return accuracy(predicted.labels, truth);
}

// Maximum-sum assignment of a square score matrix; returns the column
// assigned to each row.
Eigen::VectorXi max_sum_assignment(
    const Eigen::Ref<const Eigen::MatrixXd>& scores);

}  // namespace ssc
