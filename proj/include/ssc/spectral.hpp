#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "ssc/graph.hpp"

namespace ssc {

// Cluster labels in 1..num_clusters, defined up to permutation.
struct ClusterAssignment {
  Eigen::VectorXi labels;
  int num_clusters = 0;
};

// Normalized spectral clustering: symmetric normalized Laplacian, bottom-L
// eigenvectors with a deterministic sign convention, row-normalized
// embedding, k-means++ with 20 restarts. Deterministic given (g, l, seed).
// Zero-degree vertices embed at the origin.
ClusterAssignment spectral_cluster(const SimilarityGraph& g, int l,
                                   std::uint64_t seed);

struct KMeansResult {
  Eigen::VectorXi labels;  // 0-based cluster index per row
  double inertia = 0.0;
};

// k-means on the rows of `points`, k-means++ seeding, best of `restarts`
// runs by inertia with ties broken toward the earlier restart.
KMeansResult kmeans(const Eigen::Ref<const Eigen::MatrixXd>& points, int k,
                    std::uint64_t seed, int restarts = 20,
                    int max_iterations = 300);

}  // namespace ssc
