#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "ssc/graph.hpp"
#include "ssc/spectral.hpp"
#include "ssc/subspace.hpp"

namespace ssc {

// Output of the clustering pipelines: labels, one subspace per final
// cluster, the component-to-cluster map, and run diagnostics.
struct RecoveredStructure {
  ClusterAssignment assignment;
  std::vector<Subspace> subspaces;
  std::vector<int> component_map;  // graph component -> cluster index (0-based)
  std::vector<std::vector<int>> components;
  SimilarityGraph graph;
  std::vector<double> merge_heights;
  int small_component_points = 0;  // assigned post-merge by residual
  std::vector<int> zero_solution_columns;
  std::vector<std::string> warnings;
};

// Noiseless pipeline: normalize, basis pursuit per column, connected
// components, span per component, identify equal spans, label. The number
// of clusters is inferred from the number of distinct spans.
RecoveredStructure cluster_noiseless(
    const Eigen::Ref<const Eigen::MatrixXd>& x,
    double rank_tol = kDefaultRankTol, double equality_tol = 1e-8);

// Noisy pipeline: normalize, lasso per column, connected components, a
// d-dimensional span from d seed-chosen points per component of size >= d,
// single-linkage merging of the spans down to exactly L clusters. Points in
// smaller components are assigned afterwards by projection residual.
RecoveredStructure cluster_noisy(const Eigen::Ref<const Eigen::MatrixXd>& y,
                                 int l, int d, double lambda,
                                 std::uint64_t seed);

// Variant for graphs whose cross-cluster edges keep everything connected:
// the point groups come from spectral clustering into `oversegmentation`
// clusters (default 2L) instead of connected components; recovery and
// merging proceed as in cluster_noisy.
RecoveredStructure cluster_noisy_spectral(
    const Eigen::Ref<const Eigen::MatrixXd>& y, int l, int d, double lambda,
    std::uint64_t seed, int oversegmentation = 0);

// Single-linkage agglomeration of subspaces under angular distance until
// exactly l groups remain. Ties break toward the smaller distance, then the
// smaller pair of group indices. Returns the group index per input along
// with accepted merge heights.
struct MergeResult {
  std::vector<int> group;  // input index -> group index, 0-based
  std::vector<double> heights;
};
MergeResult merge_subspaces(const std::vector<Subspace>& subspaces, int l);

// Partition of point indices into subspace clusters.
using Partition = std::vector<std::vector<int>>;

struct StructureOptions {
  double tol = 1e-8;
  std::uint64_t budget = 1000000;
};

// Canonical minimal union-of-subspace partition: for ascending k, repeatedly
// extract a maximum-cardinality subset spanning a k-dimensional subspace
// with at least k+1 members; whatever never qualifies ends up as singletons.
Partition minimal_structure(const Eigen::Ref<const Eigen::MatrixXd>& x,
                            const StructureOptions& opts = {});

// True iff the partition is a legal outcome of the extraction above: every
// part in general position within its span, sizes matching the running
// maxima, and no leftover subset extractable at any dimension.
bool validate_minimal_structure(const Eigen::Ref<const Eigen::MatrixXd>& x,
                                const Partition& partition,
                                const StructureOptions& opts = {});

// l0 self-expression per column, then components of the induced graph and
// merging of components with identical spans. support_choice selects among
// enumerated minimal supports per column (empty = lexicographically first).
Partition l0_cluster(const Eigen::Ref<const Eigen::MatrixXd>& x,
                     const StructureOptions& opts = {},
                     const std::vector<int>& support_choice = {});

}  // namespace ssc
