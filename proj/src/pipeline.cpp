#include "ssc/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ssc/combinatorics.hpp"
#include "ssc/datagen.hpp"
#include "ssc/random.hpp"

namespace ssc {

namespace {

Eigen::MatrixXd select_columns(const Eigen::Ref<const Eigen::MatrixXd>& m,
                               const std::vector<int>& idx) {
  Eigen::MatrixXd out(m.rows(), idx.size());
  for (int t = 0; t < static_cast<int>(idx.size()); ++t) {
    out.col(t) = m.col(idx[t]);
  }
  return out;
}

// Groups subspaces by equality: same dimension and angular distance below
// eq_tol. Group ids are assigned in first-appearance order.
std::vector<int> group_equal_spans(const std::vector<Subspace>& spans,
                                   double eq_tol) {
  std::vector<int> group(spans.size(), -1);
  int next = 0;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    if (group[i] >= 0) continue;
    group[i] = next;
    for (std::size_t j = i + 1; j < spans.size(); ++j) {
      if (group[j] >= 0 || spans[j].dim() != spans[i].dim()) continue;
      if (angular_distance(spans[i], spans[j]) < eq_tol) {
        group[j] = static_cast<int>(group[i]);
      }
    }
    ++next;
  }
  return group;
}

// Sanity check for components whose ranks disagree while their spans
// coincide: the union of their points must still span the larger space.
void check_rank_consistency(const Eigen::Ref<const Eigen::MatrixXd>& x,
                            const std::vector<std::vector<int>>& components,
                            const std::vector<Subspace>& spans,
                            double rank_tol) {
  for (std::size_t a = 0; a < spans.size(); ++a) {
    for (std::size_t b = a + 1; b < spans.size(); ++b) {
      if (spans[a].dim() == spans[b].dim()) continue;
      const Subspace& small = spans[a].dim() < spans[b].dim() ? spans[a]
                                                              : spans[b];
      const Subspace& large = spans[a].dim() < spans[b].dim() ? spans[b]
                                                              : spans[a];
      const double containment =
          small.dim() -
          (large.basis.transpose() * small.basis).squaredNorm();
      if (containment >= 1e-8) continue;
      std::vector<int> joint;
      joint.insert(joint.end(), components[a].begin(), components[a].end());
      joint.insert(joint.end(), components[b].begin(), components[b].end());
      const Subspace united = orthonormal_basis(select_columns(x, joint),
                                                rank_tol);
      if (united.dim() != large.dim()) {
        throw StructureInconsistent(
            "components " + std::to_string(a) + " and " + std::to_string(b) +
            " span the same space but were assigned different ranks");
      }
    }
  }
}

}  // namespace

MergeResult merge_subspaces(const std::vector<Subspace>& subspaces, int l) {
  const int m = static_cast<int>(subspaces.size());
  if (l < 1 || m < l) {
    throw InvalidParameter("merge_subspaces: need at least L subspaces");
  }

  Eigen::MatrixXd dist(m, m);
  for (int i = 0; i < m; ++i) {
    dist(i, i) = 0.0;
    for (int j = i + 1; j < m; ++j) {
      dist(i, j) = angular_distance(subspaces[i], subspaces[j]);
      dist(j, i) = dist(i, j);
    }
  }

  std::vector<int> group(m);
  std::iota(group.begin(), group.end(), 0);
  MergeResult result;
  int groups = m;
  while (groups > l) {
    // Single-linkage distance between groups, identified by their smallest
    // member; ties break toward the smaller index pair.
    double best = std::numeric_limits<double>::infinity();
    int best_a = -1, best_b = -1;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        if (group[i] == group[j]) continue;
        const int a = std::min(group[i], group[j]);
        const int b = std::max(group[i], group[j]);
        const double d = dist(std::min(i, j), std::max(i, j));
        if (d < best || (d == best && (a < best_a ||
                                       (a == best_a && b < best_b)))) {
          best = d;
          best_a = a;
          best_b = b;
        }
      }
    }
    for (int i = 0; i < m; ++i) {
      if (group[i] == best_b) group[i] = best_a;
    }
    result.heights.push_back(best);
    --groups;
  }

  // Compact group ids to 0..l-1 ordered by smallest member.
  std::vector<int> order;
  for (int i = 0; i < m; ++i) {
    if (std::find(order.begin(), order.end(), group[i]) == order.end()) {
      order.push_back(group[i]);
    }
  }
  result.group.resize(m);
  for (int i = 0; i < m; ++i) {
    result.group[i] = static_cast<int>(
        std::find(order.begin(), order.end(), group[i]) - order.begin());
  }
  return result;
}

RecoveredStructure cluster_noiseless(
    const Eigen::Ref<const Eigen::MatrixXd>& x, double rank_tol,
    double equality_tol) {
  const Eigen::MatrixXd normalized = normalize_columns(x);
  SelfExpressionParams params;
  params.tol = equality_tol;
  const CoefficientMatrix coeffs =
      self_expression_matrix(normalized, SolverKind::BasisPursuit, params);

  RecoveredStructure rs;
  rs.graph = symmetrize(coeffs);
  rs.components = connected_components(rs.graph);
  rs.zero_solution_columns = coeffs.zero_columns();

  std::vector<Subspace> spans;
  spans.reserve(rs.components.size());
  for (const auto& comp : rs.components) {
    spans.push_back(
        orthonormal_basis(select_columns(normalized, comp), rank_tol));
  }
  check_rank_consistency(normalized, rs.components, spans, rank_tol);

  rs.component_map = group_equal_spans(spans, 1e-8);
  const int l =
      rs.component_map.empty()
          ? 0
          : *std::max_element(rs.component_map.begin(),
                              rs.component_map.end()) + 1;
  rs.subspaces.resize(l, Subspace{});
  for (std::size_t c = 0; c < spans.size(); ++c) {
    const int g = rs.component_map[c];
    if (rs.subspaces[g].basis.size() == 0) rs.subspaces[g] = spans[c];
  }

  rs.assignment.labels.resize(x.cols());
  rs.assignment.num_clusters = l;
  for (std::size_t c = 0; c < rs.components.size(); ++c) {
    for (int i : rs.components[c]) {
      rs.assignment.labels(i) = rs.component_map[c] + 1;
    }
  }
  return rs;
}

namespace {

// Shared back end of the noisy pipelines: estimate a d-dimensional span
// per group of size >= d, merge the spans down to l clusters, and label.
// Span estimation is either from d seed-chosen points (the randomized
// subspace-recovery step) or the top-d singular directions of the whole
// group. rs arrives with graph/components/warnings filled.
RecoveredStructure assemble_noisy_clusters(
    const Eigen::Ref<const Eigen::MatrixXd>& normalized, RecoveredStructure rs,
    int l, int d, std::uint64_t seed, bool svd_spans,
    bool membership_labels);

}  // namespace

RecoveredStructure cluster_noisy(const Eigen::Ref<const Eigen::MatrixXd>& y,
                                 int l, int d, double lambda,
                                 std::uint64_t seed) {
  if (l < 1 || d < 1) {
    throw InvalidParameter("cluster_noisy: need L >= 1 and d >= 1");
  }
  if (lambda <= 0) {
    throw InvalidParameter("cluster_noisy: lambda must be positive");
  }
  const Eigen::MatrixXd normalized = normalize_columns(y);
  SelfExpressionParams params;
  params.lambda = lambda;
  const CoefficientMatrix coeffs =
      self_expression_matrix(normalized, SolverKind::Lasso, params);

  RecoveredStructure rs;
  rs.graph = symmetrize(coeffs);
  rs.components = connected_components(rs.graph);
  rs.zero_solution_columns = coeffs.zero_columns();
  if (!rs.zero_solution_columns.empty()) {
    rs.warnings.push_back(
        std::to_string(rs.zero_solution_columns.size()) +
        " column(s) solved to zero (lambda may be too large)");
  }
  return assemble_noisy_clusters(normalized, std::move(rs), l, d, seed,
                                 /*svd_spans=*/false,
                                 /*membership_labels=*/false);
}

RecoveredStructure cluster_noisy_spectral(
    const Eigen::Ref<const Eigen::MatrixXd>& y, int l, int d, double lambda,
    std::uint64_t seed, int oversegmentation) {
  if (l < 1 || d < 1) {
    throw InvalidParameter("cluster_noisy_spectral: need L >= 1 and d >= 1");
  }
  if (lambda <= 0) {
    throw InvalidParameter("cluster_noisy_spectral: lambda must be positive");
  }
  int k = oversegmentation > 0 ? oversegmentation : 2 * l;
  k = std::min(k, static_cast<int>(y.cols()));
  if (k < l) {
    throw InvalidParameter(
        "cluster_noisy_spectral: oversegmentation below L");
  }
  const Eigen::MatrixXd normalized = normalize_columns(y);
  SelfExpressionParams params;
  params.lambda = lambda;
  const CoefficientMatrix coeffs =
      self_expression_matrix(normalized, SolverKind::Lasso, params);

  RecoveredStructure rs;
  rs.graph = symmetrize(coeffs);
  rs.zero_solution_columns = coeffs.zero_columns();
  if (!rs.zero_solution_columns.empty()) {
    rs.warnings.push_back(
        std::to_string(rs.zero_solution_columns.size()) +
        " column(s) solved to zero (lambda may be too large)");
  }
  const ClusterAssignment over = spectral_cluster(rs.graph, k, seed);
  std::vector<std::vector<int>> groups(k);
  for (int i = 0; i < over.labels.size(); ++i) {
    groups[over.labels(i) - 1].push_back(i);
  }
  // Drop empty groups; order by smallest member for determinism.
  std::vector<std::vector<int>> kept;
  for (auto& g : groups) {
    if (!g.empty()) kept.push_back(std::move(g));
  }
  std::sort(kept.begin(), kept.end());
  rs.components = std::move(kept);
  return assemble_noisy_clusters(normalized, std::move(rs), l, d, seed,
                                 /*svd_spans=*/true,
                                 /*membership_labels=*/true);
}

namespace {

RecoveredStructure assemble_noisy_clusters(
    const Eigen::Ref<const Eigen::MatrixXd>& normalized, RecoveredStructure rs,
    int l, int d, std::uint64_t seed, bool svd_spans,
    bool membership_labels) {
  Rng rng(seed);
  std::vector<int> big;
  std::vector<Subspace> spans;
  for (std::size_t c = 0; c < rs.components.size(); ++c) {
    const auto& comp = rs.components[c];
    if (static_cast<int>(comp.size()) < d) continue;
    big.push_back(static_cast<int>(c));
    if (svd_spans) {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(select_columns(normalized, comp),
                                            Eigen::ComputeThinU);
      const Eigen::VectorXd& sv = svd.singularValues();
      int rank = 0;
      while (rank < sv.size() && sv(rank) > kDefaultRankTol * sv(0)) ++rank;
      spans.push_back(Subspace{svd.matrixU().leftCols(std::min(d, rank))});
      continue;
    }
    // Partial Fisher-Yates draw of exactly d member points.
    std::vector<int> pool = comp;
    std::vector<int> chosen(d);
    for (int t = 0; t < d; ++t) {
      const int pick = t + rng.uniform_int(static_cast<int>(pool.size()) - t);
      std::swap(pool[t], pool[pick]);
      chosen[t] = pool[t];
    }
    spans.push_back(orthonormal_basis(select_columns(normalized, chosen)));
  }
  if (static_cast<int>(big.size()) < l) {
    throw InsufficientComponents(
        "noisy clustering: only " + std::to_string(big.size()) +
        " components have at least d points, need " + std::to_string(l));
  }

  const int common_dim = spans.front().dim();
  for (const Subspace& s : spans) {
    if (s.dim() != common_dim) {
      throw StructureInconsistent(
          "noisy clustering: recovered subspace dimensions disagree");
    }
  }
  if (common_dim < d) {
    rs.warnings.push_back("recovered subspaces have rank " +
                          std::to_string(common_dim) + " < d = " +
                          std::to_string(d));
  }

  const MergeResult merge = merge_subspaces(spans, l);
  rs.merge_heights = merge.heights;

  rs.component_map.assign(rs.components.size(), -1);
  for (std::size_t t = 0; t < big.size(); ++t) {
    rs.component_map[big[t]] = merge.group[t];
  }

  rs.subspaces.resize(l, Subspace{});
  if (membership_labels) {
    // Re-estimate each merged subspace from all points of its groups.
    for (int g = 0; g < l; ++g) {
      std::vector<int> members;
      for (std::size_t t = 0; t < big.size(); ++t) {
        if (merge.group[t] != g) continue;
        const auto& comp = rs.components[big[t]];
        members.insert(members.end(), comp.begin(), comp.end());
      }
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(select_columns(normalized, members),
                                            Eigen::ComputeThinU);
      const Eigen::VectorXd& sv = svd.singularValues();
      int rank = 0;
      while (rank < sv.size() && sv(rank) > kDefaultRankTol * sv(0)) ++rank;
      rs.subspaces[g] = Subspace{svd.matrixU().leftCols(std::min(d, rank))};
    }
  } else {
    for (std::size_t t = 0; t < big.size(); ++t) {
      const int g = merge.group[t];
      if (rs.subspaces[g].basis.size() == 0) rs.subspaces[g] = spans[t];
    }
  }

  rs.assignment.labels.resize(normalized.cols());
  rs.assignment.num_clusters = l;
  for (std::size_t c = 0; c < rs.components.size(); ++c) {
    if (rs.component_map[c] < 0) continue;
    for (int i : rs.components[c]) {
      rs.assignment.labels(i) = rs.component_map[c] + 1;
    }
  }
  // Nearest merged subspace by projection residual (minimum over the
  // group's recovered subspaces): applied to every point in membership
  // mode, otherwise only to points in groups below d members.
  for (std::size_t c = 0; c < rs.components.size(); ++c) {
    if (!membership_labels && rs.component_map[c] >= 0) continue;
    for (int i : rs.components[c]) {
      double best = std::numeric_limits<double>::infinity();
      int best_group = 0;
      if (membership_labels) {
        for (int g = 0; g < l; ++g) {
          const auto& b = rs.subspaces[g].basis;
          const double p =
              (normalized.col(i) - b * (b.transpose() * normalized.col(i)))
                  .norm();
          if (p < best) {
            best = p;
            best_group = g;
          }
        }
      } else {
        for (std::size_t t = 0; t < big.size(); ++t) {
          const Subspace& s = spans[t];
          const double p =
              (normalized.col(i) -
               s.basis * (s.basis.transpose() * normalized.col(i)))
                  .norm();
          if (p < best) {
            best = p;
            best_group = merge.group[t];
          }
        }
      }
      rs.assignment.labels(i) = best_group + 1;
      if (rs.component_map[c] < 0) ++rs.small_component_points;
    }
  }

  // Flag merges whose accepted height crowds the remaining separation.
  if (!rs.merge_heights.empty() && l > 1) {
    double min_between = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < spans.size(); ++a) {
      for (std::size_t b = a + 1; b < spans.size(); ++b) {
        if (merge.group[a] == merge.group[b]) continue;
        min_between =
            std::min(min_between, angular_distance(spans[a], spans[b]));
      }
    }
    const double max_height =
        *std::max_element(rs.merge_heights.begin(), rs.merge_heights.end());
    if (max_height > 0.5 * min_between) {
      rs.warnings.push_back(
          "merged subspaces are mutually distant: max merge height " +
          std::to_string(max_height) + " vs inter-group separation " +
          std::to_string(min_between));
    }
  }
  return rs;
}

}  // namespace

namespace {

// Rank of a column subset with relative tolerance.
int subset_rank(const Eigen::Ref<const Eigen::MatrixXd>& x,
                const std::vector<int>& idx, double tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(select_columns(x, idx));
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  while (rank < sv.size() && sv(rank) > tol * sv(0)) ++rank;
  return rank;
}

struct Extraction {
  int count = 0;
  std::vector<int> members;
};

// Maximum-cardinality subset of `remaining` lying within tol of some
// k-dimensional span generated by k of its members. Ties prefer the
// lexicographically smallest member set. `counter`, when given, enforces
// the enumeration budget.
Extraction max_rank_k_subset(const Eigen::Ref<const Eigen::MatrixXd>& x,
                             const std::vector<int>& remaining, int k,
                             double tol, std::uint64_t* counter,
                             std::uint64_t budget) {
  Extraction best;
  const int m = static_cast<int>(remaining.size());
  if (m < k) return best;
  Eigen::MatrixXd sub(x.rows(), k);
  const bool completed = for_each_combination(
      m, k, [&](const std::vector<int>& pick) -> bool {
        if (counter && ++(*counter) > budget) return false;
        for (int t = 0; t < k; ++t) sub.col(t) = x.col(remaining[pick[t]]);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(sub, Eigen::ComputeThinU);
        const Eigen::VectorXd& sv = svd.singularValues();
        if (sv(0) == 0.0 || sv(k - 1) <= tol * sv(0)) return true;
        const Eigen::MatrixXd basis = svd.matrixU().leftCols(k);
        std::vector<int> members;
        for (int j : remaining) {
          const Eigen::VectorXd r =
              x.col(j) - basis * (basis.transpose() * x.col(j));
          if (r.norm() <= tol * x.col(j).norm()) members.push_back(j);
        }
        const int count = static_cast<int>(members.size());
        if (count > best.count ||
            (count == best.count &&
             std::lexicographical_compare(members.begin(), members.end(),
                                          best.members.begin(),
                                          best.members.end()))) {
          best.count = count;
          best.members = std::move(members);
        }
        return true;
      });
  if (!completed) {
    throw BudgetExceeded("minimal structure: enumeration budget exceeded");
  }
  return best;
}

void require_nonzero_columns(const Eigen::Ref<const Eigen::MatrixXd>& x) {
  for (int j = 0; j < x.cols(); ++j) {
    if (x.col(j).norm() == 0.0) {
      throw DegenerateInput("zero column " + std::to_string(j));
    }
  }
}

}  // namespace

Partition minimal_structure(const Eigen::Ref<const Eigen::MatrixXd>& x,
                            const StructureOptions& opts) {
  require_nonzero_columns(x);
  const int n = static_cast<int>(x.rows());
  std::vector<int> remaining(x.cols());
  std::iota(remaining.begin(), remaining.end(), 0);

  Partition parts;
  std::uint64_t counter = 0;
  for (int k = 1; k <= n && static_cast<int>(remaining.size()) > k; ++k) {
    while (true) {
      const Extraction e = max_rank_k_subset(x, remaining, k, opts.tol,
                                             &counter, opts.budget);
      if (e.count < k + 1) break;
      parts.push_back(e.members);
      std::vector<int> rest;
      for (int j : remaining) {
        if (!std::binary_search(e.members.begin(), e.members.end(), j)) {
          rest.push_back(j);
        }
      }
      remaining = std::move(rest);
      if (static_cast<int>(remaining.size()) <= k) break;
    }
  }
  for (int j : remaining) parts.push_back({j});
  return parts;
}

bool validate_minimal_structure(const Eigen::Ref<const Eigen::MatrixXd>& x,
                                const Partition& partition,
                                const StructureOptions& opts) {
  const int total = static_cast<int>(x.cols());
  std::vector<int> seen(total, 0);
  for (const auto& part : partition) {
    for (int j : part) {
      if (j < 0 || j >= total || seen[j]++) return false;
    }
    if (part.empty()) return false;
  }
  for (int j = 0; j < total; ++j) {
    if (!seen[j] || x.col(j).norm() == 0.0) return false;
  }

  // Per-part checks: rank, cardinality, general position.
  std::vector<int> dims(partition.size());
  for (std::size_t p = 0; p < partition.size(); ++p) {
    const auto& part = partition[p];
    dims[p] = subset_rank(x, part, opts.tol);
    if (dims[p] == 0) return false;
    if (part.size() > 1 &&
        static_cast<int>(part.size()) < dims[p] + 1) {
      return false;  // could be split into smaller clusters
    }
    for (int m = 2; m <= dims[p]; ++m) {
      const bool ok = for_each_combination(
          static_cast<int>(part.size()), m,
          [&](const std::vector<int>& pick) -> bool {
            std::vector<int> idx(pick.size());
            for (std::size_t t = 0; t < pick.size(); ++t) {
              idx[t] = part[pick[t]];
            }
            return subset_rank(x, idx, opts.tol) == m;
          });
      if (!ok) return false;
    }
  }

  // Greedy consistency: parts must be extractable in ascending dimension,
  // largest first, and nothing further extractable at each dimension.
  std::vector<int> remaining(total);
  std::iota(remaining.begin(), remaining.end(), 0);
  const int n = static_cast<int>(x.rows());
  for (int k = 1; k <= n; ++k) {
    std::vector<int> at_k;
    for (std::size_t p = 0; p < partition.size(); ++p) {
      if (dims[p] == k && partition[p].size() >= 2) {
        at_k.push_back(static_cast<int>(p));
      }
    }
    std::sort(at_k.begin(), at_k.end(), [&](int a, int b) {
      if (partition[a].size() != partition[b].size()) {
        return partition[a].size() > partition[b].size();
      }
      return partition[a] < partition[b];
    });
    for (int p : at_k) {
      const Extraction e =
          max_rank_k_subset(x, remaining, k, opts.tol, nullptr, 0);
      if (e.count != static_cast<int>(partition[p].size())) return false;
      std::vector<int> sorted_part = partition[p];
      std::sort(sorted_part.begin(), sorted_part.end());
      std::vector<int> rest;
      for (int j : remaining) {
        if (!std::binary_search(sorted_part.begin(), sorted_part.end(), j)) {
          rest.push_back(j);
        }
      }
      remaining = std::move(rest);
    }
    if (static_cast<int>(remaining.size()) > k) {
      const Extraction e =
          max_rank_k_subset(x, remaining, k, opts.tol, nullptr, 0);
      if (e.count >= k + 1) return false;  // an extraction was missed
    }
  }
  return true;
}

Partition l0_cluster(const Eigen::Ref<const Eigen::MatrixXd>& x,
                     const StructureOptions& opts,
                     const std::vector<int>& support_choice) {
  require_nonzero_columns(x);
  SelfExpressionParams params;
  params.tol = opts.tol;
  params.l0_opts.budget = opts.budget;
  params.l0_support_choice = support_choice;
  const CoefficientMatrix coeffs =
      self_expression_matrix(x, SolverKind::ExhaustiveL0, params);

  const SimilarityGraph graph = symmetrize(coeffs);
  const auto components = connected_components(graph);
  std::vector<Subspace> spans;
  spans.reserve(components.size());
  for (const auto& comp : components) {
    spans.push_back(orthonormal_basis(select_columns(x, comp), opts.tol));
  }
  const std::vector<int> group = group_equal_spans(spans, 1e-8);

  const int l = group.empty()
                    ? 0
                    : *std::max_element(group.begin(), group.end()) + 1;
  Partition parts(l);
  for (std::size_t c = 0; c < components.size(); ++c) {
    auto& part = parts[group[c]];
    part.insert(part.end(), components[c].begin(), components[c].end());
  }
  for (auto& part : parts) std::sort(part.begin(), part.end());
  return parts;
}

}  // namespace ssc
