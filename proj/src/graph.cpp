#include "ssc/graph.hpp"

#include <algorithm>
#include <cmath>

namespace ssc {

SimilarityGraph symmetrize(const CoefficientMatrix& coeffs) {
  const int n = static_cast<int>(coeffs.coeffs.rows());
  if (coeffs.coeffs.cols() != n) {
    throw DimensionMismatch("symmetrize: coefficient matrix must be square");
  }
  SimilarityGraph g;
  g.weights = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double w =
          std::abs(coeffs.coeffs(j, i)) + std::abs(coeffs.coeffs(i, j));
      g.weights(i, j) = w;
      g.weights(j, i) = w;
    }
  }
  const double peak = g.weights.maxCoeff();
  g.zero_threshold = 1e-6 * peak;
  return g;
}

std::vector<std::vector<int>> connected_components(const SimilarityGraph& g) {
  const int n = g.size();
  std::vector<int> component(n, -1);
  std::vector<std::vector<int>> components;
  std::vector<int> stack;
  for (int start = 0; start < n; ++start) {
    if (component[start] >= 0) continue;
    const int id = static_cast<int>(components.size());
    components.emplace_back();
    stack.push_back(start);
    component[start] = id;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      components[id].push_back(v);
      for (int u = 0; u < n; ++u) {
        if (component[u] < 0 && g.weights(v, u) > g.zero_threshold) {
          component[u] = id;
          stack.push_back(u);
        }
      }
    }
    std::sort(components[id].begin(), components[id].end());
  }
  return components;
}

bool sep_holds(const SimilarityGraph& g,
               const Eigen::Ref<const Eigen::VectorXi>& truth) {
  const int n = g.size();
  if (truth.size() != n) {
    throw DimensionMismatch("sep_holds: label vector length != graph size");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (g.weights(i, j) > g.zero_threshold && truth(i) != truth(j)) {
        return false;
      }
    }
  }
  return true;
}

double relative_violation(const SimilarityGraph& g,
                          const Eigen::Ref<const Eigen::VectorXi>& truth) {
  const int n = g.size();
  if (truth.size() != n) {
    throw DimensionMismatch(
        "relative_violation: label vector length != graph size");
  }
  double same = 0.0, cross = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double w = g.weights(i, j);
      if (w <= g.zero_threshold) continue;
      (truth(i) == truth(j) ? same : cross) += w;
    }
  }
  if (same == 0.0) {
    throw DegenerateInput("relative_violation: no same-cluster edge mass");
  }
  return cross / same;
}

}  // namespace ssc
