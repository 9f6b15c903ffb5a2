#include "ssc/metrics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include "ssc/errors.hpp"

namespace ssc {

Eigen::VectorXi max_sum_assignment(
    const Eigen::Ref<const Eigen::MatrixXd>& scores) {
  // Hungarian algorithm with potentials, on the minimization of -scores.
  const int n = static_cast<int>(scores.rows());
  if (scores.cols() != n) {
    throw DimensionMismatch("max_sum_assignment: matrix must be square");
  }
  const Eigen::MatrixXd cost = -scores;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0);  // row matched to column j (1-based)
  std::vector<int> way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = match[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  Eigen::VectorXi assignment(n);
  for (int j = 1; j <= n; ++j) {
    if (match[j] > 0) assignment(match[j] - 1) = j - 1;
  }
  return assignment;
}

double accuracy(const Eigen::Ref<const Eigen::VectorXi>& predicted,
                const Eigen::Ref<const Eigen::VectorXi>& truth) {
  const int n = static_cast<int>(truth.size());
  if (predicted.size() != n) {
    throw DimensionMismatch("accuracy: label vectors differ in length");
  }
  if (n == 0) throw DimensionMismatch("accuracy: empty labels");

  const int k = std::max(predicted.maxCoeff(), truth.maxCoeff());
  Eigen::MatrixXd confusion = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < n; ++i) {
    confusion(predicted(i) - 1, truth(i) - 1) += 1.0;
  }

  double best = 0.0;
  if (k <= 10) {
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      double hits = 0.0;
      for (int p = 0; p < k; ++p) hits += confusion(p, perm[p]);
      best = std::max(best, hits);
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    const Eigen::VectorXi assignment = max_sum_assignment(confusion);
    for (int p = 0; p < k; ++p) best += confusion(p, assignment(p));
  }
  return best / n;
}

}  // namespace ssc
