#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace oracles {

namespace {

// One simplex phase on the tableau [A | b] with objective row z (reduced
// costs appended as the last row). Pivots with Bland's rule until optimal.
void simplex_iterate(Eigen::MatrixXd& tableau, std::vector<int>& basis) {
  const int rows = static_cast<int>(tableau.rows()) - 1;
  const int cols = static_cast<int>(tableau.cols()) - 1;
  while (true) {
    int enter = -1;
    for (int j = 0; j < cols; ++j) {
      if (tableau(rows, j) < -1e-9) {
        enter = j;
        break;  // Bland: smallest index
      }
    }
    if (enter < 0) return;
    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < rows; ++i) {
      if (tableau(i, enter) > 1e-12) {
        const double ratio = tableau(i, cols) / tableau(i, enter);
        if (ratio < best_ratio - 1e-12 ||
            (std::abs(ratio - best_ratio) <= 1e-12 && leave >= 0 &&
             basis[i] < basis[leave])) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) throw std::runtime_error("simplex: unbounded");
    tableau.row(leave) /= tableau(leave, enter);
    for (int i = 0; i <= rows; ++i) {
      if (i == leave) continue;
      const double factor = tableau(i, enter);
      if (factor != 0.0) tableau.row(i) -= factor * tableau.row(leave);
    }
    basis[leave] = enter;
  }
}

}  // namespace

double simplex_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                  const Eigen::VectorXd& c) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());

  // Phase 1: minimize the sum of artificial variables.
  Eigen::MatrixXd tab = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  tab.topLeftCorner(m, n) = a;
  tab.col(n + m).head(m) = b;
  for (int i = 0; i < m; ++i) {
    if (tab(i, n + m) < 0) tab.row(i) = -tab.row(i);
    tab(i, n + i) = 1.0;
  }
  std::vector<int> basis(m);
  std::iota(basis.begin(), basis.end(), n);
  for (int j = 0; j < n + m; ++j) {
    tab(m, j) = j < n ? 0.0 : 1.0;
  }
  // Price out the artificial basis.
  for (int i = 0; i < m; ++i) tab.row(m) -= tab.row(i);
  simplex_iterate(tab, basis);
  if (tab(m, n + m) < -1e-7) {
    throw std::runtime_error("simplex: infeasible");
  }
  // Drive any artificial variables out of the basis if possible.
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    int pivot = -1;
    for (int j = 0; j < n; ++j) {
      if (std::abs(tab(i, j)) > 1e-9) {
        pivot = j;
        break;
      }
    }
    if (pivot < 0) continue;  // redundant row
    tab.row(i) /= tab(i, pivot);
    for (int r = 0; r <= m; ++r) {
      if (r == i) continue;
      const double factor = tab(r, pivot);
      if (factor != 0.0) tab.row(r) -= factor * tab.row(i);
    }
    basis[i] = pivot;
  }

  // Phase 2 on the original objective, artificial columns frozen out.
  Eigen::MatrixXd tab2 = Eigen::MatrixXd::Zero(m + 1, n + 1);
  tab2.topLeftCorner(m, n) = tab.topLeftCorner(m, n);
  tab2.col(n).head(m) = tab.col(n + m).head(m);
  for (int j = 0; j < n; ++j) tab2(m, j) = c(j);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) {
      tab2.row(m) -= tab2(m, basis[i]) * tab2.row(i);
    }
  }
  simplex_iterate(tab2, basis);

  double objective = 0.0;
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) objective += c(basis[i]) * tab2(i, n);
  }
  return objective;
}

double l1_min_objective(const Eigen::MatrixXd& dictionary,
                        const Eigen::VectorXd& target) {
  const int n = static_cast<int>(dictionary.rows());
  const int m = static_cast<int>(dictionary.cols());
  Eigen::MatrixXd a(n, 2 * m);
  a.leftCols(m) = dictionary;
  a.rightCols(m) = -dictionary;
  return simplex_lp(a, target, Eigen::VectorXd::Ones(2 * m));
}

double lasso_objective(const Eigen::MatrixXd& dictionary,
                       const Eigen::VectorXd& target, double lambda,
                       const Eigen::VectorXd& c) {
  return 0.5 * (target - dictionary * c).squaredNorm() +
         lambda * c.lpNorm<1>();
}

double prox_grad_lasso_objective(const Eigen::MatrixXd& dictionary,
                                 const Eigen::VectorXd& target, double lambda,
                                 double grad_tol) {
  const int m = static_cast<int>(dictionary.cols());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(dictionary);
  const double lip =
      svd.singularValues()(0) * svd.singularValues()(0);
  const double step = lip > 0 ? 1.0 / lip : 1.0;

  Eigen::VectorXd x = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd z = x;
  double t = 1.0;
  for (int iter = 0; iter < 2000000; ++iter) {
    const Eigen::VectorXd grad =
        dictionary.transpose() * (dictionary * z - target);
    Eigen::VectorXd next(m);
    for (int j = 0; j < m; ++j) {
      const double v = z(j) - step * grad(j);
      const double thr = step * lambda;
      next(j) = v > thr ? v - thr : (v < -thr ? v + thr : 0.0);
    }
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    z = next + ((t - 1.0) / t_next) * (next - x);
    const double move = (next - x).norm();
    x = next;
    t = t_next;
    if (move / step < grad_tol && iter > 10) break;
  }
  return lasso_objective(dictionary, target, lambda, x);
}

std::vector<int> single_linkage(const Eigen::MatrixXd& dist, int l) {
  const int m = static_cast<int>(dist.rows());
  std::vector<int> group(m);
  std::iota(group.begin(), group.end(), 0);
  int groups = m;
  while (groups > l) {
    double best = std::numeric_limits<double>::infinity();
    int ga = -1, gb = -1;
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        if (group[i] == group[j]) continue;
        if (dist(i, j) < best) {
          best = dist(i, j);
          ga = std::min(group[i], group[j]);
          gb = std::max(group[i], group[j]);
        }
      }
    }
    for (int i = 0; i < m; ++i) {
      if (group[i] == gb) group[i] = ga;
    }
    --groups;
  }
  std::vector<int> order;
  for (int i = 0; i < m; ++i) {
    if (std::find(order.begin(), order.end(), group[i]) == order.end()) {
      order.push_back(group[i]);
    }
  }
  std::vector<int> compact(m);
  for (int i = 0; i < m; ++i) {
    compact[i] = static_cast<int>(
        std::find(order.begin(), order.end(), group[i]) - order.begin());
  }
  return compact;
}

double inradius_direction_sampling_2d(const Eigen::MatrixXd& coords,
                                      int num_angles) {
  double best = std::numeric_limits<double>::infinity();
  for (int a = 0; a < num_angles; ++a) {
    const double theta = std::numbers::pi * a / num_angles;
    const Eigen::Vector2d u(std::cos(theta), std::sin(theta));
    double support = 0.0;
    for (int j = 0; j < coords.cols(); ++j) {
      support = std::max(support, std::abs(u.dot(coords.col(j))));
    }
    best = std::min(best, support);
  }
  return best;
}

}  // namespace oracles
