#include "ssc/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ssc/combinatorics.hpp"

namespace ssc {

namespace {

double soft_threshold(double x, double t) {
  if (x > t) return x - t;
  if (x < -t) return x + t;
  return 0.0;
}

// Max violation of the lasso stationarity conditions for gradient
// g = D^T (target - D c):  |g_j - lambda sign(c_j)| on the support,
// max(0, |g_j| - lambda) off it.
double kkt_violation(const Eigen::VectorXd& grad, const Eigen::VectorXd& c,
                     double lambda) {
  double worst = 0.0;
  for (int j = 0; j < c.size(); ++j) {
    const double v = c(j) != 0.0
                         ? std::abs(grad(j) - lambda * (c(j) > 0 ? 1.0 : -1.0))
                         : std::max(0.0, std::abs(grad(j)) - lambda);
    worst = std::max(worst, v);
  }
  return worst;
}

// Coordinate descent on the gram form with `grad` maintained as
// D^T target - gram * c. Returns the max coefficient change.
double cd_sweep(const Eigen::MatrixXd& gram, const Eigen::VectorXd& diag,
                double lambda, Eigen::VectorXd& c, Eigen::VectorXd& grad,
                const std::vector<int>& order) {
  double max_change = 0.0;
  for (int j : order) {
    if (diag(j) <= 0.0) continue;  // zero column, coefficient stays 0
    const double old = c(j);
    const double u = grad(j) + diag(j) * old;
    const double next = soft_threshold(u, lambda) / diag(j);
    if (next != old) {
      c(j) = next;
      grad.noalias() -= gram.col(j) * (next - old);
      max_change = std::max(max_change, std::abs(next - old));
    }
  }
  return max_change;
}

struct LassoWorkspace {
  Eigen::MatrixXd gram;
  Eigen::VectorXd diag;
  Eigen::VectorXd lin;
  std::vector<int> all;
};

LassoWorkspace make_workspace(const Eigen::Ref<const Eigen::MatrixXd>& d,
                              const Eigen::Ref<const Eigen::VectorXd>& y) {
  LassoWorkspace w;
  w.gram.noalias() = d.transpose() * d;
  w.diag = w.gram.diagonal();
  w.lin.noalias() = d.transpose() * y;
  w.all.resize(d.cols());
  for (int j = 0; j < d.cols(); ++j) w.all[j] = j;
  return w;
}

// Active-set finisher. Repeats: solve the fixed-sign stationarity system on
// the current support (minimum-norm when singular), walk toward that point
// up to the first zero crossing and drop the crossing coordinate; when the
// system is inconsistent, descend along the leftover null direction to its
// first crossing. Once signs are consistent, activate the worst off-support
// violator. A monotone-objective guard rejects any non-descending step, so
// the loop cannot cycle. All per-iteration work is support-sized; the
// gradient is maintained incrementally and recomputed only for the final
// certificate. Returns the certified KKT residual on success, negative when
// it gives up (coordinate descent then continues from c).
double try_support_polish(const LassoWorkspace& w, double lambda, double tol,
                          Eigen::VectorXd& c, Eigen::VectorXd& grad) {
  const int m = static_cast<int>(c.size());
  std::vector<int> support;
  for (int j = 0; j < m; ++j) {
    if (c(j) != 0.0) support.push_back(j);
  }

  // Support-restricted objective (off-support coordinates are zero).
  const auto local_objective = [&](const Eigen::MatrixXd& gss,
                                   const Eigen::VectorXd& lin_s,
                                   const Eigen::VectorXd& v) {
    return 0.5 * v.dot(gss * v) - lin_s.dot(v) + lambda * v.lpNorm<1>();
  };

  const int max_iter = 10 * m + 50;
  for (int iter = 0; iter < max_iter; ++iter) {
    const int s = static_cast<int>(support.size());
    if (s > 0) {
      Eigen::MatrixXd gss(s, s);
      Eigen::VectorXd rhs(s), lin_s(s), current(s);
      for (int a = 0; a < s; ++a) {
        for (int b = 0; b < s; ++b) {
          gss(a, b) = w.gram(support[a], support[b]);
        }
        current(a) = c(support[a]);
        lin_s(a) = w.lin(support[a]);
        rhs(a) = lin_s(a) - lambda * (current(a) > 0 ? 1.0 : -1.0);
      }
      Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(gss);
      const Eigen::VectorXd solved = cod.solve(rhs);
      const Eigen::VectorXd null_dir = rhs - gss * solved;
      const bool consistent =
          null_dir.cwiseAbs().maxCoeff() <=
          1e-10 * (1.0 + rhs.cwiseAbs().maxCoeff());

      Eigen::VectorXd next;
      int crossing = -1;
      if (!consistent) {
        // The fixed-sign objective is unbounded along the null component;
        // descend from the current point to the first zero crossing.
        double ray = std::numeric_limits<double>::infinity();
        for (int a = 0; a < s; ++a) {
          if (current(a) * null_dir(a) < 0.0) {
            const double t = -current(a) / null_dir(a);
            if (t < ray) {
              ray = t;
              crossing = a;
            }
          }
        }
        if (crossing < 0) return -1.0;
        next = current + ray * null_dir;
        next(crossing) = 0.0;
      } else {
        // First zero crossing along the segment current -> solved.
        double step = 1.0;
        for (int a = 0; a < s; ++a) {
          if ((solved(a) > 0) != (current(a) > 0) || solved(a) == 0.0) {
            const double denom = current(a) - solved(a);
            const double t = denom != 0.0 ? current(a) / denom : 0.0;
            if (t < step) {
              step = t;
              crossing = a;
            }
          }
        }
        next = current + step * (solved - current);
        if (crossing >= 0) next(crossing) = 0.0;
      }

      const double before = local_objective(gss, lin_s, current);
      const double after = local_objective(gss, lin_s, next);
      if (after > before + 1e-15 * (1.0 + std::abs(before))) {
        return -1.0;  // not a descent step; let coordinate descent run
      }
      for (int a = 0; a < s; ++a) {
        const double delta = next(a) - current(a);
        if (delta != 0.0) {
          c(support[a]) = next(a);
          grad.noalias() -= w.gram.col(support[a]) * delta;
        }
      }
      if (crossing >= 0) {
        c(support[crossing]) = 0.0;
        support.erase(support.begin() + crossing);
        continue;
      }
      if (!consistent) continue;
    }

    // Activate the worst off-support violator, if any.
    int worst = -1;
    double worst_gap = tol;
    for (int j = 0; j < m; ++j) {
      if (c(j) != 0.0) continue;
      const double gap = std::abs(grad(j)) - lambda;
      if (gap > worst_gap) {
        worst_gap = gap;
        worst = j;
      }
    }
    if (worst < 0) {
      grad = w.lin - w.gram * c;  // exact certificate
      const double residual = kkt_violation(grad, c, lambda);
      if (residual <= tol) return residual;
      return -1.0;
    }
    c(worst) = grad(worst) > 0 ? std::numeric_limits<double>::min()
                               : -std::numeric_limits<double>::min();
    support.push_back(worst);
  }
  return -1.0;
}

// Solves one lasso instance on a prebuilt workspace, warm-started from c.
double lasso_on_workspace(const LassoWorkspace& w, double lambda,
                          const LassoOptions& opts, Eigen::VectorXd& c) {
  Eigen::VectorXd grad = w.lin - w.gram * c;
  std::vector<int> active;
  double residual = kkt_violation(grad, c, lambda);
  if (residual <= opts.tol) return residual;
  {
    // Warm starts usually land one support solve away from the optimum.
    const double polished = try_support_polish(w, lambda, opts.tol, c, grad);
    if (polished >= 0.0) return polished;
  }
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    const double change = cd_sweep(w.gram, w.diag, lambda, c, grad, w.all);
    residual = kkt_violation(grad, c, lambda);
    if (residual <= opts.tol || change < opts.change_tol) return residual;
    const double polished = try_support_polish(w, lambda, opts.tol, c, grad);
    if (polished >= 0.0) return polished;
    // Burn down the current support before the next full rescan.
    active.clear();
    for (int j = 0; j < c.size(); ++j) {
      if (c(j) != 0.0) active.push_back(j);
    }
    for (int burst = 0; burst < 100 && sweep < opts.max_sweeps; ++burst) {
      ++sweep;
      const double inner = cd_sweep(w.gram, w.diag, lambda, c, grad, active);
      if (inner < opts.change_tol) break;
    }
  }
  residual = kkt_violation(grad, c, lambda);
  if (residual > opts.tol) {
    throw SolverDiverged("lasso: sweep cap reached before tolerance",
                         residual);
  }
  return residual;
}

}  // namespace

std::vector<int> support_indices(const Eigen::Ref<const Eigen::VectorXd>& c,
                                 double rel_tol) {
  const double cutoff = rel_tol * c.cwiseAbs().maxCoeff();
  std::vector<int> support;
  for (int j = 0; j < c.size(); ++j) {
    if (std::abs(c(j)) > cutoff && c(j) != 0.0) support.push_back(j);
  }
  return support;
}

LassoResult lasso(const Eigen::Ref<const Eigen::MatrixXd>& dictionary,
                  const Eigen::Ref<const Eigen::VectorXd>& target,
                  double lambda, const LassoOptions& opts) {
  if (lambda <= 0) throw InvalidParameter("lasso: lambda must be positive");
  if (dictionary.rows() != target.size()) {
    throw DimensionMismatch("lasso: dictionary rows != target size");
  }
  LassoWorkspace w = make_workspace(dictionary, target);
  LassoResult result;
  result.coeff = Eigen::VectorXd::Zero(dictionary.cols());
  result.kkt_residual = lasso_on_workspace(w, lambda, opts, result.coeff);
  return result;
}

Eigen::VectorXd basis_pursuit(
    const Eigen::Ref<const Eigen::MatrixXd>& dictionary,
    const Eigen::Ref<const Eigen::VectorXd>& target, double tol) {
  if (tol <= 0) throw InvalidParameter("basis_pursuit: tol must be positive");
  if (dictionary.rows() != target.size()) {
    throw DimensionMismatch("basis_pursuit: dictionary rows != target size");
  }
  // Feasibility: distance from target to the full column span.
  const Eigen::VectorXd ls =
      dictionary.colPivHouseholderQr().solve(target);
  const double span_gap = (target - dictionary * ls).norm();
  if (span_gap > tol) {
    throw Infeasible("basis_pursuit: target is " + std::to_string(span_gap) +
                     " from the dictionary span (tol " + std::to_string(tol) +
                     ")");
  }

  LassoWorkspace w = make_workspace(dictionary, target);
  LassoOptions opts;
  opts.tol = std::min(tol * 1e-2, 1e-10);
  opts.max_sweeps = 5000;  // warm-started steps converge in far fewer
  Eigen::VectorXd c = Eigen::VectorXd::Zero(dictionary.cols());
  double lambda = std::max(w.lin.cwiseAbs().maxCoeff(), 1.0) * 0.5;
  double res = target.norm();
  for (int step = 0; step < 200; ++step) {
    try {
      lasso_on_workspace(w, lambda, opts, c);
    } catch (const SolverDiverged&) {
      // The KKT certificate can be unreachable on ill-conditioned supports;
      // the constraint residual below still decides acceptance.
    }
    res = (target - dictionary * c).norm();
    if (res <= tol) return c;
    lambda *= 0.5;
  }
  throw SolverDiverged("basis_pursuit: continuation exhausted", res);
}

std::vector<std::vector<int>> l0_min(
    const Eigen::Ref<const Eigen::MatrixXd>& dictionary,
    const Eigen::Ref<const Eigen::VectorXd>& target, double tol,
    const L0Options& opts) {
  if (dictionary.rows() != target.size()) {
    throw DimensionMismatch("l0_min: dictionary rows != target size");
  }
  const int m = static_cast<int>(dictionary.cols());
  if (target.norm() <= tol) return {std::vector<int>{}};

  // No support larger than the numerical rank of the dictionary can help.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(dictionary);
  const Eigen::VectorXd& sv = svd.singularValues();
  int max_k = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > 1e-12 * sv(0)) ++max_k;
  }

  std::uint64_t examined = 0;
  for (int k = 1; k <= max_k; ++k) {
    std::vector<std::vector<int>> found;
    Eigen::MatrixXd sub(dictionary.rows(), k);
    const bool completed = for_each_combination(
        m, k, [&](const std::vector<int>& idx) -> bool {
          if (++examined > opts.budget) return false;
          for (int t = 0; t < k; ++t) sub.col(t) = dictionary.col(idx[t]);
          const Eigen::VectorXd coeff =
              sub.colPivHouseholderQr().solve(target);
          if ((target - sub * coeff).norm() <= tol) found.push_back(idx);
          return true;
        });
    if (!completed) {
      throw BudgetExceeded("l0_min: enumeration budget of " +
                           std::to_string(opts.budget) + " supports exceeded");
    }
    if (!found.empty()) return found;
  }
  throw Infeasible("l0_min: target is not within tol of any column subset");
}

std::vector<int> CoefficientMatrix::zero_columns() const {
  std::vector<int> zeros;
  for (int i = 0; i < coeffs.cols(); ++i) {
    if (coeffs.col(i).cwiseAbs().maxCoeff() == 0.0) zeros.push_back(i);
  }
  return zeros;
}

CoefficientMatrix self_expression_matrix(
    const Eigen::Ref<const Eigen::MatrixXd>& y, SolverKind kind,
    const SelfExpressionParams& params) {
  const int n = static_cast<int>(y.rows());
  const int cols = static_cast<int>(y.cols());
  for (int i = 0; i < cols; ++i) {
    if (y.col(i).norm() == 0.0) {
      throw DegenerateInput("self_expression_matrix: column " +
                            std::to_string(i) + " is zero");
    }
  }

  CoefficientMatrix result;
  result.coeffs = Eigen::MatrixXd::Zero(cols, cols);
  result.kkt_residuals = Eigen::VectorXd::Zero(cols);
  result.kind = kind;
  result.lambda = params.lambda;

  Eigen::MatrixXd dict(n, cols - 1);
  for (int i = 0; i < cols; ++i) {
    dict.leftCols(i) = y.leftCols(i);
    dict.rightCols(cols - 1 - i) = y.rightCols(cols - 1 - i);
    Eigen::VectorXd c;
    double kkt = 0.0;
    try {
      switch (kind) {
        case SolverKind::BasisPursuit:
          c = basis_pursuit(dict, y.col(i), params.tol);
          break;
        case SolverKind::Lasso: {
          LassoResult r =
              lasso(dict, y.col(i), params.lambda, params.lasso_opts);
          c = std::move(r.coeff);
          kkt = r.kkt_residual;
          break;
        }
        case SolverKind::ExhaustiveL0: {
          const auto supports =
              l0_min(dict, y.col(i), params.tol, params.l0_opts);
          int choice = 0;
          if (static_cast<int>(params.l0_support_choice.size()) > i) {
            choice = params.l0_support_choice[i];
          }
          if (choice < 0 || choice >= static_cast<int>(supports.size())) {
            throw InvalidParameter("support choice out of range");
          }
          const std::vector<int>& s = supports[choice];
          c = Eigen::VectorXd::Zero(cols - 1);
          if (!s.empty()) {
            Eigen::MatrixXd sub(n, static_cast<int>(s.size()));
            for (int t = 0; t < static_cast<int>(s.size()); ++t) {
              sub.col(t) = dict.col(s[t]);
            }
            const Eigen::VectorXd coeff =
                sub.colPivHouseholderQr().solve(y.col(i));
            for (int t = 0; t < static_cast<int>(s.size()); ++t) {
              c(s[t]) = coeff(t);
            }
          }
          kkt = (y.col(i) - dict * c).norm();
          break;
        }
      }
    } catch (const Infeasible& e) {
      if (kind == SolverKind::ExhaustiveL0) {
        // Point not representable by the others: isolated vertex.
        c = Eigen::VectorXd::Zero(cols - 1);
        kkt = y.col(i).norm();
      } else {
        throw Infeasible("column " + std::to_string(i) + ": " + e.what());
      }
    } catch (const SolverDiverged& e) {
      throw SolverDiverged("column " + std::to_string(i) + ": " + e.what(),
                           e.last_residual);
    } catch (const BudgetExceeded& e) {
      throw BudgetExceeded("column " + std::to_string(i) + ": " + e.what());
    }
    for (int j = 0; j < cols - 1; ++j) {
      result.coeffs(j < i ? j : j + 1, i) = c(j);
    }
    result.kkt_residuals(i) = kkt;
  }
  return result;
}

}  // namespace ssc
