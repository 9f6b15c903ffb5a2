#include "ssc/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "ssc/combinatorics.hpp"

namespace ssc {

namespace {

constexpr int kInradiusMaxDim = 5;
constexpr int kInradiusMaxPoints = 30;
constexpr std::uint64_t kRestrictedEigBudget = 1000000;

// Circumradius of {u : ||coords^T u||_inf <= 1} for full-rank coords (d x m)
// by enumerating vertices: d active constraints with signs, first sign fixed
// to +1 since the polytope is symmetric. Returns +inf if unbounded.
double polar_circumradius(const Eigen::MatrixXd& coords) {
  const int d = static_cast<int>(coords.rows());
  const int m = static_cast<int>(coords.cols());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(coords);
  if (svd.singularValues()(d - 1) <= 1e-12 * svd.singularValues()(0)) {
    return std::numeric_limits<double>::infinity();
  }

  double best = 0.0;
  Eigen::MatrixXd sub(d, d);
  Eigen::VectorXd rhs(d);
  for_each_combination(m, d, [&](const std::vector<int>& idx) -> bool {
    for (int t = 0; t < d; ++t) sub.col(t) = coords.col(idx[t]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sub.transpose());
    if (!lu.isInvertible()) return true;
    const int sign_combos = 1 << (d - 1);
    for (int s = 0; s < sign_combos; ++s) {
      rhs(0) = 1.0;
      for (int t = 1; t < d; ++t) rhs(t) = (s >> (t - 1)) & 1 ? -1.0 : 1.0;
      const Eigen::VectorXd u = lu.solve(rhs);
      if ((coords.transpose() * u).cwiseAbs().maxCoeff() <= 1.0 + 1e-9) {
        best = std::max(best, u.norm());
      }
    }
    return true;
  });
  return best;
}

Eigen::MatrixXd drop_column(const Eigen::MatrixXd& m, int i) {
  Eigen::MatrixXd out(m.rows(), m.cols() - 1);
  out.leftCols(i) = m.leftCols(i);
  out.rightCols(m.cols() - 1 - i) = m.rightCols(m.cols() - 1 - i);
  return out;
}

}  // namespace

double inradius(const Eigen::Ref<const Eigen::MatrixXd>& points,
                std::optional<int> leave_out) {
  const int m = static_cast<int>(points.cols());
  if (m < 1) throw DegenerateInput("inradius: no points");
  if (leave_out && (*leave_out < 0 || *leave_out >= m)) {
    throw InvalidParameter("inradius: leave_out index out of range");
  }

  const Subspace span = orthonormal_basis(points);  // throws on all-zero
  const int d = span.dim();
  if (d > kInradiusMaxDim || m > kInradiusMaxPoints) {
    throw BudgetExceeded("inradius: vertex enumeration limited to d <= 5 and "
                         "30 points");
  }

  Eigen::MatrixXd coords = span.basis.transpose() * points;
  if (leave_out) coords = drop_column(coords, *leave_out);
  if (coords.cols() < d) return 0.0;
  if (d == 1) return coords.cwiseAbs().maxCoeff();

  const double circum = polar_circumradius(coords);
  if (!std::isfinite(circum) || circum == 0.0) return 0.0;
  return 1.0 / circum;
}

double inradius_leave_one_out_min(
    const Eigen::Ref<const Eigen::MatrixXd>& points) {
  const int m = static_cast<int>(points.cols());
  if (m < 2) throw DegenerateInput("inradius: need at least two points");
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) worst = std::min(worst, inradius(points, i));
  return worst;
}

double restricted_eigenvalue(
    const Eigen::Ref<const Eigen::MatrixXd>& cluster_points, int d) {
  const int count = static_cast<int>(cluster_points.cols());
  if (d < 1 || d > count) {
    throw InvalidParameter("restricted_eigenvalue: need 1 <= d <= N_l");
  }
  if (binomial(count, d) > kRestrictedEigBudget) {
    throw BudgetExceeded("restricted_eigenvalue: " +
                         std::to_string(binomial(count, d)) +
                         " subsets exceed the 10^6 budget");
  }
  double worst = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd sub(cluster_points.rows(), d);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  for_each_combination(count, d, [&](const std::vector<int>& idx) -> bool {
    for (int t = 0; t < d; ++t) sub.col(t) = cluster_points.col(idx[t]);
    eig.compute(sub.transpose() * sub, Eigen::EigenvaluesOnly);
    worst = std::min(worst, std::sqrt(std::max(0.0, eig.eigenvalues()(0))));
    return true;
  });
  return worst;
}

std::optional<std::pair<double, double>> lambda_range(
    double xi, const Eigen::Ref<const Eigen::VectorXd>& rho,
    const Eigen::Ref<const Eigen::VectorXd>& sigma) {
  if (rho.size() != sigma.size() || rho.size() == 0) {
    throw InvalidParameter("lambda_range: rho and sigma sizes differ");
  }
  if (xi < 0) throw InvalidParameter("lambda_range: xi must be >= 0");
  double low = 0.0;
  double high = std::numeric_limits<double>::infinity();
  for (int l = 0; l < rho.size(); ++l) {
    if (rho(l) <= 0.0 || rho(l) >= 1.0) {
      throw InvalidParameter("lambda_range: rho must lie in (0, 1)");
    }
    if (sigma(l) <= 0.0) {
      throw InvalidParameter("lambda_range: sigma must be positive");
    }
    low = std::max(low, 2.0 * xi * (1 + xi) * (1 + xi) * (1 + 1.0 / rho(l)));
    high = std::min(high, rho(l) * sigma(l) / 2.0);
  }
  if (low >= high) return std::nullopt;
  return std::make_pair(low, high);
}

DiagnosticsReport check_recovery_conditions(
    const Eigen::Ref<const Eigen::MatrixXd>& x,
    const Eigen::Ref<const Eigen::MatrixXd>& e,
    const Eigen::Ref<const Eigen::VectorXi>& labels, int d) {
  if (x.rows() != e.rows() || x.cols() != e.cols()) {
    throw DimensionMismatch("check_recovery_conditions: X and E differ");
  }
  if (labels.size() != x.cols()) {
    throw DimensionMismatch("check_recovery_conditions: labels length");
  }

  std::map<int, std::vector<int>> clusters;
  for (int i = 0; i < labels.size(); ++i) clusters[labels(i)].push_back(i);
  const int l = static_cast<int>(clusters.size());

  DiagnosticsReport report;
  report.xi = e.cols() > 0 ? e.colwise().norm().maxCoeff() : 0.0;
  report.inradii.resize(l);
  report.restricted_eigenvalues.resize(l);
  std::vector<Subspace> spans;

  int c = 0;
  for (const auto& [label, members] : clusters) {
    Eigen::MatrixXd pts(x.rows(), members.size());
    for (int t = 0; t < static_cast<int>(members.size()); ++t) {
      pts.col(t) = x.col(members[t]);
    }
    const Subspace span = orthonormal_basis(pts);
    if (span.dim() != d) {
      throw DegenerateInput("check_recovery_conditions: cluster " +
                            std::to_string(label) + " has rank " +
                            std::to_string(span.dim()) + ", expected " +
                            std::to_string(d));
    }
    spans.push_back(span);
    report.inradii(c) = inradius_leave_one_out_min(pts);
    report.restricted_eigenvalues(c) = restricted_eigenvalue(pts, d);
    ++c;
  }

  const double sigma_min = report.restricted_eigenvalues.minCoeff();
  if (sigma_min <= 0.0) {
    // Some d-subset is dependent: the spectral-margin assumption fails and
    // no admissible parameter interval exists.
    report.mu_eps = report.xi == 0.0
                        ? 0.0
                        : std::numeric_limits<double>::infinity();
    report.separation_ok = false;
    report.noise_ok = false;
    report.lambda_interval = std::nullopt;
    return report;
  }
  report.mu_eps =
      std::sqrt(2.0 * d * report.xi * report.xi / (sigma_min * sigma_min));

  report.separation_ok = true;
  const double sep_bound =
      8.0 * d * report.xi * report.xi / (sigma_min * sigma_min);
  for (int a = 0; a < l && report.separation_ok; ++a) {
    for (int b = a + 1; b < l; ++b) {
      if (angular_distance(spans[a], spans[b]) <= sep_bound) {
        report.separation_ok = false;
        break;
      }
    }
  }

  report.noise_ok = true;
  for (int t = 0; t < l; ++t) {
    const double rho = report.inradii(t);
    const double cap =
        std::min(1.0, rho * rho * report.restricted_eigenvalues(t) /
                          (16.0 * (1.0 + rho)));
    if (!(report.xi < cap)) {
      report.noise_ok = false;
      break;
    }
  }

  report.lambda_interval =
      lambda_range(report.xi, report.inradii, report.restricted_eigenvalues);
  return report;
}

std::vector<bool> verify_support_bound(const CoefficientMatrix& coeffs,
                                       int d) {
  std::vector<bool> ok(coeffs.coeffs.cols());
  for (int i = 0; i < coeffs.coeffs.cols(); ++i) {
    ok[i] = static_cast<int>(support_indices(coeffs.coeffs.col(i)).size()) >=
            d;
  }
  return ok;
}

bool dual_direction_check(const Eigen::Ref<const Eigen::VectorXd>& u,
                          const Eigen::Ref<const Eigen::MatrixXd>& cluster,
                          std::optional<int> leave_out) {
  if (std::abs(u.norm() - 1.0) > 1e-10) {
    throw InvalidParameter("dual_direction_check: u must be a unit vector");
  }
  const Subspace span = orthonormal_basis(cluster);
  const double outside = (u - span.basis * (span.basis.transpose() * u)).norm();
  if (outside > 1e-8) {
    throw InvalidParameter("dual_direction_check: u is outside the span");
  }
  const double rho = inradius(cluster, leave_out);
  double best = 0.0;
  for (int i = 0; i < cluster.cols(); ++i) {
    if (leave_out && *leave_out == i) continue;
    best = std::max(best, std::abs(u.dot(cluster.col(i))));
  }
  return best >= rho - 1e-10;
}

}  // namespace ssc
