#include "ssc/datagen.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ssc {

namespace {

Eigen::MatrixXd gaussian_matrix(int rows, int cols, Rng& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) m(i, j) = rng.normal();
  }
  return m;
}

// Unit vertices of the symmetric simplex in R^{d-1} with centroid at the
// origin and pairwise inner product -1/(d-1), built recursively.
Eigen::MatrixXd simplex_vertices(int d) {
  if (d == 2) {
    Eigen::MatrixXd v(1, 2);
    v << 1.0, -1.0;
    return v;
  }
  const int k = d - 1;  // vertices live in R^k
  const Eigen::MatrixXd inner = simplex_vertices(d - 1);
  const double scale = std::sqrt(1.0 - 1.0 / (static_cast<double>(k) * k));
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(k, d);
  v(0, 0) = 1.0;
  for (int j = 1; j < d; ++j) {
    v(0, j) = -1.0 / k;
    v.block(1, j, k - 1, 1) = scale * inner.col(j - 1);
  }
  return v;
}

double max_column_norm(const Eigen::MatrixXd& m) {
  return m.colwise().norm().maxCoeff();
}

}  // namespace

Eigen::MatrixXd random_orthonormal(int n, int d, Rng& rng) {
  const Eigen::MatrixXd g = gaussian_matrix(n, d, rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q =
      qr.householderQ() * Eigen::MatrixXd::Identity(n, d);
  const Eigen::MatrixXd r =
      qr.matrixQR().topLeftCorner(d, d).triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  }
  return q;
}

Eigen::MatrixXd normalize_columns(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  Eigen::MatrixXd out = m;
  for (int j = 0; j < out.cols(); ++j) {
    const double norm = out.col(j).norm();
    if (norm == 0.0) {
      throw DegenerateInput("normalize_columns: column " + std::to_string(j) +
                            " is zero");
    }
    out.col(j) /= norm;
  }
  return out;
}

NoisyObservation add_noise(const Eigen::Ref<const Eigen::MatrixXd>& x,
                           const Eigen::Ref<const Eigen::MatrixXd>& e) {
  if (x.rows() != e.rows() || x.cols() != e.cols()) {
    throw DimensionMismatch("add_noise: X and E shapes differ");
  }
  NoisyObservation obs;
  obs.y = x + e;
  obs.xi = e.cols() > 0 ? max_column_norm(e) : 0.0;
  return obs;
}

NoisyObservation add_gaussian_noise(const Eigen::Ref<const Eigen::MatrixXd>& x,
                                    double sigma, std::uint64_t seed) {
  if (sigma < 0) {
    throw InvalidParameter("add_gaussian_noise: sigma must be >= 0");
  }
  Rng rng(seed);
  const double entry_sd = sigma / std::sqrt(static_cast<double>(x.rows()));
  Eigen::MatrixXd e = entry_sd == 0.0
                          ? Eigen::MatrixXd::Zero(x.rows(), x.cols())
                          : Eigen::MatrixXd(entry_sd *
                                            gaussian_matrix(
                                                static_cast<int>(x.rows()),
                                                static_cast<int>(x.cols()),
                                                rng));
  return add_noise(x, e);
}

Dataset gen_semirandom(int n, int d, int l, int points_per_cluster,
                       std::uint64_t seed) {
  if (d < 1 || d >= n) {
    throw InvalidParameter("gen_semirandom: need 1 <= d < n");
  }
  if (l < 1 || points_per_cluster < 1) {
    throw InvalidParameter("gen_semirandom: L and points per cluster >= 1");
  }
  Rng rng(seed);
  Dataset ds;
  const int total = l * points_per_cluster;
  ds.x.resize(n, total);
  ds.labels.resize(total);
  for (int c = 0; c < l; ++c) {
    const Eigen::MatrixXd basis = random_orthonormal(n, d, rng);
    ds.true_subspaces.push_back(Subspace{basis});
    for (int p = 0; p < points_per_cluster; ++p) {
      Eigen::VectorXd g(d);
      for (int t = 0; t < d; ++t) g(t) = rng.normal();
      const int col = c * points_per_cluster + p;
      ds.x.col(col) = basis * (g / g.norm());
      ds.labels(col) = c + 1;
    }
  }
  ds.y = ds.x;
  ds.meta = {"semirandom",
             "n=" + std::to_string(n) + " d=" + std::to_string(d) +
                 " L=" + std::to_string(l) +
                 " ppc=" + std::to_string(points_per_cluster),
             seed, 0.0};
  return ds;
}

Dataset gen_nh(int n, int m, double delta, double sigma_noise,
               std::uint64_t seed) {
  if (n <= 4) throw InvalidParameter("gen_nh: need n > 4");
  if (m < 1) throw InvalidParameter("gen_nh: need m >= 1");
  if (delta <= 0.0 || delta >= 1.0) {
    throw InvalidParameter("gen_nh: need delta in (0, 1)");
  }
  if (sigma_noise < 0.0) {
    throw InvalidParameter("gen_nh: sigma must be >= 0");
  }

  Eigen::MatrixXd a(4, 8 * m);
  int col = 0;
  for (int k = 0; k < m; ++k) {
    const double theta = static_cast<double>(k) * std::numbers::pi / m;
    const double c = std::cos(theta), s = std::sin(theta);
    for (double s1 : {1.0, -1.0}) {
      for (double s2 : {1.0, -1.0}) {
        a.col(col++) = Eigen::Vector4d(c, s, s1 * delta, s2 * delta);
        a.col(col++) = Eigen::Vector4d(s1 * delta, s2 * delta, c, s);
      }
    }
  }

  Rng rng(seed);
  const Eigen::MatrixXd w1 = random_orthonormal(n, 4, rng);
  const Eigen::MatrixXd w2 = random_orthonormal(n, 4, rng);

  Dataset ds;
  const int per = 8 * m;
  ds.x.resize(n, 2 * per);
  ds.x.leftCols(per) = w1 * a;
  ds.x.rightCols(per) = w2 * a;
  ds.x = normalize_columns(ds.x);
  ds.labels.resize(2 * per);
  ds.labels.head(per).setConstant(1);
  ds.labels.tail(per).setConstant(2);
  ds.true_subspaces = {Subspace{w1}, Subspace{w2}};

  const double entry_sd = sigma_noise / std::sqrt(static_cast<double>(n));
  Eigen::MatrixXd e =
      entry_sd == 0.0
          ? Eigen::MatrixXd::Zero(n, 2 * per)
          : Eigen::MatrixXd(entry_sd * gaussian_matrix(n, 2 * per, rng));
  NoisyObservation obs = add_noise(ds.x, e);
  ds.y = std::move(obs.y);
  ds.meta = {"nh",
             "n=" + std::to_string(n) + " m=" + std::to_string(m) +
                 " delta=" + std::to_string(delta) +
                 " sigma=" + std::to_string(sigma_noise),
             seed, obs.xi};
  return ds;
}

Dataset gen_adversarial(double epsilon, bool normalize) {
  if (epsilon <= 0.0 || epsilon >= 1.0) {
    throw InvalidParameter("gen_adversarial: need epsilon in (0, 1)");
  }
  Eigen::Matrix<double, 2, 4> z;
  z << 1, -1, epsilon, epsilon,
       epsilon, epsilon, 1, -1;
  Eigen::Matrix<double, 2, 4> z_noisy;
  z_noisy << 1, -1, 0, 0,
             0, 0, 1, -1;

  Dataset ds;
  ds.x = Eigen::MatrixXd::Zero(4, 8);
  ds.y = Eigen::MatrixXd::Zero(4, 8);
  ds.x.topLeftCorner(2, 4) = z;
  ds.x.bottomRightCorner(2, 4) = z;
  ds.y.topLeftCorner(2, 4) = z_noisy;
  ds.y.bottomRightCorner(2, 4) = z_noisy;
  ds.labels.resize(8);
  ds.labels << 1, 1, 1, 1, 2, 2, 2, 2;
  Eigen::MatrixXd u1 = Eigen::MatrixXd::Zero(4, 2);
  u1(0, 0) = 1;
  u1(1, 1) = 1;
  Eigen::MatrixXd u2 = Eigen::MatrixXd::Zero(4, 2);
  u2(2, 0) = 1;
  u2(3, 1) = 1;
  ds.true_subspaces = {Subspace{u1}, Subspace{u2}};
  if (normalize) {
    ds.x = normalize_columns(ds.x);
    ds.y = normalize_columns(ds.y);
  }
  ds.meta = {"adversarial",
             "epsilon=" + std::to_string(epsilon) +
                 " normalize=" + (normalize ? "1" : "0"),
             0, max_column_norm(ds.y - ds.x)};
  return ds;
}

Dataset gen_simplex_degenerate(int d, double sigma_l, std::uint64_t seed) {
  if (d < 2) throw InvalidParameter("gen_simplex_degenerate: need d >= 2");
  if (sigma_l <= 0.0) {
    throw InvalidParameter("gen_simplex_degenerate: sigma_l must be > 0");
  }
  const double last = sigma_l / std::sqrt(static_cast<double>(d));
  Dataset ds;
  ds.x.resize(d, d);
  ds.x.topRows(d - 1) = simplex_vertices(d);
  ds.x.row(d - 1).setConstant(last);
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(d, d);
  e.row(d - 1).setConstant(-last);
  NoisyObservation obs = add_noise(ds.x, e);
  ds.y = std::move(obs.y);
  ds.labels = Eigen::VectorXi::Constant(d, 1);
  ds.true_subspaces = {Subspace{Eigen::MatrixXd::Identity(d, d)}};
  ds.meta = {"simplex",
             "d=" + std::to_string(d) + " sigma_l=" + std::to_string(sigma_l),
             seed, obs.xi};
  return ds;
}

}  // namespace ssc
