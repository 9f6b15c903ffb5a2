#include "ssc/spectral.hpp"

#include <cmath>
#include <limits>

#include "ssc/random.hpp"

namespace ssc {

namespace {

Eigen::VectorXi kmeans_plus_plus_seeds(const Eigen::MatrixXd& points, int k,
                                       Rng& rng) {
  const int n = static_cast<int>(points.rows());
  Eigen::VectorXi centers(k);
  centers(0) = rng.uniform_int(n);
  Eigen::VectorXd dist_sq =
      (points.rowwise() - points.row(centers(0))).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = dist_sq.sum();
    int pick;
    if (total <= 0.0) {
      pick = rng.uniform_int(n);
    } else {
      double ticket = rng.uniform01() * total;
      pick = n - 1;
      for (int i = 0; i < n; ++i) {
        ticket -= dist_sq(i);
        if (ticket <= 0.0) {
          pick = i;
          break;
        }
      }
    }
    centers(c) = pick;
    dist_sq = dist_sq.cwiseMin(
        (points.rowwise() - points.row(pick)).rowwise().squaredNorm());
  }
  return centers;
}

KMeansResult lloyd(const Eigen::MatrixXd& points, int k,
                   const Eigen::VectorXi& seed_rows, int max_iterations) {
  const int n = static_cast<int>(points.rows());
  const int dim = static_cast<int>(points.cols());
  Eigen::MatrixXd centers(k, dim);
  for (int c = 0; c < k; ++c) centers.row(c) = points.row(seed_rows(c));

  Eigen::VectorXi labels = Eigen::VectorXi::Constant(n, -1);
  Eigen::VectorXd best_dist(n);
  for (int iter = 0; iter < max_iterations; ++iter) {
    bool changed = false;
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (int c = 0; c < k; ++c) {
        const double d = (points.row(i) - centers.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      best_dist(i) = best_d;
      if (labels(i) != best) {
        labels(i) = best;
        changed = true;
      }
    }
    if (!changed && iter > 0) break;

    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, dim);
    Eigen::VectorXi counts = Eigen::VectorXi::Zero(k);
    for (int i = 0; i < n; ++i) {
      sums.row(labels(i)) += points.row(i);
      counts(labels(i)) += 1;
    }
    for (int c = 0; c < k; ++c) {
      if (counts(c) > 0) {
        centers.row(c) = sums.row(c) / counts(c);
      } else {
        // Re-seed an empty cluster at the point farthest from its center.
        int far = 0;
        for (int i = 1; i < n; ++i) {
          if (best_dist(i) > best_dist(far)) far = i;
        }
        centers.row(c) = points.row(far);
        best_dist(far) = 0.0;
      }
    }
  }

  KMeansResult result;
  result.labels = labels;
  result.inertia = 0.0;
  for (int i = 0; i < n; ++i) {
    result.inertia += (points.row(i) - centers.row(labels(i))).squaredNorm();
  }
  return result;
}

}  // namespace

KMeansResult kmeans(const Eigen::Ref<const Eigen::MatrixXd>& points, int k,
                    std::uint64_t seed, int restarts, int max_iterations) {
  const int n = static_cast<int>(points.rows());
  if (k < 1 || k > n) {
    throw InvalidParameter("kmeans: need 1 <= k <= number of points");
  }
  Rng rng(seed);
  KMeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  const Eigen::MatrixXd pts = points;
  for (int r = 0; r < restarts; ++r) {
    const Eigen::VectorXi seeds = kmeans_plus_plus_seeds(pts, k, rng);
    KMeansResult run = lloyd(pts, k, seeds, max_iterations);
    if (run.inertia < best.inertia) best = std::move(run);
  }
  return best;
}

ClusterAssignment spectral_cluster(const SimilarityGraph& g, int l,
                                   std::uint64_t seed) {
  const int n = g.size();
  if (l < 1 || l > n) {
    throw InvalidParameter("spectral_cluster: need 1 <= L <= N");
  }

  const Eigen::VectorXd degrees = g.weights.rowwise().sum();
  Eigen::VectorXd inv_sqrt(n);
  for (int i = 0; i < n; ++i) {
    inv_sqrt(i) = degrees(i) > 0.0 ? 1.0 / std::sqrt(degrees(i)) : 0.0;
  }
  // Top-L eigenvectors of D^{-1/2} W D^{-1/2} are the bottom-L of the
  // symmetric normalized Laplacian.
  const Eigen::MatrixXd normalized =
      inv_sqrt.asDiagonal() * g.weights * inv_sqrt.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(normalized);
  if (eig.info() != Eigen::Success) {
    throw Error("spectral_cluster: eigendecomposition failed");
  }

  Eigen::MatrixXd embedding(n, l);
  for (int c = 0; c < l; ++c) {
    Eigen::VectorXd v = eig.eigenvectors().col(n - 1 - c);
    for (int i = 0; i < n; ++i) {
      if (std::abs(v(i)) > 1e-12) {
        if (v(i) < 0) v = -v;
        break;
      }
    }
    embedding.col(c) = v;
  }
  for (int i = 0; i < n; ++i) {
    const double norm = embedding.row(i).norm();
    if (norm > 0.0) embedding.row(i) /= norm;
  }

  const KMeansResult km = kmeans(embedding, l, seed);
  ClusterAssignment assignment;
  assignment.labels = km.labels.array() + 1;
  assignment.num_clusters = l;
  return assignment;
}

}  // namespace ssc
