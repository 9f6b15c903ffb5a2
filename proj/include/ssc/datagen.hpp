#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "ssc/random.hpp"
#include "ssc/subspace.hpp"

namespace ssc {

struct DatasetMeta {
  std::string generator;
  std::string params;
  std::uint64_t seed = 0;
  double xi = 0.0;  // realized max column norm of Y - X
};

// A synthetic instance: noiseless X, observed Y, ground-truth labels in
// 1..L, the true subspaces, and the generator provenance.
struct Dataset {
  Eigen::MatrixXd x;
  Eigen::MatrixXd y;
  Eigen::VectorXi labels;
  std::vector<Subspace> true_subspaces;
  DatasetMeta meta;

  int ambient_dim() const { return static_cast<int>(x.rows()); }
  int num_points() const { return static_cast<int>(x.cols()); }
};

// L uniformly random d-dimensional subspaces of R^n with points drawn
// uniformly from each subspace's unit sphere. Noiseless (Y = X).
Dataset gen_semirandom(int n, int d, int l, int points_per_cluster,
                       std::uint64_t seed);

// The two-overlapping-4d-subspaces construction: two interleaved families of
// 4m points each per subspace, pushed through random orthogonal embeddings
// R^4 -> R^n, column-normalized, then perturbed by Gaussian noise with
// entry-wise variance sigma^2 / n. N = 16 m.
Dataset gen_nh(int n, int m, double delta, double sigma_noise,
               std::uint64_t seed);

// Sharpness counter-example: two orthogonal 2-dimensional subspaces with
// coordinates [[1,-1,eps,eps],[eps,eps,1,-1]]; the adversarial noise
// cancels the eps entries, collapsing each subspace's points onto two
// orthogonal lines. Unnormalized unless requested.
Dataset gen_adversarial(double epsilon, bool normalize = false);

// d points built from a centered symmetric simplex whose minimum singular
// value is exactly sigma_l; the returned noise of per-column magnitude
// sigma_l / sqrt(d) collapses them into a (d-1)-dimensional subspace.
// The construction is deterministic; seed is recorded only in metadata.
Dataset gen_simplex_degenerate(int d, double sigma_l, std::uint64_t seed);

struct NoisyObservation {
  Eigen::MatrixXd y;
  double xi = 0.0;
};

// Y = X + E for a fixed perturbation matrix.
NoisyObservation add_noise(const Eigen::Ref<const Eigen::MatrixXd>& x,
                           const Eigen::Ref<const Eigen::MatrixXd>& e);

// Y = X + N(0, sigma^2 / n) entry-wise.
NoisyObservation add_gaussian_noise(const Eigen::Ref<const Eigen::MatrixXd>& x,
                                    double sigma, std::uint64_t seed);

// Scales every column to unit l2 norm. Zero columns are rejected.
Eigen::MatrixXd normalize_columns(const Eigen::Ref<const Eigen::MatrixXd>& m);

// Haar-distributed orthonormal n x d matrix (QR of a Gaussian with the sign
// correction on R's diagonal).
Eigen::MatrixXd random_orthonormal(int n, int d, Rng& rng);

}  // namespace ssc
