#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "ssc/datagen.hpp"
#include "ssc/random.hpp"
#include "ssc/solvers.hpp"

using namespace ssc;

namespace {

Eigen::MatrixXd random_unit_columns(int n, int m, Rng& rng) {
  Eigen::MatrixXd d(n, m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) d(i, j) = rng.normal();
    d.col(j).normalize();
  }
  return d;
}

double lasso_kkt(const Eigen::MatrixXd& dict, const Eigen::VectorXd& y,
                 double lambda, const Eigen::VectorXd& c, double tol) {
  // The certificate recomputed from scratch; off-support columns must obey
  // the subgradient bound outright.
  const Eigen::VectorXd grad = dict.transpose() * (y - dict * c);
  double worst = 0.0;
  for (int j = 0; j < c.size(); ++j) {
    if (c(j) != 0.0) {
      worst = std::max(worst,
                       std::abs(grad(j) - lambda * (c(j) > 0 ? 1.0 : -1.0)));
    } else {
      CHECK(std::abs(grad(j)) <= lambda + tol);
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("lasso trivial cases") {
  Rng rng(1);
  const Eigen::MatrixXd dict = random_unit_columns(6, 9, rng);
  Eigen::VectorXd y(6);
  for (int i = 0; i < 6; ++i) y(i) = rng.normal();
  y.normalize();

  SUBCASE("lambda above the critical value gives zero") {
    const double lmax = (dict.transpose() * y).cwiseAbs().maxCoeff();
    const LassoResult r = lasso(dict, y, lmax * 1.0001);
    CHECK(r.coeff.cwiseAbs().maxCoeff() == 0.0);
    CHECK(r.kkt_residual <= 1e-8);
  }

  SUBCASE("single-column soft threshold") {
    Eigen::MatrixXd a(4, 1);
    a << 0.5, 0.5, 0.5, 0.5;
    const LassoResult r = lasso(a, a.col(0), 0.3);
    CHECK(r.coeff(0) == doctest::Approx(0.7).epsilon(1e-10));
  }

  SUBCASE("invalid lambda") {
    CHECK_THROWS_AS(lasso(dict, y, 0.0), InvalidParameter);
  }
}

TEST_CASE("lasso matches the proximal-gradient oracle and certifies KKT") {
  Rng rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXd dict = random_unit_columns(6, 8, rng);
    Eigen::VectorXd y(6);
    for (int i = 0; i < 6; ++i) y(i) = rng.normal();
    y.normalize();
    const double lambda = 0.1;

    const LassoResult r = lasso(dict, y, lambda);
    CHECK(r.kkt_residual <= 1e-8);
    CHECK(lasso_kkt(dict, y, lambda, r.coeff, 1e-8) <= 1e-8);

    const double mine = oracles::lasso_objective(dict, y, lambda, r.coeff);
    const double reference =
        oracles::prox_grad_lasso_objective(dict, y, lambda);
    CHECK(mine == doctest::Approx(reference).epsilon(1e-6));
    CHECK(mine <= reference + 1e-6);
  }
}

TEST_CASE("lasso KKT residual below 1e-8 on 100 random instances") {
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 4 + rng.uniform_int(5);
    const int m = n + rng.uniform_int(8);
    const Eigen::MatrixXd dict = random_unit_columns(n, m, rng);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y(i) = rng.normal();
    y.normalize();
    const double lambda = 0.01 + 0.3 * rng.uniform01();
    const LassoResult r = lasso(dict, y, lambda);
    REQUIRE(r.kkt_residual <= 1e-8);
  }
}

TEST_CASE("basis pursuit exact-atom and two-atom cases") {
  Rng rng(5);

  SUBCASE("dictionary containing the target") {
    Eigen::MatrixXd dict = random_unit_columns(6, 7, rng);
    Eigen::VectorXd y = dict.col(3);
    const Eigen::VectorXd c = basis_pursuit(dict, y, 1e-10);
    CHECK(c.lpNorm<1>() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(c(3) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK((y - dict * c).norm() <= 1e-10);
  }

  SUBCASE("orthogonal two-atom representation is unique") {
    Eigen::MatrixXd dict = Eigen::MatrixXd::Identity(4, 4);
    const Eigen::VectorXd y =
        (dict.col(0) + dict.col(1)) / std::numbers::sqrt2;
    const Eigen::VectorXd c = basis_pursuit(dict, y, 1e-10);
    CHECK(c(0) == doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-6));
    CHECK(c(1) == doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-6));
    CHECK(std::abs(c(2)) < 1e-8);
    CHECK(std::abs(c(3)) < 1e-8);
  }

  SUBCASE("infeasible target") {
    Eigen::MatrixXd dict = Eigen::MatrixXd::Zero(3, 2);
    dict(0, 0) = 1;
    dict(1, 1) = 1;
    CHECK_THROWS_AS(basis_pursuit(dict, Eigen::Vector3d(0, 0, 1), 1e-8),
                    Infeasible);
  }
}

TEST_CASE("basis pursuit objective matches the LP oracle") {
  Rng rng(99);
  int done = 0;
  while (done < 10) {
    const int n = 5, m = 8;
    Eigen::MatrixXd dict = random_unit_columns(n, m - 1, rng);
    // Guarantee feasibility: target is a sparse combination.
    Eigen::VectorXd truth = Eigen::VectorXd::Zero(m - 1);
    truth(rng.uniform_int(m - 1)) = rng.normal();
    truth(rng.uniform_int(m - 1)) += rng.normal();
    Eigen::VectorXd y = dict * truth;
    if (y.norm() < 1e-3) continue;
    y.normalize();

    const Eigen::VectorXd c = basis_pursuit(dict, y, 1e-9);
    const double lp = oracles::l1_min_objective(dict, y);
    CHECK(c.lpNorm<1>() == doctest::Approx(lp).epsilon(1e-6));
    ++done;
  }
}

TEST_CASE("basis pursuit objective below the small-lambda lasso norm") {
  Rng rng(12);
  const Eigen::MatrixXd dict = random_unit_columns(5, 7, rng);
  Eigen::VectorXd truth = Eigen::VectorXd::Zero(7);
  truth(1) = 1.2;
  truth(4) = -0.7;
  const Eigen::VectorXd y = dict * truth;

  const Eigen::VectorXd c = basis_pursuit(dict, y, 1e-9);
  // At lambda -> 0 the lasso l1 norm climbs to the basis pursuit optimum;
  // the slack covers the remaining O(lambda) gap.
  const LassoResult tiny = lasso(dict, y, 1e-7);
  CHECK(c.lpNorm<1>() <= tiny.coeff.lpNorm<1>() + 1e-6);
}

TEST_CASE("l0_min enumerations") {
  SUBCASE("single-atom supports, including sign flips") {
    Eigen::MatrixXd dict(3, 4);
    dict.col(0) = Eigen::Vector3d(1, 0, 0);
    dict.col(1) = Eigen::Vector3d(-1, 0, 0);
    dict.col(2) = Eigen::Vector3d(0, 1, 0);
    dict.col(3) = Eigen::Vector3d(0.6, 0.8, 0);
    const auto supports = l0_min(dict, Eigen::Vector3d(1, 0, 0), 1e-9);
    REQUIRE(supports.size() == 2);
    CHECK(supports[0] == std::vector<int>{0});
    CHECK(supports[1] == std::vector<int>{1});
  }

  SUBCASE("general-position plane: every pair is a minimal support") {
    Rng rng(3);
    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(4, 2);
    basis(0, 0) = 1;
    basis(1, 1) = 1;
    Eigen::MatrixXd dict(4, 4);
    for (int j = 0; j < 4; ++j) {
      Eigen::Vector2d g(rng.normal(), rng.normal());
      dict.col(j) = basis * (g / g.norm());
    }
    Eigen::Vector2d g(rng.normal(), rng.normal());
    const Eigen::VectorXd target = basis * (g / g.norm());
    const auto supports = l0_min(dict, target, 1e-9);
    CHECK(supports.size() == 6);  // all C(4,2) pairs
    for (const auto& s : supports) CHECK(s.size() == 2);
  }

  SUBCASE("orthogonal target is infeasible") {
    Eigen::MatrixXd dict = Eigen::MatrixXd::Identity(3, 2);
    CHECK_THROWS_AS(l0_min(dict, Eigen::Vector3d(0, 0, 1), 1e-9), Infeasible);
  }

  SUBCASE("budget enforcement") {
    Rng rng(8);
    const Eigen::MatrixXd dict = random_unit_columns(4, 12, rng);
    Eigen::VectorXd y(4);
    for (int i = 0; i < 4; ++i) y(i) = rng.normal();
    L0Options opts;
    opts.budget = 10;
    CHECK_THROWS_AS(l0_min(dict, y.normalized(), 1e-9, opts), BudgetExceeded);
  }
}

TEST_CASE("l0 support size never exceeds the basis pursuit support") {
  Rng rng(21);
  for (int trial = 0; trial < 8; ++trial) {
    Eigen::MatrixXd basis = random_orthonormal(5, 2, rng);
    Eigen::MatrixXd dict(5, 5);
    for (int j = 0; j < 5; ++j) {
      Eigen::Vector2d g(rng.normal(), rng.normal());
      dict.col(j) = basis * (g / g.norm());
    }
    Eigen::Vector2d g(rng.normal(), rng.normal());
    const Eigen::VectorXd y = basis * (g / g.norm());

    const auto supports = l0_min(dict, y, 1e-8);
    const Eigen::VectorXd c = basis_pursuit(dict, y, 1e-8);
    const std::size_t bp_support = support_indices(c).size();
    REQUIRE(!supports.empty());
    CHECK(supports.front().size() <= bp_support);
  }
}

TEST_CASE("self-expression matrix assembly") {
  SUBCASE("two identical unit columns") {
    Eigen::MatrixXd y(3, 2);
    y.col(0) = Eigen::Vector3d(0, 1, 0);
    y.col(1) = Eigen::Vector3d(0, 1, 0);
    const CoefficientMatrix cm =
        self_expression_matrix(y, SolverKind::BasisPursuit, {});
    CHECK(cm.coeffs(0, 0) == 0.0);
    CHECK(cm.coeffs(1, 1) == 0.0);
    CHECK(cm.coeffs(1, 0) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(cm.coeffs(0, 1) == doctest::Approx(1.0).epsilon(1e-6));
  }

  SUBCASE("diagonal is exactly zero") {
    Rng rng(17);
    const Eigen::MatrixXd y = random_unit_columns(5, 8, rng);
    SelfExpressionParams params;
    params.lambda = 0.2;
    const CoefficientMatrix cm =
        self_expression_matrix(y, SolverKind::Lasso, params);
    for (int i = 0; i < 8; ++i) CHECK(cm.coeffs(i, i) == 0.0);
    CHECK(cm.kkt_residuals.maxCoeff() <= 1e-8);
  }

  SUBCASE("zero column is rejected") {
    Eigen::MatrixXd y = Eigen::MatrixXd::Identity(3, 3);
    y.col(1).setZero();
    CHECK_THROWS_AS(self_expression_matrix(y, SolverKind::BasisPursuit, {}),
                    DegenerateInput);
  }

  SUBCASE("adversarial lasso supports pair each point with its partner") {
    const Dataset ds = gen_adversarial(0.1);
    for (double lambda : {0.05, 0.2, 0.45}) {
      SelfExpressionParams params;
      params.lambda = lambda;
      const CoefficientMatrix cm =
          self_expression_matrix(ds.y, SolverKind::Lasso, params);
      // Scalar soft-threshold closed form: the partner atom (same axis,
      // opposite sign) carries coefficient -(1 - lambda).
      for (int i = 0; i < 8; ++i) {
        const int partner = i % 2 == 0 ? i + 1 : i - 1;
        const auto support = support_indices(cm.coeffs.col(i));
        REQUIRE(support.size() == 1);
        CHECK(support[0] == partner);
        CHECK(cm.coeffs(partner, i) ==
              doctest::Approx(-(1.0 - lambda)).epsilon(1e-9));
      }
    }
  }
}
