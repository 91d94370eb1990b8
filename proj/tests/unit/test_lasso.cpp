#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "coint_rec/error.hpp"
#include "coint_rec/lasso.hpp"
#include "coint_rec/rng.hpp"

namespace lasso = coint_rec::lasso;

namespace {

struct Data {
  Eigen::VectorXd y;
  Eigen::MatrixXd X;
};

Data make_data(int T, int N, std::uint64_t seed) {
  coint_rec::Rng rng(seed);
  Data d{Eigen::VectorXd(T), Eigen::MatrixXd(T, N)};
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < T; ++i) d.X(i, j) = rng.normal();
  for (int i = 0; i < T; ++i) d.y(i) = d.X(i, 0) - 0.5 * d.X(i, 1 % N) + rng.normal();
  return d;
}

Eigen::MatrixXd orthogonal_design() {
  Eigen::MatrixXd S(4, 3);
  S << 1, 1, 1,
       1, -1, 1,
       1, 1, -1,
       1, -1, -1;
  return S;
}

}  // namespace

TEST(SoftThreshold, Examples) {
  EXPECT_EQ(lasso::soft_threshold(3.0, 1.0), 2.0);
  EXPECT_EQ(lasso::soft_threshold(-3.0, 1.0), -2.0);
  EXPECT_EQ(lasso::soft_threshold(0.5, 1.0), 0.0);
  EXPECT_EQ(lasso::soft_threshold(-1.0, 1.0), 0.0);
  EXPECT_EQ(lasso::soft_threshold(2.0, 0.0), 2.0);
}

TEST(Fit, LargePenaltyGivesZero) {
  const auto d = make_data(30, 5, 1);
  const double lmax = 2.0 * (d.X.transpose() * d.y).cwiseAbs().maxCoeff();
  const auto sol = lasso::fit({d.y, d.X, lmax, 1.0});
  EXPECT_TRUE(sol.converged);
  EXPECT_EQ(sol.beta_hat, Eigen::VectorXd::Zero(5));
  EXPECT_EQ(lasso::kkt_residual({d.y, d.X, lmax, 1.0}, Eigen::VectorXd::Zero(5)), 0.0);
  // Just below the threshold the zero vector violates stationarity.
  EXPECT_GT(lasso::kkt_residual({d.y, d.X, 0.9 * lmax, 1.0}, Eigen::VectorXd::Zero(5)), 0.0);
}

TEST(Fit, ZeroPenaltyMatchesNormalEquations) {
  const auto d = make_data(40, 6, 2);
  const Eigen::VectorXd ols = (d.X.transpose() * d.X).ldlt().solve(d.X.transpose() * d.y);
  lasso::LassoOptions opt;
  opt.tol = 1e-12;
  const auto sol = lasso::fit({d.y, d.X, 0.0, 1.0}, opt);
  EXPECT_TRUE(sol.converged);
  EXPECT_LT((sol.beta_hat - ols).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Fit, OrthogonalDesignIsCoordinatewiseSoftThreshold) {
  const Eigen::MatrixXd X = orthogonal_design();
  const Eigen::VectorXd y = (Eigen::VectorXd(4) << 3.0, -1.0, 2.0, 0.5).finished();
  const double lambda = 6.0;
  const auto sol = lasso::fit({y, X, lambda, 1.0});
  for (int j = 0; j < 3; ++j) {
    const double expected = lasso::soft_threshold(2.0 * X.col(j).dot(y), lambda) / 8.0;
    EXPECT_NEAR(sol.beta_hat(j), expected, 1e-12);
  }
}

TEST(Fit, KktAndDescent) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto d = make_data(50, 12, 10 + seed);
    const double lambda = 0.2 * 2.0 * (d.X.transpose() * d.y).cwiseAbs().maxCoeff();
    lasso::LassoOptions opt;
    opt.check_descent = true;
    opt.tol = 1e-10;
    const lasso::LassoProblem problem{d.y, d.X, lambda, 1.0};
    const auto sol = lasso::fit(problem, opt);
    EXPECT_TRUE(sol.converged);
    EXPECT_LT(sol.kkt_residual, 1e-6 * lambda);
    EXPECT_NEAR(sol.objective, lasso::objective(problem, sol.beta_hat), 1e-9 * sol.objective);
    EXPECT_LE(sol.objective, lasso::objective(problem, Eigen::VectorXd::Zero(12)));
    // Independent KKT oracle.
    const Eigen::VectorXd g = 2.0 * d.X.transpose() * (d.y - d.X * sol.beta_hat);
    for (int j = 0; j < 12; ++j) {
      if (sol.beta_hat(j) != 0.0)
        EXPECT_NEAR(g(j), lambda * (sol.beta_hat(j) > 0 ? 1.0 : -1.0), 1e-6 * lambda);
      else
        EXPECT_LE(std::abs(g(j)), lambda * (1 + 1e-6));
    }
  }
}

TEST(Fit, RescaledObjectiveHasSameMinimizer) {
  const auto d = make_data(60, 8, 3);
  const double lambda = 20.0, f = 0.1;
  lasso::LassoOptions opt;
  opt.tol = 1e-12;
  const auto plain = lasso::fit({d.y, d.X, lambda, 1.0}, opt);
  const auto scaled = lasso::fit({d.y, d.X, f * f * lambda, f * f}, opt);
  EXPECT_LT((plain.beta_hat - scaled.beta_hat).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Fit, PathIsWarmStartedAndMonotoneInSparsity) {
  const auto d = make_data(40, 10, 4);
  const double lmax = 2.0 * (d.X.transpose() * d.y).cwiseAbs().maxCoeff();
  const auto path = lasso::fit_path({d.y, d.X, 0.0, 1.0}, {lmax, 0.5 * lmax, 0.1 * lmax});
  ASSERT_EQ(path.size(), 3u);
  EXPECT_EQ(path[0].beta_hat.lpNorm<1>(), 0.0);
  EXPECT_LE(path[1].beta_hat.lpNorm<1>(), path[2].beta_hat.lpNorm<1>());
  const auto cold = lasso::fit({d.y, d.X, 0.1 * lmax, 1.0});
  EXPECT_LT((cold.beta_hat - path[2].beta_hat).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Fit, ZeroColumnIsSkipped) {
  auto d = make_data(30, 4, 5);
  d.X.col(2).setZero();
  const auto sol = lasso::fit({d.y, d.X, 1.0, 1.0});
  EXPECT_EQ(sol.skipped_columns, (std::vector<std::size_t>{2}));
  EXPECT_EQ(sol.beta_hat(2), 0.0);
  EXPECT_TRUE(sol.converged);
}

TEST(Fit, RejectsBadInput) {
  auto d = make_data(10, 3, 6);
  EXPECT_THROW(lasso::fit({d.y, d.X, -1.0, 1.0}), coint_rec::InvalidInput);
  d.X(3, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(lasso::fit({d.y, d.X, 1.0, 1.0}), coint_rec::InvalidInput);
  auto e = make_data(10, 3, 6);
  e.y(0) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(lasso::fit({e.y, e.X, 1.0, 1.0}), coint_rec::InvalidInput);
}

TEST(EmpiricalProcess, MatchesNaiveLoop) {
  const auto d = make_data(25, 7, 7);
  const double f = 0.3;
  double naive = 0.0;
  for (int j = 0; j < 7; ++j) {
    double dot = 0.0;
    for (int t = 0; t < 25; ++t) dot += d.X(t, j) * d.y(t);
    naive = std::max(naive, std::abs(dot));
  }
  EXPECT_NEAR(lasso::empirical_process_stat(d.X, d.y, f), f * f * naive, 1e-12 * naive);
}

TEST(Cone, Examples) {
  const Eigen::VectorXd v = (Eigen::VectorXd(4) << 1.0, -1.0, 2.0, 1.0).finished();
  auto c = lasso::cone_membership(v, {0}, 3.0);
  EXPECT_FALSE(c.inside);
  EXPECT_DOUBLE_EQ(c.slack, -1.0);
  c = lasso::cone_membership(v, {0}, 4.0);
  EXPECT_TRUE(c.inside);
  EXPECT_DOUBLE_EQ(c.slack, 0.0);
  c = lasso::cone_membership(v, {0, 2}, 1.0);
  EXPECT_TRUE(c.inside);
  EXPECT_DOUBLE_EQ(c.slack, 1.0);
  c = lasso::cone_membership(v, {3}, 1.0);
  EXPECT_FALSE(c.inside);
  EXPECT_DOUBLE_EQ(c.slack, -3.0);
  EXPECT_TRUE(lasso::cone_membership(Eigen::VectorXd::Zero(4), {1}, 3.0).inside);
  EXPECT_THROW(lasso::cone_membership(v, {}, 3.0), coint_rec::DomainError);
  EXPECT_THROW(lasso::cone_membership(v, {4}, 3.0), coint_rec::DomainError);
}

TEST(ErrorBound, Formula) {
  const double expected = 4.0 * 100.0 * std::pow(std::log(3.0), 1.5) / 10000.0;
  EXPECT_NEAR(lasso::error_bound_rhs(10.0, 100, 3, 1, 1.0), expected, 1e-15);
  EXPECT_NEAR(expected, 0.0460601, 1e-6);
  EXPECT_NEAR(lasso::error_bound_rhs(10.0, 100, 3, 2, 0.5), 32.0 * expected, 1e-12);
  EXPECT_THROW(lasso::error_bound_rhs(10.0, 100, 3, 1, 0.0), coint_rec::DomainError);
}
