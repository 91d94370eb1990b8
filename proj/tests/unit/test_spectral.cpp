#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "coint_rec/error.hpp"
#include "coint_rec/rng.hpp"
#include "coint_rec/spectral.hpp"

namespace sp = coint_rec::spectral;

namespace {

// U'U built entrywise from the running-sum operator, independent of walk_gram.
Eigen::MatrixXd gram_oracle(int T) {
  Eigen::MatrixXd U = Eigen::MatrixXd::Zero(T, T);
  for (int i = 0; i < T; ++i)
    for (int k = 0; k <= i; ++k) U(i, k) = 1.0;
  return U.transpose() * U;
}

Eigen::VectorXd dense_descending(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  return es.eigenvalues().reverse();
}

Eigen::MatrixXd random_matrix(int rows, int cols, std::uint64_t seed) {
  coint_rec::Rng rng(seed);
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = rng.normal();
  return m;
}

}  // namespace

TEST(WalkEigenvalues, SmallHorizons) {
  EXPECT_DOUBLE_EQ(sp::walk_eigenvalues(1).values[0], 1.0);

  const auto two = sp::walk_eigenvalues(2);
  EXPECT_NEAR(two.values[0], (3.0 + std::sqrt(5.0)) / 2.0, 1e-12);
  EXPECT_NEAR(two.values[1], (3.0 - std::sqrt(5.0)) / 2.0, 1e-12);

  const auto three = sp::walk_eigenvalues(3);
  const Eigen::Matrix3d g{{3, 2, 1}, {2, 2, 1}, {1, 1, 1}};
  const Eigen::VectorXd oracle = dense_descending(g);
  for (int t = 0; t < 3; ++t) EXPECT_NEAR(three.values[t], oracle(t), 1e-12);
  EXPECT_NEAR(three.values[0], 5.0489173, 1e-7);
  EXPECT_NEAR(three.values[1], 0.6431041, 1e-7);
  EXPECT_NEAR(three.values[2], 0.3079785, 1e-7);
  EXPECT_NEAR(three.sum(), 6.0, 1e-12);
}

TEST(WalkEigenvalues, RejectsZeroHorizon) {
  EXPECT_THROW(sp::walk_eigenvalues(0), coint_rec::DimensionError);
  EXPECT_THROW(sp::shifted_eigenvalues(0, 0.1), coint_rec::DimensionError);
}

TEST(WalkEigenvalues, FrequenciesAndOrdering) {
  for (std::size_t T : {1u, 4u, 17u, 100u}) {
    const auto seq = sp::walk_eigenvalues(T);
    ASSERT_EQ(seq.size(), T);
    for (std::size_t t = 0; t < T; ++t) {
      const double omega = (2.0 * (t + 1) - 1.0) * std::numbers::pi / (2.0 * T + 1.0);
      EXPECT_DOUBLE_EQ(seq.frequencies[t], omega);
      EXPECT_DOUBLE_EQ(sp::frequency(T, t + 1), omega);
      EXPECT_GT(seq.values[t], 0.0);
      EXPECT_GT(seq.frequencies[t], 0.0);
      EXPECT_LT(seq.frequencies[t], std::numbers::pi);
      if (t > 0) EXPECT_LT(seq.values[t], seq.values[t - 1]);
    }
  }
}

TEST(WalkEigenvalues, MatchesDenseEigendecomposition) {
  for (int T : {1, 2, 5, 16, 64, 128}) {
    const auto seq = sp::walk_eigenvalues(T);
    const Eigen::VectorXd oracle = dense_descending(gram_oracle(T));
    for (int t = 0; t < T; ++t)
      EXPECT_LE(std::abs(seq.values[t] - oracle(t)) / seq.values[t], 1e-8) << "T=" << T;
    const double trace = T * (T + 1) / 2.0;
    EXPECT_LE(std::abs(seq.sum() - trace) / trace, 1e-10);
  }
}

TEST(ShiftedEigenvalues, Examples) {
  EXPECT_DOUBLE_EQ(sp::shifted_eigenvalues(1, 0.0).values[0], 1.0);
  EXPECT_NEAR(sp::shifted_eigenvalues(1, 1.0).values[0], 1.0 / 3.0, 1e-15);
  const auto seq = sp::shifted_eigenvalues(2, 0.1);
  const double w1 = std::numbers::pi / 5.0, w2 = 3.0 * std::numbers::pi / 5.0;
  EXPECT_NEAR(seq.values[0], 1.0 / (2.0 * (1.1 - std::cos(w1))), 1e-14);
  EXPECT_NEAR(seq.values[1], 1.0 / (2.0 * (1.1 - std::cos(w2))), 1e-14);
  EXPECT_NEAR(seq.values[0], 1.7183134, 1e-7);
  EXPECT_NEAR(seq.values[1], 0.3548573, 1e-7);
}

TEST(ShiftedEigenvalues, ZeroShiftIsWalkAndPositiveShiftIsSmaller) {
  for (std::size_t T : {1u, 3u, 50u}) {
    const auto walk = sp::walk_eigenvalues(T);
    EXPECT_EQ(sp::shifted_eigenvalues(T, 0.0).values, walk.values);
    for (double phi : {1e-3, 0.1, 1.0, 10.0}) {
      const auto shifted = sp::shifted_eigenvalues(T, phi);
      for (std::size_t t = 0; t < T; ++t) EXPECT_LT(shifted.values[t], walk.values[t]);
    }
  }
}

TEST(ShiftedEigenvalues, RejectsNegativeShift) {
  EXPECT_THROW(sp::shifted_eigenvalues(5, -0.1), coint_rec::DomainError);
  EXPECT_THROW(sp::shifted_eigenvalues(5, std::nan("")), coint_rec::DomainError);
}

TEST(CumsumOperator, GramHasClosedFormEntries) {
  const int T = 7;
  const Eigen::MatrixXd g = sp::walk_gram(T);
  EXPECT_TRUE(g.isApprox(gram_oracle(T), 0.0));
  for (int i = 0; i < T; ++i)
    for (int j = 0; j < T; ++j) EXPECT_EQ(g(i, j), T - std::max(i, j));
  const Eigen::MatrixXd U = sp::cumsum_operator(T);
  EXPECT_EQ(U.sum(), T * (T + 1) / 2.0);
}

TEST(CumsumOperator, RunningSumMatchesNaiveProductBitExactly) {
  const Eigen::MatrixXd E = random_matrix(30, 4, 5);
  const Eigen::MatrixXd U = sp::cumsum_operator(30);
  const Eigen::MatrixXd S = sp::cumulative_sum(E);
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 30; ++i) {
      double acc = 0.0;
      for (int k = 0; k < 30; ++k) acc += U(i, k) * E(k, j);
      EXPECT_EQ(S(i, j), acc);
    }
}

TEST(WalkBasis, OrthonormalAndPairedWithClosedForm) {
  const int T = 20;
  const auto basis = sp::walk_basis(T);
  EXPECT_TRUE((basis.vectors.transpose() * basis.vectors)
                  .isApprox(Eigen::MatrixXd::Identity(T, T), 1e-12));
  const auto seq = sp::walk_eigenvalues(T);
  for (int t = 0; t < T; ++t)
    EXPECT_NEAR(basis.numeric_values(t), seq.values[t], 1e-9 * seq.values[t]);
  const Eigen::MatrixXd rebuilt = basis.vectors *
                                  basis.numeric_values.asDiagonal() *
                                  basis.vectors.transpose();
  EXPECT_TRUE(rebuilt.isApprox(sp::walk_gram(T), 1e-10));
}

TEST(ShiftedGram, ZeroShiftReproducesSampleGram) {
  const Eigen::MatrixXd E = random_matrix(40, 5, 17);
  const Eigen::MatrixXd S = sp::cumulative_sum(E);
  const Eigen::MatrixXd g = sp::shifted_gram(E, 0.0);
  EXPECT_TRUE(g.isApprox(S.transpose() * S, 1e-10));
  EXPECT_TRUE(g.isApprox(g.transpose(), 0.0));
}

TEST(ShiftedGram, IdentityInnovations) {
  const Eigen::MatrixXd g = sp::shifted_gram(Eigen::MatrixXd::Identity(2, 2), 0.0);
  const Eigen::Matrix2d expected{{2, 1}, {1, 1}};
  EXPECT_TRUE(g.isApprox(expected, 1e-12));
}

TEST(ShiftedGram, DifferenceIsPositiveSemidefinite) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Eigen::MatrixXd E = random_matrix(25, 6, 100 + seed);
    const Eigen::MatrixXd S = sp::cumulative_sum(E);
    const Eigen::MatrixXd sts = S.transpose() * S;
    const Eigen::MatrixXd diff = sts - sp::shifted_gram(E, 0.5);
    const double lmin = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(diff).eigenvalues()(0);
    EXPECT_GE(lmin, -1e-8 * sts.trace());
  }
}

TEST(ShiftedGram, BasisOverloadAgrees) {
  const Eigen::MatrixXd E = random_matrix(15, 3, 8);
  const auto basis = sp::walk_basis(15);
  EXPECT_EQ(sp::shifted_gram(E, 0.3), sp::shifted_gram(E, 0.3, basis));
}
