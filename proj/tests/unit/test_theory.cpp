#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "coint_rec/error.hpp"
#include "coint_rec/spectral.hpp"
#include "coint_rec/theory.hpp"

namespace th = coint_rec::theory;
using coint_rec::DomainError;

namespace {

constexpr double kPi = std::numbers::pi;

double k_oracle(double d) {
  return std::max(std::exp(-d) / std::pow(1 - d, 1 - d), std::exp(d) / std::pow(1 + d, 1 + d));
}

th::TheoryInputs defaults(std::size_t s, std::size_t N, std::size_t T) {
  th::TheoryInputs in;
  in.s = s;
  in.N = N;
  in.T = T;
  return in;
}

}  // namespace

TEST(KDelta, HalfMatchesBothBranches) {
  EXPECT_NEAR(std::exp(-0.5) / std::sqrt(0.5), 0.8577639, 1e-7);
  EXPECT_NEAR(th::k_delta(0.5), std::exp(0.5) / std::pow(1.5, 1.5), 1e-15);
  EXPECT_NEAR(th::k_delta(0.5), 0.8974502, 1e-7);
}

TEST(KDelta, InsideUnitIntervalOnGrid) {
  for (int i = 1; i <= 99; ++i) {
    const double d = i / 100.0;
    const double k = th::k_delta(d);
    EXPECT_GT(k, 0.0);
    EXPECT_LT(k, 1.0);
    EXPECT_NEAR(k, k_oracle(d), 1e-14);
  }
  EXPECT_THROW(th::k_delta(0.0), DomainError);
  EXPECT_THROW(th::k_delta(1.0), DomainError);
}

TEST(DeriveConstants, DefaultPipeline) {
  const auto k = th::derive_constants(defaults(2, 100, 200));
  const double gap = std::sqrt(0.5) - 0.1;
  EXPECT_NEAR(k.C_kappa, 13.5 / (gap * gap), 1e-12);
  EXPECT_NEAR(k.C_kappa, 36.6272, 1e-4);
  EXPECT_EQ(k.m_kappa, 74u);
  EXPECT_DOUBLE_EQ(k.C2, k.C_kappa + 1.0);
  EXPECT_TRUE(k.feasible);

  const double log_n = std::log(100.0), log_k = std::log(k.K_delta);
  const double sqrt_phi = -9 * kPi * kPi * 2 * 4 * 4 * std::pow(log_n, 1.5) / (200 * log_k);
  EXPECT_NEAR(k.sqrt_phi_s, sqrt_phi, 1e-9 * sqrt_phi);
  EXPECT_NEAR(k.phi_s, sqrt_phi * sqrt_phi, 1e-9 * sqrt_phi * sqrt_phi);
  const double w1 = kPi / 401.0;
  const double lam1 = 1.0 / (2.0 * (1.0 + k.phi_s - std::cos(w1)));
  EXPECT_NEAR(k.lambda_phi_s_1, lam1, 1e-12 * lam1);
  EXPECT_NEAR(k.R_s, lam1 * 2 * (2 * std::sqrt(log_n) + 1), 1e-12 * k.R_s);
  const double c_mu = -81 * std::pow(kPi, 4) * 8 * k.C2 * k.C2 / log_k;
  EXPECT_NEAR(k.C_mu, c_mu, 1e-9 * c_mu);
  EXPECT_NEAR(k.kappa_0, 0.1 / std::sqrt(c_mu), 1e-12 * k.kappa_0);
  EXPECT_NEAR(k.f_T, 2 * std::pow(log_n, 0.75) / 200, 1e-15);
  EXPECT_NEAR(k.mu_min_lb, 200 / (9 * kPi * kPi * sqrt_phi), 1e-9 * k.mu_min_lb);
}

TEST(DeriveConstants, KappaZeroMatchesExpandedForm) {
  for (double c0 : {1.0, 3.0}) {
    for (double C1 : {0.5, 1.0, 2.0}) {
      auto in = defaults(3, 500, 100);
      in.c0 = c0;
      in.C1 = C1;
      in.c_sigma = 0.5;
      in.C_sigma = 2.0;
      const auto k = th::derive_constants(in);
      const double c_kappa = c0 * c0 * 2.0 * 1.5 / (0.5 * std::pow(std::sqrt(0.5) - 0.1, 2));
      const double expanded = 0.1 * 0.5 * std::sqrt(-std::log(k.K_delta)) /
                              (9 * kPi * kPi * std::sqrt((C1 + 1) * (C1 + 3)) * 2.0 *
                               (c_kappa + 1));
      EXPECT_NEAR(k.kappa_0, expanded, 1e-12 * expanded);
    }
  }
}

TEST(DeriveConstants, ScalingFactor) {
  EXPECT_NEAR(th::scaling_factor(1, 3, 10), std::pow(std::log(3.0), 0.75) / 10, 1e-16);
  EXPECT_NEAR(th::scaling_factor(3, 50, 200), 3 * std::pow(std::log(50.0), 0.75) / 200, 1e-16);
}

TEST(DeriveConstants, InfeasibleIsFlaggedNotThrown) {
  const auto k = th::derive_constants(defaults(3, 50, 200));
  EXPECT_EQ(k.m_kappa, 110u);
  EXPECT_FALSE(k.feasible);
  EXPECT_GT(k.kappa_0, 0.0);
}

TEST(DeriveConstants, SignsHoldOnGrid) {
  for (double delta : {0.1, 0.5, 0.9})
    for (std::size_t s : {1u, 3u})
      for (std::size_t N : {2u, 50u, 1000u})
        for (std::size_t T : {10u, 200u}) {
          auto in = defaults(s, N, T);
          in.delta = delta;
          in.kappa_free = 0.5 * std::sqrt(1 - delta);
          const auto k = th::derive_constants(in);
          EXPECT_GT(k.phi_s, 0.0);
          EXPECT_GT(k.sqrt_phi_s, 0.0);
          EXPECT_GT(k.kappa_0, 0.0);
          EXPECT_GT(k.R_s, 0.0);
          EXPECT_GT(k.C_mu, 0.0);
          EXPECT_EQ(k.feasible, s + k.m_kappa <= N);
        }
}

TEST(DeriveConstants, DomainErrors) {
  auto in = defaults(2, 100, 200);
  in.delta = 1.0;
  EXPECT_THROW(th::derive_constants(in), DomainError);
  in = defaults(2, 100, 200);
  in.kappa_free = std::sqrt(0.5);
  EXPECT_THROW(th::derive_constants(in), DomainError);
  EXPECT_THROW(th::derive_constants(defaults(2, 1, 200)), DomainError);
  EXPECT_THROW(th::derive_constants(defaults(0, 10, 200)), DomainError);
}

TEST(DeriveConstants, PureFunction) {
  const auto a = th::derive_constants(defaults(2, 77, 123));
  const auto b = th::derive_constants(defaults(2, 77, 123));
  EXPECT_EQ(a.kappa_0, b.kappa_0);
  EXPECT_EQ(a.phi_s, b.phi_s);
  EXPECT_EQ(a.R_s, b.R_s);
  EXPECT_EQ(a.C_mu, b.C_mu);
}

TEST(RecProbabilityBound, Examples) {
  const auto b = th::rec_probability_bound(10, 100, 5, 1.0, 2.0);
  EXPECT_NEAR(b.value, 1.0 - 50.0 * std::exp(-5 * std::log(100.0)), 1e-15);
  EXPECT_NEAR(1.0 - b.value, 5.0e-9, 1e-11);
  EXPECT_FALSE(b.vacuous);

  const auto v = th::rec_probability_bound(1000, 2, 1, 0.1, 1.0);
  EXPECT_NEAR(v.value, 1.0 - 4001.0 * std::exp(-0.1 * std::log(2.0)), 1e-9);
  EXPECT_NEAR(v.value, -3732.065, 1e-3);
  EXPECT_TRUE(v.vacuous);

  EXPECT_NEAR(th::rec_probability_bound(10, 100, 40, 1.0, 2.0).value, 1.0, 1e-15);
  EXPECT_THROW(th::rec_probability_bound(10, 1, 1, 1.0, 2.0), DomainError);
}

TEST(RecProbabilityBound, Monotone) {
  for (std::size_t T : {10u, 100u})
    for (std::size_t N : {5u, 20u})
      for (std::size_t s : {1u, 2u}) {
        const double base = th::rec_probability_bound(T, N, s, 1, 2).value;
        EXPECT_GT(th::rec_probability_bound(T, N, s + 1, 1, 2).value, base);
        EXPECT_GT(th::rec_probability_bound(T, N + 5, s, 1, 2).value, base);
        EXPECT_LT(th::rec_probability_bound(T + 10, N, s, 1, 2).value, base);
      }
}

TEST(EmpiricalProcessBound, TermOracle) {
  const double a = 1.0, T = 200, N = 50, s = 3, m = 1.0;
  const double L = std::log(N);
  const double azuma = std::exp(-2 * a * a * std::pow(T, 3 - 2 * m) / (std::pow(s, 4) * L * L * L));
  const double middle = 2 * T * std::exp(-std::pow(T, m - 0.5) / 2.0);
  const double cross = 2 * std::exp(-a * T * T / (4 * s * s * std::pow(L, 1.5)));
  const double bound = th::empirical_process_bound(a, 200, 50, 3, 1.0, m);
  EXPECT_NEAR(bound, 2 * N * (azuma + middle + cross), 1e-12 * bound);
  EXPECT_TRUE(std::isfinite(bound));

  const auto st = th::empirical_process_terms(a, 200, 50, 3, 1.0, m, th::TailBoundVariant::statement);
  EXPECT_NEAR(st.azuma, std::exp(-2 * a * a * T / (81 * std::pow(L, 4))), 1e-15);
  EXPECT_NEAR(st.cross, 2 * std::exp(-a * T * T / (4 * 9 * L * L)), 1e-300);
}

TEST(EmpiricalProcessBound, MonotoneAndFloored) {
  const double middle = 4.0 * 50 * 200 * std::exp(-std::pow(200.0, 0.6) / 2.0);
  double prev = INFINITY;
  for (double a = 0.01; a < 1e4; a *= 1.7) {
    const double b = th::empirical_process_bound(a, 200, 50, 3, 1.0, 1.1);
    EXPECT_LE(b, prev);
    EXPECT_GE(b, middle * (1 - 1e-12));
    prev = b;
  }
  EXPECT_NEAR(th::empirical_process_bound(1e9, 200, 50, 3, 1.0, 1.1), middle, 1e-12 * middle);
  EXPECT_THROW(th::empirical_process_bound(0.0, 200, 50, 3, 1.0, 1.0), DomainError);
  EXPECT_THROW(th::empirical_process_bound(-1.0, 200, 50, 3, 1.0, 1.0), DomainError);
}

TEST(LassoErrorProbability, TermOracleAndOrdering) {
  const double T = 200, N = 50, lam = std::pow(T, 1.2), m = 0.6;
  const double bracket = 2 * N *
                         (std::exp(-2 * lam * lam / std::pow(T, 1 + 2 * m)) +
                          2 * T * std::exp(-std::pow(T, m - 0.5) / 2) +
                          2 * std::exp(-lam / 4));
  const double rec = th::rec_probability_bound(200, 50, 3, 1, 2).value;
  const auto b = th::lasso_error_probability(lam, 200, 50, 3, 1.0, m, 1.0, 2.0);
  EXPECT_NEAR(b.value, rec - bracket, 1e-9 * std::abs(rec - bracket));
  EXPECT_LE(b.value, rec);

  const auto p = th::lasso_error_probability(lam, 200, 50, 3, 1.0, m, 1.0, 2.0,
                                             th::LassoProbabilityVariant::proof);
  const double proof_bracket = 2 * N *
                               (std::exp(-lam * lam / (8 * std::pow(T, 1 + 2 * m))) +
                                2 * T * std::exp(-std::pow(T, m - 0.5) / 2) +
                                2 * std::exp(-lam / 16));
  EXPECT_NEAR(p.value, rec - proof_bracket, 1e-9 * std::abs(rec - proof_bracket));
}

TEST(LassoErrorProbability, LargePenaltyLimit) {
  const double rec = th::rec_probability_bound(200, 50, 3, 1, 2).value;
  const auto b = th::lasso_error_probability(1e12, 200, 50, 3, 1.0, 3.0, 1.0, 2.0);
  EXPECT_NEAR(b.value, rec, 1e-12);
  for (double lam : {1.0, 100.0, 1e4})
    for (double m : {0.5, 1.0, 2.0})
      EXPECT_LE(th::lasso_error_probability(lam, 100, 20, 2, 1.0, m, 1.0, 2.0).value,
                th::rec_probability_bound(100, 20, 2, 1.0, 2.0).value);
}

TEST(MatrixChernoff, Examples) {
  using th::ChernoffSide;
  EXPECT_EQ(th::matrix_chernoff_tail(3.0, 0.0, 5, ChernoffSide::min), 5.0);
  EXPECT_EQ(th::matrix_chernoff_tail(3.0, 0.0, 5, ChernoffSide::max), 5.0);
  EXPECT_NEAR(th::matrix_chernoff_tail(10, 0.5, 4, ChernoffSide::min),
              4 * std::pow(std::exp(-0.5) / std::sqrt(0.5), 10), 1e-12);
  EXPECT_NEAR(th::matrix_chernoff_tail(10, 0.5, 4, ChernoffSide::min), 0.862457, 1e-6);
  EXPECT_NEAR(th::matrix_chernoff_tail(10, 1.0, 4, ChernoffSide::max),
              4 * std::pow(std::exp(1.0) / 4.0, 10), 1e-12);
  EXPECT_NEAR(th::matrix_chernoff_tail(10, 1.0, 4, ChernoffSide::min), 4 * std::exp(-10.0), 1e-15);
  EXPECT_THROW(th::matrix_chernoff_tail(10, 1.5, 4, ChernoffSide::min), DomainError);
  EXPECT_THROW(th::matrix_chernoff_tail(10, -0.1, 4, ChernoffSide::max), DomainError);
}

TEST(CorollaryConditions, RatiosAndTerms) {
  const double T = 200, N = 50, s = 3, xi = 0.1;
  const double lam = std::pow(T, 1.1) * std::sqrt(std::log(N));
  const auto d = th::corollary_conditions(200, 50, 3, lam, xi, 1.0, 1.0, 2.0);
  EXPECT_NEAR(d.ratio_penalty, 1.0, 1e-14);
  const double L = std::log(N);
  EXPECT_NEAR(d.A1, std::exp(-2 * lam * lam / std::pow(T, 2.2) + L), 1e-12 * d.A1);
  EXPECT_NEAR(d.A2, std::exp(-std::pow(T, xi) / 2 + L + std::log(2 * T)), 1e-12 * d.A2);
  EXPECT_NEAR(d.A3, 2 * std::exp(-lam / 4 + L), 1e-300);
  EXPECT_NEAR(d.A4, 4 * std::exp(-s * L + std::log(T)) + 2 * std::exp(-s * L + std::log(s)),
              1e-12 * d.A4);
  EXPECT_NEAR(d.rate, 27 * L * L / std::pow(T, 0.9), 1e-12 * d.rate);
  EXPECT_DOUBLE_EQ(d.m, 0.6);
  for (double v : {d.A1, d.A2, d.A3, d.A4}) EXPECT_TRUE(std::isfinite(v));
}

// With lambda = T^{1+xi} log N the penalty ratio is the constant log^{-1/2} N;
// the dimension ratio falls with T while log T / (s log N) grows.
TEST(CorollaryConditions, RatioTrendsAlongHorizonGrid) {
  th::CorollaryDiagnostics prev{};
  bool first = true;
  for (std::size_t T = 100; T <= 3200; T *= 2) {
    const double lam = std::pow(double(T), 1.1) * std::log(100.0);
    const auto d = th::corollary_conditions(T, 100, 3, lam, 0.1, 1.0, 1.0, 2.0);
    EXPECT_NEAR(d.ratio_penalty, 1.0 / std::sqrt(std::log(100.0)), 1e-14);
    if (!first) {
      EXPECT_LT(d.ratio_dimension, prev.ratio_dimension);
      EXPECT_GT(d.ratio_sparsity, prev.ratio_sparsity);
      EXPECT_LT(d.rate, prev.rate);
    }
    prev = d;
    first = false;
  }
}
