#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace coint_rec::theory {

/// Free inputs of the REC constant pipeline. Defaults: delta = 0.5,
/// kappa_free = 0.1, C1 = 1, which satisfy kappa_free < sqrt(1 - delta).
struct TheoryInputs {
  double c0 = 3.0;
  double c_sigma = 1.0;
  double C_sigma = 1.0;
  double delta = 0.5;
  double kappa_free = 0.1;
  double C1 = 1.0;
  std::size_t s = 1;
  std::size_t N = 2;
  std::size_t T = 1;
};

struct TheoryConstants {
  TheoryInputs inputs;

  double K_delta = 0.0;
  double C_kappa = 0.0;
  std::uint64_t m_kappa = 0;
  double C2 = 0.0;
  double sqrt_phi_s = 0.0;
  double phi_s = 0.0;
  /// lambda_{phi_s,1}: largest shifted eigenvalue at the chosen shift.
  double lambda_phi_s_1 = 0.0;
  double R_s = 0.0;
  double C_mu = 0.0;
  double kappa_0 = 0.0;
  double f_T = 0.0;
  double mu_min_lb = 0.0;

  /// s + m_kappa <= N (Bickel side condition at m = m_kappa).
  bool feasible = false;
  /// ceil(c0^2 C_sigma s / c_sigma) < N, the stated precondition.
  bool theorem_precondition = false;
};

/// max(e^{-d}/(1-d)^{1-d}, e^{d}/(1+d)^{1+d}); in (0, 1) for d in (0, 1).
double k_delta(double delta);

/// f_T = s log^{3/4}(N) / T.
double scaling_factor(std::size_t s, std::size_t N, std::size_t T);

/// Evaluates the full constant pipeline. Throws DomainError on
/// delta outside (0,1), kappa_free outside (0, sqrt(1-delta)), nonpositive
/// covariance bounds or c0, s = 0, N < 2, T = 0. Infeasible side conditions
/// are reported through the flags, never thrown.
TheoryConstants derive_constants(const TheoryInputs& in);

/// A probability bound returned raw. `vacuous` marks values that carry no
/// information: below 0 for a lower bound, at or above 1 for an upper bound.
struct Bound {
  double value = 0.0;
  bool vacuous = false;
};

/// 1 - (4T + C2 s) exp(-C1 s log N), unclamped.
Bound rec_probability_bound(std::size_t T, std::size_t N, std::size_t s,
                            double C1, double C2);

/// Log exponents of the empirical-process tail bound: `proof` uses
/// log^3 N and log^{3/2} N, `statement` uses log^4 N and log^2 N.
enum class TailBoundVariant { proof, statement };

struct EmpiricalProcessTerms {
  double azuma = 0.0;       // exp(-2 a^2 T^{3-2m} / (s^4 log^k N))
  double truncation = 0.0;  // 2T exp(-T^{m-1/2} / (2 C_sigma))
  double cross = 0.0;       // 2 exp(-a T^2 / (4 C_sigma s^2 log^j N))
  double total = 0.0;       // 2N (azuma + truncation + cross)
};

EmpiricalProcessTerms empirical_process_terms(
    double a, std::size_t T, std::size_t N, std::size_t s, double C_sigma,
    double m, TailBoundVariant variant = TailBoundVariant::proof);

/// Upper bound on P(f_T^2 ||X'eps_y||_inf >= a). Throws DomainError for
/// a <= 0, N < 2, T = 0, s = 0 or C_sigma <= 0.
double empirical_process_bound(double a, std::size_t T, std::size_t N,
                               std::size_t s, double C_sigma, double m,
                               TailBoundVariant variant = TailBoundVariant::proof);

/// `theorem` is the closed-form probability of the lasso error bound;
/// `proof` substitutes a = f_T^2 lambda / 4 into the empirical-process bound,
/// which gives exp(-lambda^2/(8T^{1+2m})) and exp(-lambda/(16 C_sigma)).
enum class LassoProbabilityVariant { theorem, proof };

Bound lasso_error_probability(
    double lambda, std::size_t T, std::size_t N, std::size_t s,
    double C_sigma, double m, double C1, double C2,
    LassoProbabilityVariant variant = LassoProbabilityVariant::theorem);

enum class ChernoffSide { min, max };

/// dim * (e^{-d}/(1-d)^{1-d})^{mu/R} (min side, d in [0,1]) or
/// dim * (e^{d}/(1+d)^{1+d})^{mu/R} (max side, d >= 0).
double matrix_chernoff_tail(double mu_over_R, double delta, std::size_t dim,
                            ChernoffSide side);

struct CorollaryDiagnostics {
  double ratio_penalty = 0.0;    // T^{1+xi} log^{1/2} N / lambda
  double ratio_dimension = 0.0;  // log N / T^xi
  double ratio_sparsity = 0.0;   // log T / (s log N)
  double rate = 0.0;             // s^3 log^2 N / T^{1-xi}
  double A1 = 0.0;
  double A2 = 0.0;
  double A3 = 0.0;
  double A4 = 0.0;
  double m = 0.0;  // 1/2 + xi
};

CorollaryDiagnostics corollary_conditions(std::size_t T, std::size_t N,
                                          std::size_t s, double lambda,
                                          double xi, double C_sigma,
                                          double C1, double C2);

}  // namespace coint_rec::theory
