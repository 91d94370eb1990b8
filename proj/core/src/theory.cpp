#include "coint_rec/theory.hpp"

#include <cmath>
#include <numbers>

#include "coint_rec/error.hpp"
#include "coint_rec/spectral.hpp"

namespace coint_rec::theory {
namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw DomainError(std::string(name) + " must be finite and positive");
}

void require_dims(std::size_t T, std::size_t N, std::size_t s) {
  if (T == 0) throw DomainError("T must be at least 1");
  if (N < 2) throw DomainError("N must be at least 2 (log N must be positive)");
  if (s == 0) throw DomainError("s must be at least 1");
}

}  // namespace

double k_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw DomainError("delta must lie in (0, 1)");
  const double lower = std::exp(-delta - (1.0 - delta) * std::log1p(-delta));
  const double upper = std::exp(delta - (1.0 + delta) * std::log1p(delta));
  return std::max(lower, upper);
}

double scaling_factor(std::size_t s, std::size_t N, std::size_t T) {
  require_dims(T, N, s);
  return static_cast<double>(s) *
         std::pow(std::log(static_cast<double>(N)), 0.75) /
         static_cast<double>(T);
}

TheoryConstants derive_constants(const TheoryInputs& in) {
  require_positive(in.c0, "c0");
  require_positive(in.c_sigma, "c_sigma");
  require_positive(in.C_sigma, "C_sigma");
  require_positive(in.C1, "C1");
  if (in.c_sigma > in.C_sigma)
    throw DomainError("c_sigma must not exceed C_sigma");
  require_dims(in.T, in.N, in.s);
  if (!(in.delta > 0.0 && in.delta < 1.0))
    throw DomainError("delta must lie in (0, 1)");
  const double root = std::sqrt(1.0 - in.delta);
  if (!(in.kappa_free > 0.0 && in.kappa_free < root))
    throw DomainError("kappa_free must lie in (0, sqrt(1 - delta))");

  const double s = static_cast<double>(in.s);
  const double T = static_cast<double>(in.T);
  const double log_n = std::log(static_cast<double>(in.N));
  const double c1_product = (in.C1 + 1.0) * (in.C1 + 3.0);

  TheoryConstants out;
  out.inputs = in;
  out.K_delta = k_delta(in.delta);
  const double log_k = std::log(out.K_delta);  // < 0

  const double gap = root - in.kappa_free;
  out.C_kappa = in.c0 * in.c0 * in.C_sigma * (1.0 + in.delta) /
                (in.c_sigma * gap * gap);
  out.m_kappa = static_cast<std::uint64_t>(std::ceil(out.C_kappa * s));
  out.C2 = out.C_kappa + 1.0;

  out.sqrt_phi_s = -9.0 * kPi * kPi * c1_product * in.C_sigma * in.C_sigma *
                   s * s * std::pow(log_n, 1.5) / (in.c_sigma * T * log_k);
  out.phi_s = out.sqrt_phi_s * out.sqrt_phi_s;
  out.lambda_phi_s_1 = spectral::shifted_eigenvalues(in.T, out.phi_s).values[0];
  out.R_s = in.C_sigma * in.C_sigma * out.lambda_phi_s_1 * s *
            ((in.C1 + 1.0) * std::sqrt(log_n) + 1.0);
  out.C_mu = -81.0 * kPi * kPi * kPi * kPi * c1_product * in.C_sigma *
             in.C_sigma * out.C2 * out.C2 /
             (in.c_sigma * in.c_sigma * log_k);
  out.kappa_0 = in.kappa_free / std::sqrt(out.C_mu);
  out.f_T = scaling_factor(in.s, in.N, in.T);
  out.mu_min_lb = in.c_sigma * T / (9.0 * kPi * kPi * out.sqrt_phi_s);

  out.feasible = in.s + out.m_kappa <= in.N;
  const double precondition =
      std::ceil(in.c0 * in.c0 * in.C_sigma * s / in.c_sigma);
  out.theorem_precondition = precondition < static_cast<double>(in.N);
  return out;
}

Bound rec_probability_bound(std::size_t T, std::size_t N, std::size_t s,
                            double C1, double C2) {
  require_dims(T, N, s);
  const double log_n = std::log(static_cast<double>(N));
  const double value =
      1.0 - (4.0 * static_cast<double>(T) + C2 * static_cast<double>(s)) *
                std::exp(-C1 * static_cast<double>(s) * log_n);
  return {value, value < 0.0};
}

EmpiricalProcessTerms empirical_process_terms(double a, std::size_t T,
                                              std::size_t N, std::size_t s,
                                              double C_sigma, double m,
                                              TailBoundVariant variant) {
  require_positive(a, "threshold a");
  require_positive(C_sigma, "C_sigma");
  require_dims(T, N, s);
  if (!std::isfinite(m)) throw DomainError("truncation exponent m must be finite");

  const double t = static_cast<double>(T);
  const double sd = static_cast<double>(s);
  const double log_n = std::log(static_cast<double>(N));
  const double azuma_log_power = variant == TailBoundVariant::proof ? 3.0 : 4.0;
  const double cross_log_power = variant == TailBoundVariant::proof ? 1.5 : 2.0;

  EmpiricalProcessTerms terms;
  terms.azuma = std::exp(-2.0 * a * a * std::pow(t, 3.0 - 2.0 * m) /
                         (std::pow(sd, 4) * std::pow(log_n, azuma_log_power)));
  terms.truncation =
      2.0 * t * std::exp(-std::pow(t, m - 0.5) / (2.0 * C_sigma));
  terms.cross = 2.0 * std::exp(-a * t * t /
                               (4.0 * C_sigma * sd * sd *
                                std::pow(log_n, cross_log_power)));
  terms.total = 2.0 * static_cast<double>(N) *
                (terms.azuma + terms.truncation + terms.cross);
  return terms;
}

double empirical_process_bound(double a, std::size_t T, std::size_t N,
                               std::size_t s, double C_sigma, double m,
                               TailBoundVariant variant) {
  return empirical_process_terms(a, T, N, s, C_sigma, m, variant).total;
}

Bound lasso_error_probability(double lambda, std::size_t T, std::size_t N,
                              std::size_t s, double C_sigma, double m,
                              double C1, double C2,
                              LassoProbabilityVariant variant) {
  require_positive(lambda, "lambda");
  require_positive(C_sigma, "C_sigma");
  require_dims(T, N, s);
  const double t = static_cast<double>(T);
  const bool theorem = variant == LassoProbabilityVariant::theorem;

  const double first =
      theorem ? std::exp(-2.0 * lambda * lambda / std::pow(t, 1.0 + 2.0 * m))
              : std::exp(-lambda * lambda / (8.0 * std::pow(t, 1.0 + 2.0 * m)));
  const double middle =
      2.0 * t * std::exp(-std::pow(t, m - 0.5) / (2.0 * C_sigma));
  const double last = theorem ? 2.0 * std::exp(-lambda / (4.0 * C_sigma))
                              : 2.0 * std::exp(-lambda / (16.0 * C_sigma));
  const double bracket =
      2.0 * static_cast<double>(N) * (first + middle + last);
  const double value =
      rec_probability_bound(T, N, s, C1, C2).value - bracket;
  return {value, value < 0.0};
}

double matrix_chernoff_tail(double mu_over_R, double delta, std::size_t dim,
                            ChernoffSide side) {
  if (!(mu_over_R > 0.0)) throw DomainError("mu/R must be positive");
  if (dim == 0) throw DomainError("dimension must be at least 1");
  double log_base = 0.0;
  if (side == ChernoffSide::min) {
    if (!(delta >= 0.0 && delta <= 1.0))
      throw DomainError("min-side delta must lie in [0, 1]");
    // (1 - d) log(1 - d) -> 0 as d -> 1.
    log_base = delta < 1.0 ? -delta - (1.0 - delta) * std::log1p(-delta)
                           : -1.0;
  } else {
    if (!(delta >= 0.0) || !std::isfinite(delta))
      throw DomainError("max-side delta must be nonnegative");
    log_base = delta - (1.0 + delta) * std::log1p(delta);
  }
  if (delta == 0.0) return static_cast<double>(dim);
  return static_cast<double>(dim) * std::exp(mu_over_R * log_base);
}

CorollaryDiagnostics corollary_conditions(std::size_t T, std::size_t N,
                                          std::size_t s, double lambda,
                                          double xi, double C_sigma,
                                          double C1, double C2) {
  require_dims(T, N, s);
  require_positive(lambda, "lambda");
  require_positive(xi, "xi");
  require_positive(C_sigma, "C_sigma");
  const double t = static_cast<double>(T);
  const double sd = static_cast<double>(s);
  const double log_n = std::log(static_cast<double>(N));
  const double log_t = std::log(t);

  CorollaryDiagnostics d;
  d.m = 0.5 + xi;
  d.ratio_penalty = std::pow(t, 1.0 + xi) * std::sqrt(log_n) / lambda;
  d.ratio_dimension = log_n / std::pow(t, xi);
  d.ratio_sparsity = log_t / (sd * log_n);
  d.rate = sd * sd * sd * log_n * log_n / std::pow(t, 1.0 - xi);
  d.A1 = std::exp(-2.0 * lambda * lambda / std::pow(t, 2.0 + 2.0 * xi) + log_n);
  d.A2 = std::exp(-std::pow(t, xi) / (2.0 * C_sigma) + log_n +
                  std::log(2.0 * t));
  d.A3 = 2.0 * std::exp(-lambda / (4.0 * C_sigma) + log_n);
  d.A4 = 4.0 * std::exp(-C1 * sd * log_n + log_t) +
         C2 * std::exp(-C1 * sd * log_n + std::log(sd));
  return d;
}

}  // namespace coint_rec::theory
