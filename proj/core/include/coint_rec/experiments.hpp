#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coint_rec/dgp.hpp"
#include "coint_rec/rec.hpp"
#include "coint_rec/theory.hpp"

namespace coint_rec::experiments {

struct GridPoint {
  std::size_t T = 0;
  std::size_t N = 0;
  std::size_t s = 0;
  friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

/// fixed: lambda = value. rate: lambda = scale * T^{1+xi} * sqrt(log N).
struct LambdaRule {
  enum class Kind { fixed, rate };
  Kind kind = Kind::rate;
  double value = 0.0;
  double xi = 0.1;
  double scale = 2.0;

  double lambda(std::size_t T, std::size_t N) const;
};

struct RecSettings {
  std::size_t restarts = 4;
  std::size_t iters = 100;
  /// Supports scanned by the sampled upper estimate (0 = all, within budget).
  std::uint64_t support_samples = 8;
  std::uint64_t budget = 5'000;
  bool compute_upper = true;
};

struct ChernoffSettings {
  std::size_t support_size = 2;
  std::size_t T = 100;
  double phi = 0.1;
  std::vector<double> deltas{0.3, 0.5, 0.8};
  std::size_t replications = 10'000;
};

struct ExperimentConfig {
  std::vector<GridPoint> grid;
  std::size_t replications = 200;
  dgp::CovarianceKind covariance_kind = dgp::CovarianceKind::identity;
  double covariance_rho = 0.0;

  double c0 = 3.0;
  double delta = 0.5;
  double kappa_free = 0.1;
  double C1 = 1.0;

  LambdaRule lambda_rule;
  /// Truncation exponent of the empirical-process bound; unset means 1/2 + xi.
  std::optional<double> truncation_m;
  std::vector<double> phi_grid{0.1};
  std::vector<double> a_grid;
  std::uint64_t master_seed = 20240601;

  double beta_magnitude = 1.0;
  dgp::SupportPattern support_pattern = dgp::SupportPattern::first_s;
  double lasso_tol = 1e-8;
  std::size_t lasso_max_iter = 100'000;

  RecSettings rec;
  ChernoffSettings chernoff;
  /// Per-replication normalized extreme eigenvalues of the shifted Gram on
  /// the true support (needs a T x T eigendecomposition per grid point).
  bool chernoff_stats = true;

  double truncation() const { return truncation_m.value_or(0.5 + lambda_rule.xi); }
};

/// Throws ConfigError on an empty grid, zero replications or s > N.
void validate(const ExperimentConfig& config);

struct ReplicationRecord {
  std::uint64_t replication_id = 0;
  std::size_t T = 0, N = 0, s = 0;
  std::uint64_t seed = 0;

  bool has_rec = false;
  double rec_lower = 0.0;
  double rec_upper = 0.0;
  double kappa0 = 0.0;
  bool rec_event = false;        // rec_lower >= kappa0
  bool rec_upper_event = false;  // rec_upper >= kappa0
  double bickel_bound = 0.0;
  double singular_value_bound = 0.0;
  std::size_t m_used = 0;
  bool rec_exhaustive = false;

  double ep_stat = 0.0;
  double ep_threshold = 0.0;  // f_T^2 lambda / 4
  bool ep_event = false;      // ep_stat <= ep_threshold

  bool has_lasso = false;
  double lambda = 0.0;
  double l1_error = 0.0;
  double l2_pred_error = 0.0;  // ||X(beta_hat - beta)||_2^2
  double bound_rhs = 0.0;      // with phi0 = rec_lower; +inf when rec_lower <= 0
  bool bound_event = false;
  bool bound_event_kappa0 = false;
  bool cone_event = false;
  double cone_slack = 0.0;
  bool converged = false;
  double kkt_residual = 0.0;

  double chernoff_min_stat = 0.0;
  double chernoff_max_stat = 0.0;

  double runtime_ms = 0.0;
};

struct Frequency {
  double value = 0.0;
  double se = 0.0;
  std::size_t hits = 0;
  std::size_t trials = 0;
};

/// Proportion with binomial standard error sqrt(p(1-p)/n).
Frequency make_frequency(std::size_t hits, std::size_t trials);

struct Quantiles {
  double q25 = 0.0, q50 = 0.0, q75 = 0.0;
};

/// Linear-interpolation quantiles of a nonempty sample.
Quantiles quantiles(std::vector<double> values);

/// Order-independent aggregate of one (T, N, s) group.
struct SummaryRow {
  GridPoint point;
  std::size_t replications = 0;
  std::size_t rec_replications = 0;
  std::size_t lasso_replications = 0;

  Frequency rec_event, rec_upper_event;
  Quantiles rec_lower, rec_upper;

  Frequency ep_event, bound_event, bound_event_kappa0, cone_event;
  /// bound_event given ep_event and rec_lower > 0.
  Frequency bound_given_events;
  /// cone_event given ep_event.
  Frequency cone_given_ep;
  Quantiles ep_stat, l1_error, l2_pred_error;
  std::size_t non_converged = 0;

  Quantiles chernoff_min_stat, chernoff_max_stat;
};

/// Groups by (T, N, s) in order of first appearance after sorting by
/// (T, N, s, replication_id). Throws InvalidInput on empty input.
std::vector<SummaryRow> summarize(std::vector<ReplicationRecord> records);

struct TailCheck {
  double a = 0.0;
  double bound = 0.0;
  double bound_statement = 0.0;
  bool vacuous = false;
  Frequency exceed;  // P(ep_stat >= a)
  bool dominated = true;
};

struct PointTheory {
  GridPoint point;
  theory::TheoryConstants constants;
  theory::Bound rec_bound;
  double lambda = 0.0;
  double truncation_m = 0.0;
  theory::Bound lasso_bound;
  theory::Bound lasso_bound_proof;
  std::vector<TailCheck> tails;
  /// Set when the constant pipeline's side condition fails; the point is
  /// still simulated because kappa_0 does not depend on (T, N, s).
  std::string note;
  bool rec_dominance_ok = true;
  bool lasso_dominance_ok = true;
};

struct ExperimentSummary {
  std::string kind;
  std::vector<SummaryRow> rows;
  std::vector<PointTheory> theory;
};

struct ExperimentResult {
  std::vector<ReplicationRecord> records;
  ExperimentSummary summary;
};

/// Seed of the stream for grid point `index`.
std::uint64_t point_seed(std::uint64_t master_seed, std::size_t index);

/// Constants of grid point `index` with c_sigma, C_sigma taken from the
/// regressor block of the configured covariance.
theory::TheoryConstants point_constants(const ExperimentConfig& config,
                                        std::size_t index);

/// The sample that replication `replication_id` of grid point `index` sees.
dgp::SimulatedSample point_sample(const ExperimentConfig& config,
                                  std::size_t index,
                                  std::uint64_t replication_id);

/// Replications run on `workers` threads; output does not depend on it.
ExperimentResult run_rec_experiment(const ExperimentConfig& config,
                                    std::size_t workers = 1);
ExperimentResult run_lasso_experiment(const ExperimentConfig& config,
                                      std::size_t workers = 1);

struct ChernoffTail {
  double delta = 0.0;
  Frequency min_tail;  // P(lambda_min <= (1 - delta) mu_min)
  Frequency max_tail;  // P(lambda_max >= (1 + delta) mu_max)
  double min_bound = 0.0, max_bound = 0.0;                // R observed
  double min_bound_theory = 0.0, max_bound_theory = 0.0;  // R = R_s
  bool min_dominated = true, max_dominated = true;
};

struct ChernoffSummary {
  std::size_t support_size = 0;
  std::size_t T = 0;
  double phi = 0.0;
  std::size_t replications = 0;
  double mu_min = 0.0, mu_max = 0.0;
  double R_observed = 0.0, R_theory = 0.0;
  /// Sample mean of each diagonal entry of the simulated sum, its standard
  /// error and its expectation (sum_t lambda_{phi,t}) * Sigma_ii.
  std::vector<double> mean_diag, se_diag, expected_diag;
  bool mean_matches = true;
  std::vector<ChernoffTail> tails;
};

ChernoffSummary run_chernoff_experiment(const ExperimentConfig& config,
                                        std::size_t workers = 1);

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares of log(error) on log(T). Needs >= 2 points and
/// positive values.
LogLogFit fit_log_log(const std::vector<double>& Ts,
                      const std::vector<double>& errors);

struct RatePoint {
  GridPoint point;
  double lambda = 0.0;
  double median_l1 = 0.0;
  theory::CorollaryDiagnostics diagnostics;
  std::size_t non_converged = 0;
};

struct RateReport {
  std::vector<RatePoint> points;
  LogLogFit fit;
  double reference_slope = 0.0;  // -(1 - xi)
  std::vector<ReplicationRecord> records;
  ExperimentSummary summary;
};

/// Grid must share (N, s) and hold >= 4 horizons spanning >= 8x
/// (ConfigError otherwise).
RateReport run_rate_study(const ExperimentConfig& config,
                          std::size_t workers = 1);

}  // namespace coint_rec::experiments
