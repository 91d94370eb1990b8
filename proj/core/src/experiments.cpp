#include "coint_rec/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <tuple>

#include "coint_rec/error.hpp"
#include "coint_rec/lasso.hpp"
#include "coint_rec/rng.hpp"
#include "coint_rec/spectral.hpp"
#include "parallel.hpp"

namespace coint_rec::experiments {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kPointStream = 0x9017;
constexpr std::uint64_t kDescentStream = 2;
constexpr std::uint64_t kChernoffStream = 7;

std::pair<double, double> extreme_eigenvalues(const Eigen::MatrixXd& sym) {
  if (sym.rows() == 1) return {sym(0, 0), sym(0, 0)};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym,
                                                        Eigen::EigenvaluesOnly);
  return {solver.eigenvalues()(0), solver.eigenvalues()(sym.rows() - 1)};
}

Eigen::MatrixXd select_block(const Eigen::MatrixXd& m,
                             const std::vector<std::size_t>& idx) {
  const auto k = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd out(k, k);
  for (Eigen::Index j = 0; j < k; ++j)
    for (Eigen::Index i = 0; i < k; ++i)
      out(i, j) = m(static_cast<Eigen::Index>(idx[i]),
                    static_cast<Eigen::Index>(idx[j]));
  return out;
}

// Everything about a grid point that is shared by its replications.
struct PointContext {
  GridPoint point;
  std::uint64_t seed = 0;
  dgp::Covariance joint;
  double c_sigma_x = 0.0, C_sigma_x = 0.0;
  theory::TheoryConstants constants;
  Eigen::VectorXd beta;
  double f_T = 0.0;
  double lambda = 0.0;
  std::size_t bickel_m = 0;

  // Chernoff statistics on the true support.
  std::optional<spectral::WalkBasis> basis;
  Eigen::VectorXd shifted_weights;
  double mu_min_support = 0.0, mu_max_support = 0.0;
};

PointContext make_context(const ExperimentConfig& config, std::size_t index,
                          bool chernoff_stats) {
  PointContext ctx;
  ctx.point = config.grid[index];
  const auto [T, N, s] = ctx.point;
  ctx.seed = point_seed(config.master_seed, index);
  ctx.joint = dgp::build_covariance(
      {N + 1, config.covariance_kind, config.covariance_rho});
  const Eigen::MatrixXd sigma_x =
      ctx.joint.sigma.bottomRightCorner(static_cast<Eigen::Index>(N),
                                        static_cast<Eigen::Index>(N));
  std::tie(ctx.c_sigma_x, ctx.C_sigma_x) = extreme_eigenvalues(sigma_x);

  theory::TheoryInputs in;
  in.c0 = config.c0;
  in.c_sigma = ctx.c_sigma_x;
  in.C_sigma = ctx.C_sigma_x;
  in.delta = config.delta;
  in.kappa_free = config.kappa_free;
  in.C1 = config.C1;
  in.s = s;
  in.N = N;
  in.T = T;
  ctx.constants = theory::derive_constants(in);
  ctx.f_T = ctx.constants.f_T;
  ctx.lambda = config.lambda_rule.lambda(T, N);
  ctx.bickel_m = rec::default_bickel_m(s, N, ctx.constants.m_kappa);
  ctx.beta = dgp::make_sparse_beta(N, s, config.beta_magnitude,
                                   config.support_pattern, ctx.seed);

  if (chernoff_stats && !config.phi_grid.empty()) {
    ctx.basis = spectral::walk_basis(T);
    const auto seq = spectral::shifted_eigenvalues(T, config.phi_grid.front());
    ctx.shifted_weights = Eigen::Map<const Eigen::VectorXd>(
        seq.values.data(), static_cast<Eigen::Index>(seq.values.size()));
    const auto support = dgp::support_of(ctx.beta);
    const auto [lo, hi] = extreme_eigenvalues(select_block(sigma_x, support));
    ctx.mu_min_support = lo * seq.sum();
    ctx.mu_max_support = hi * seq.sum();
  }
  return ctx;
}

ReplicationRecord replicate(const PointContext& ctx,
                            const ExperimentConfig& config,
                            std::uint64_t replication_id, bool do_rec,
                            bool do_lasso) {
  const auto started = std::chrono::steady_clock::now();
  const auto [T, N, s] = ctx.point;
  const auto sample = dgp::simulate_cointegrated(T, N, ctx.beta, ctx.joint.sigma,
                                                 ctx.seed, replication_id);
  ReplicationRecord r;
  r.replication_id = replication_id;
  r.T = T;
  r.N = N;
  r.s = s;
  r.seed = ctx.seed;
  r.kappa0 = ctx.constants.kappa_0;
  r.lambda = ctx.lambda;
  r.ep_stat = lasso::empirical_process_stat(sample.X, sample.eps_y, ctx.f_T);
  r.ep_threshold = ctx.f_T * ctx.f_T * ctx.lambda / 4.0;
  r.ep_event = r.ep_stat <= r.ep_threshold;

  if (do_rec) {
    r.has_rec = true;
    rec::ConeProblem problem{sample.X, ctx.f_T, s, config.c0};
    const Eigen::MatrixXd gram = sample.X.transpose() * sample.X;
    r.m_used = ctx.bickel_m;
    if (ctx.bickel_m > 0) {
      const auto bickel = rec::certified_bickel_bound(
          gram, ctx.f_T, s, ctx.bickel_m, config.c0, config.rec.budget);
      r.bickel_bound = bickel.value;
      r.rec_exhaustive = bickel.exhaustive;
    } else {
      r.bickel_bound = -kInf;
    }
    r.singular_value_bound = rec::singular_value_bound(sample.X, ctx.f_T);
    r.rec_lower = std::max(r.bickel_bound, r.singular_value_bound);
    if (config.rec.compute_upper) {
      rec::SampledOptions options;
      options.restarts = config.rec.restarts;
      options.iters = config.rec.iters;
      options.budget = config.rec.budget;
      options.support_samples = config.rec.support_samples;
      options.seed = stream_seed(ctx.seed, replication_id, kDescentStream);
      r.rec_upper = rec::rec_sampled(problem, options).upper_estimate;
    } else {
      r.rec_upper = kInf;
    }
    r.rec_event = r.rec_lower >= r.kappa0;
    r.rec_upper_event = r.rec_upper >= r.kappa0;
  }

  if (ctx.basis) {
    const auto& support = sample.support;
    Eigen::MatrixXd e_support(sample.eps_x.rows(),
                              static_cast<Eigen::Index>(support.size()));
    for (std::size_t k = 0; k < support.size(); ++k)
      e_support.col(static_cast<Eigen::Index>(k)) =
          sample.eps_x.col(static_cast<Eigen::Index>(support[k]));
    const Eigen::MatrixXd rotated = ctx.basis->vectors.transpose() * e_support;
    const Eigen::MatrixXd sum =
        rotated.transpose() * ctx.shifted_weights.asDiagonal() * rotated;
    const auto [lo, hi] = extreme_eigenvalues(0.5 * (sum + sum.transpose()));
    r.chernoff_min_stat = lo / ctx.mu_min_support;
    r.chernoff_max_stat = hi / ctx.mu_max_support;
  }

  if (do_lasso) {
    r.has_lasso = true;
    lasso::LassoProblem problem{sample.y, sample.X, ctx.lambda, 1.0};
    lasso::LassoOptions options;
    options.tol = config.lasso_tol;
    options.max_iter = config.lasso_max_iter;
    const auto fit = lasso::fit(problem, options);
    const Eigen::VectorXd err = fit.beta_hat - sample.beta_true;
    r.converged = fit.converged;
    r.kkt_residual = fit.kkt_residual;
    r.l1_error = err.lpNorm<1>();
    r.l2_pred_error = (sample.X * err).squaredNorm();
    const double realized = r.l2_pred_error + ctx.lambda * r.l1_error;
    if (do_rec && r.rec_lower > 0.0) {
      r.bound_rhs = lasso::error_bound_rhs(ctx.lambda, T, N, s, r.rec_lower);
      r.bound_event = realized <= r.bound_rhs;
    } else {
      r.bound_rhs = kInf;
      r.bound_event = false;
    }
    r.bound_event_kappa0 =
        realized <= lasso::error_bound_rhs(ctx.lambda, T, N, s, r.kappa0);
    const auto cone = lasso::cone_membership(err, sample.support, 3.0);
    r.cone_event = cone.inside;
    r.cone_slack = cone.slack;
  }

  r.runtime_ms = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - started)
                     .count();
  return r;
}

std::vector<ReplicationRecord> run_replications(
    const ExperimentConfig& config, const std::vector<PointContext>& contexts,
    std::size_t workers, bool do_rec, bool do_lasso) {
  const std::size_t reps = config.replications;
  std::vector<ReplicationRecord> records(contexts.size() * reps);
  detail::parallel_for(records.size(), workers, [&](std::size_t i) {
    records[i] = replicate(contexts[i / reps], config, i % reps, do_rec,
                           do_lasso);
  });
  return records;
}

std::vector<PointContext> make_contexts(const ExperimentConfig& config,
                                        bool chernoff_stats) {
  std::vector<PointContext> contexts;
  contexts.reserve(config.grid.size());
  for (std::size_t i = 0; i < config.grid.size(); ++i)
    contexts.push_back(make_context(config, i, chernoff_stats));
  return contexts;
}

PointTheory annotate(const ExperimentConfig& config, const PointContext& ctx,
                     const SummaryRow& row, bool lasso_part) {
  PointTheory th;
  th.point = ctx.point;
  th.constants = ctx.constants;
  const auto [T, N, s] = ctx.point;
  th.rec_bound = theory::rec_probability_bound(T, N, s, config.C1,
                                               ctx.constants.C2);
  th.lambda = ctx.lambda;
  th.truncation_m = config.truncation();
  if (!ctx.constants.feasible) {
    th.note = "s + m_kappa = " +
              std::to_string(s + ctx.constants.m_kappa) + " exceeds N = " +
              std::to_string(N) +
              "; theoretical bounds reported but not asserted";
  }
  const bool assert_bounds = ctx.constants.feasible;
  if (row.rec_replications > 0 && assert_bounds && !th.rec_bound.vacuous) {
    th.rec_dominance_ok =
        row.rec_event.value + 3.0 * row.rec_event.se >= th.rec_bound.value;
  }
  if (lasso_part && ctx.lambda > 0.0) {
    th.lasso_bound = theory::lasso_error_probability(
        ctx.lambda, T, N, s, ctx.joint.C_sigma, th.truncation_m, config.C1,
        ctx.constants.C2, theory::LassoProbabilityVariant::theorem);
    th.lasso_bound_proof = theory::lasso_error_probability(
        ctx.lambda, T, N, s, ctx.joint.C_sigma, th.truncation_m, config.C1,
        ctx.constants.C2, theory::LassoProbabilityVariant::proof);
    if (row.lasso_replications > 0 && assert_bounds &&
        !th.lasso_bound.vacuous) {
      th.lasso_dominance_ok = row.bound_event_kappa0.value +
                                  3.0 * row.bound_event_kappa0.se >=
                              th.lasso_bound.value;
    }
  }
  return th;
}

void attach_tails(const ExperimentConfig& config, const PointContext& ctx,
                  const std::vector<ReplicationRecord>& records,
                  PointTheory& th) {
  const auto [T, N, s] = ctx.point;
  std::vector<double> stats;
  for (const auto& r : records)
    if (r.T == T && r.N == N && r.s == s) stats.push_back(r.ep_stat);
  for (double a : config.a_grid) {
    TailCheck tail;
    tail.a = a;
    tail.bound = theory::empirical_process_bound(
        a, T, N, s, ctx.joint.C_sigma, th.truncation_m,
        theory::TailBoundVariant::proof);
    tail.bound_statement = theory::empirical_process_bound(
        a, T, N, s, ctx.joint.C_sigma, th.truncation_m,
        theory::TailBoundVariant::statement);
    tail.vacuous = tail.bound >= 1.0;
    const auto hits = static_cast<std::size_t>(std::count_if(
        stats.begin(), stats.end(), [a](double v) { return v >= a; }));
    tail.exceed = make_frequency(hits, stats.size());
    if (!tail.vacuous)
      tail.dominated = tail.exceed.value <= tail.bound + 3.0 * tail.exceed.se;
    th.tails.push_back(tail);
  }
}

ExperimentResult run_experiment(const ExperimentConfig& config,
                                std::size_t workers, bool do_rec,
                                bool do_lasso, const std::string& kind) {
  validate(config);
  const auto contexts = make_contexts(config, config.chernoff_stats);
  ExperimentResult result;
  result.records = run_replications(config, contexts, workers, do_rec, do_lasso);
  result.summary.kind = kind;
  result.summary.rows = summarize(result.records);
  for (std::size_t i = 0; i < contexts.size(); ++i) {
    const auto& ctx = contexts[i];
    const auto row = std::find_if(
        result.summary.rows.begin(), result.summary.rows.end(),
        [&](const SummaryRow& r) { return r.point == ctx.point; });
    auto th = annotate(config, ctx, *row, do_lasso);
    attach_tails(config, ctx, result.records, th);
    result.summary.theory.push_back(std::move(th));
  }
  return result;
}

}  // namespace

double LambdaRule::lambda(std::size_t T, std::size_t N) const {
  if (kind == Kind::fixed) return value;
  return scale * std::pow(static_cast<double>(T), 1.0 + xi) *
         std::sqrt(std::log(static_cast<double>(N)));
}

void validate(const ExperimentConfig& config) {
  if (config.grid.empty()) throw ConfigError("experiment grid is empty");
  if (config.replications == 0)
    throw ConfigError("replications must be at least 1");
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
  for (const auto& p : config.grid) {
    if (p.T == 0 || p.s == 0 || p.N < 2)
      throw ConfigError("grid points need T >= 1, s >= 1, N >= 2");
    if (p.s > p.N) throw ConfigError("grid point has s > N");
    if (!seen.insert({p.T, p.N, p.s}).second)
      throw ConfigError("grid contains a duplicate (T, N, s) point");
  }
  if (config.lambda_rule.kind == LambdaRule::Kind::fixed &&
      !(config.lambda_rule.value >= 0.0))
    throw ConfigError("fixed lambda must be nonnegative");
  if (config.lambda_rule.kind == LambdaRule::Kind::rate &&
      !(config.lambda_rule.scale > 0.0 && config.lambda_rule.xi > 0.0))
    throw ConfigError("rate lambda needs positive scale and xi");
  for (double a : config.a_grid)
    if (!(a > 0.0)) throw ConfigError("a_grid entries must be positive");
  for (double phi : config.phi_grid)
    if (!(phi > 0.0)) throw ConfigError("phi_grid entries must be positive");
}

Frequency make_frequency(std::size_t hits, std::size_t trials) {
  Frequency f;
  f.hits = hits;
  f.trials = trials;
  if (trials == 0) return f;
  f.value = static_cast<double>(hits) / static_cast<double>(trials);
  f.se = std::sqrt(f.value * (1.0 - f.value) / static_cast<double>(trials));
  return f;
}

Quantiles quantiles(std::vector<double> values) {
  if (values.empty()) throw InvalidInput("quantiles of an empty sample");
  std::sort(values.begin(), values.end());
  auto at = [&](double p) {
    const double pos = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    if (frac == 0.0) return values[lo];
    return values[lo] + frac * (values[hi] - values[lo]);
  };
  return {at(0.25), at(0.5), at(0.75)};
}

std::vector<SummaryRow> summarize(std::vector<ReplicationRecord> records) {
  if (records.empty()) throw InvalidInput("cannot summarize zero records");
  std::sort(records.begin(), records.end(),
            [](const ReplicationRecord& a, const ReplicationRecord& b) {
              return std::tie(a.T, a.N, a.s, a.replication_id) <
                     std::tie(b.T, b.N, b.s, b.replication_id);
            });
  std::vector<SummaryRow> rows;
  std::size_t begin = 0;
  while (begin < records.size()) {
    std::size_t end = begin;
    while (end < records.size() && records[end].T == records[begin].T &&
           records[end].N == records[begin].N &&
           records[end].s == records[begin].s)
      ++end;

    SummaryRow row;
    row.point = {records[begin].T, records[begin].N, records[begin].s};
    row.replications = end - begin;
    std::size_t rec_hits = 0, rec_upper_hits = 0;
    std::size_t ep_hits = 0, bound_hits = 0, bound_k0_hits = 0, cone_hits = 0;
    std::size_t cond_trials = 0, cond_hits = 0, cone_trials = 0,
                cone_cond_hits = 0;
    std::vector<double> rec_lower, rec_upper, ep, l1, l2, cmin, cmax;
    for (std::size_t i = begin; i < end; ++i) {
      const auto& r = records[i];
      ep.push_back(r.ep_stat);
      ep_hits += r.ep_event;
      cmin.push_back(r.chernoff_min_stat);
      cmax.push_back(r.chernoff_max_stat);
      if (r.has_rec) {
        ++row.rec_replications;
        rec_hits += r.rec_event;
        rec_upper_hits += r.rec_upper_event;
        rec_lower.push_back(r.rec_lower);
        rec_upper.push_back(r.rec_upper);
      }
      if (r.has_lasso) {
        ++row.lasso_replications;
        bound_hits += r.bound_event;
        bound_k0_hits += r.bound_event_kappa0;
        cone_hits += r.cone_event;
        row.non_converged += !r.converged;
        l1.push_back(r.l1_error);
        l2.push_back(r.l2_pred_error);
        if (r.ep_event) {
          ++cone_trials;
          cone_cond_hits += r.cone_event;
          if (r.has_rec && r.rec_lower > 0.0) {
            ++cond_trials;
            cond_hits += r.bound_event;
          }
        }
      }
    }
    row.ep_event = make_frequency(ep_hits, row.replications);
    row.ep_stat = quantiles(ep);
    row.chernoff_min_stat = quantiles(cmin);
    row.chernoff_max_stat = quantiles(cmax);
    if (row.rec_replications > 0) {
      row.rec_event = make_frequency(rec_hits, row.rec_replications);
      row.rec_upper_event = make_frequency(rec_upper_hits, row.rec_replications);
      row.rec_lower = quantiles(rec_lower);
      row.rec_upper = quantiles(rec_upper);
    }
    if (row.lasso_replications > 0) {
      row.bound_event = make_frequency(bound_hits, row.lasso_replications);
      row.bound_event_kappa0 =
          make_frequency(bound_k0_hits, row.lasso_replications);
      row.cone_event = make_frequency(cone_hits, row.lasso_replications);
      row.bound_given_events = make_frequency(cond_hits, cond_trials);
      row.cone_given_ep = make_frequency(cone_cond_hits, cone_trials);
      row.l1_error = quantiles(l1);
      row.l2_pred_error = quantiles(l2);
    }
    rows.push_back(std::move(row));
    begin = end;
  }
  return rows;
}

std::uint64_t point_seed(std::uint64_t master_seed, std::size_t index) {
  return stream_seed(master_seed, index, kPointStream);
}

theory::TheoryConstants point_constants(const ExperimentConfig& config,
                                        std::size_t index) {
  if (index >= config.grid.size()) throw ConfigError("grid point index out of range");
  return make_context(config, index, false).constants;
}

dgp::SimulatedSample point_sample(const ExperimentConfig& config,
                                  std::size_t index,
                                  std::uint64_t replication_id) {
  if (index >= config.grid.size()) throw ConfigError("grid point index out of range");
  const auto ctx = make_context(config, index, false);
  return dgp::simulate_cointegrated(ctx.point.T, ctx.point.N, ctx.beta,
                                    ctx.joint.sigma, ctx.seed, replication_id);
}

ExperimentResult run_rec_experiment(const ExperimentConfig& config,
                                    std::size_t workers) {
  return run_experiment(config, workers, true, false, "rec");
}

ExperimentResult run_lasso_experiment(const ExperimentConfig& config,
                                      std::size_t workers) {
  return run_experiment(config, workers, true, true, "lasso");
}

ChernoffSummary run_chernoff_experiment(const ExperimentConfig& config,
                                        std::size_t workers) {
  const auto& cs = config.chernoff;
  if (cs.support_size == 0 || cs.support_size > 6)
    throw ConfigError("Chernoff support size must lie in [1, 6]");
  if (cs.T == 0 || cs.replications == 0)
    throw ConfigError("Chernoff experiment needs T >= 1 and replications >= 1");
  if (!(cs.phi >= 0.0)) throw ConfigError("Chernoff phi must be nonnegative");

  const auto cov = dgp::build_covariance(
      {cs.support_size, config.covariance_kind, config.covariance_rho});
  const Eigen::MatrixXd chol = dgp::lower_cholesky(cov.sigma);
  const auto seq = spectral::shifted_eigenvalues(cs.T, cs.phi);
  const double weight_sum = seq.sum();
  const auto d = static_cast<Eigen::Index>(cs.support_size);

  struct Draw {
    double lo = 0.0, hi = 0.0, max_summand = 0.0;
    Eigen::VectorXd diag;
  };
  std::vector<Draw> draws(cs.replications);
  detail::parallel_for(cs.replications, workers, [&](std::size_t rep) {
    const Eigen::MatrixXd eps = dgp::draw_innovations(
        cs.T, chol, stream_seed(config.master_seed, rep, kChernoffStream));
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(d, d);
    double max_summand = 0.0;
    for (Eigen::Index t = 0; t < eps.rows(); ++t) {
      const Eigen::VectorXd e = eps.row(t).transpose();
      const double w = seq.values[static_cast<std::size_t>(t)];
      sum.noalias() += w * e * e.transpose();
      max_summand = std::max(max_summand, w * e.squaredNorm());
    }
    const auto [lo, hi] = extreme_eigenvalues(sum);
    draws[rep] = {lo, hi, max_summand, sum.diagonal()};
  });

  ChernoffSummary out;
  out.support_size = cs.support_size;
  out.T = cs.T;
  out.phi = cs.phi;
  out.replications = cs.replications;
  out.mu_min = cov.c_sigma * weight_sum;
  out.mu_max = cov.C_sigma * weight_sum;
  for (const auto& dr : draws) out.R_observed = std::max(out.R_observed, dr.max_summand);

  const double log_n =
      std::log(static_cast<double>(std::max<std::size_t>(cs.support_size, 2)));
  out.R_theory = cov.C_sigma * cov.C_sigma * seq.values.front() *
                 static_cast<double>(cs.support_size) *
                 ((config.C1 + 1.0) * std::sqrt(log_n) + 1.0);

  const double n = static_cast<double>(cs.replications);
  for (Eigen::Index k = 0; k < d; ++k) {
    double mean = 0.0;
    for (const auto& dr : draws) mean += dr.diag(k);
    mean /= n;
    double var = 0.0;
    for (const auto& dr : draws) var += (dr.diag(k) - mean) * (dr.diag(k) - mean);
    var /= std::max(n - 1.0, 1.0);
    const double se = std::sqrt(var / n);
    const double expected = weight_sum * cov.sigma(k, k);
    out.mean_diag.push_back(mean);
    out.se_diag.push_back(se);
    out.expected_diag.push_back(expected);
    if (std::abs(mean - expected) > 2.0 * se) out.mean_matches = false;
  }

  for (double delta : cs.deltas) {
    ChernoffTail tail;
    tail.delta = delta;
    std::size_t min_hits = 0, max_hits = 0;
    for (const auto& dr : draws) {
      min_hits += dr.lo <= (1.0 - delta) * out.mu_min;
      max_hits += dr.hi >= (1.0 + delta) * out.mu_max;
    }
    tail.min_tail = make_frequency(min_hits, cs.replications);
    tail.max_tail = make_frequency(max_hits, cs.replications);
    using theory::ChernoffSide;
    if (delta <= 1.0) {
      tail.min_bound = theory::matrix_chernoff_tail(
          out.mu_min / out.R_observed, delta, cs.support_size, ChernoffSide::min);
      tail.min_bound_theory = theory::matrix_chernoff_tail(
          out.mu_min / out.R_theory, delta, cs.support_size, ChernoffSide::min);
    } else {
      tail.min_bound = tail.min_bound_theory = kInf;
    }
    tail.max_bound = theory::matrix_chernoff_tail(
        out.mu_max / out.R_observed, delta, cs.support_size, ChernoffSide::max);
    tail.max_bound_theory = theory::matrix_chernoff_tail(
        out.mu_max / out.R_theory, delta, cs.support_size, ChernoffSide::max);
    if (tail.min_bound <= 1.0)
      tail.min_dominated =
          tail.min_tail.value <= tail.min_bound + 3.0 * tail.min_tail.se;
    if (tail.max_bound <= 1.0)
      tail.max_dominated =
          tail.max_tail.value <= tail.max_bound + 3.0 * tail.max_tail.se;
    out.tails.push_back(tail);
  }
  return out;
}

LogLogFit fit_log_log(const std::vector<double>& Ts,
                      const std::vector<double>& errors) {
  if (Ts.size() != errors.size() || Ts.size() < 2)
    throw InvalidInput("log-log fit needs at least two paired points");
  const double n = static_cast<double>(Ts.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < Ts.size(); ++i) {
    if (!(Ts[i] > 0.0) || !(errors[i] > 0.0))
      throw NumericalError("log-log fit needs positive values");
    mx += std::log(Ts[i]);
    my += std::log(errors[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < Ts.size(); ++i) {
    const double dx = std::log(Ts[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(errors[i]) - my);
  }
  if (!(sxx > 0.0)) throw InvalidInput("log-log fit needs distinct horizons");
  LogLogFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

RateReport run_rate_study(const ExperimentConfig& config,
                          std::size_t workers) {
  validate(config);
  if (config.grid.size() < 4)
    throw ConfigError("rate study needs at least 4 horizons");
  std::size_t t_min = config.grid.front().T, t_max = t_min;
  for (const auto& p : config.grid) {
    if (p.N != config.grid.front().N || p.s != config.grid.front().s)
      throw ConfigError("rate study grid must share N and s");
    t_min = std::min(t_min, p.T);
    t_max = std::max(t_max, p.T);
  }
  if (t_max < 8 * t_min)
    throw ConfigError("rate study horizons must span at least a factor 8");

  ExperimentConfig local = config;
  local.chernoff_stats = false;
  RateReport report;
  const auto contexts = make_contexts(local, false);
  report.records = run_replications(local, contexts, workers, false, true);
  report.summary.kind = "rate";
  report.summary.rows = summarize(report.records);

  std::vector<double> Ts, medians;
  for (const auto& ctx : contexts) {
    const auto row = std::find_if(
        report.summary.rows.begin(), report.summary.rows.end(),
        [&](const SummaryRow& r) { return r.point == ctx.point; });
    report.summary.theory.push_back(annotate(local, ctx, *row, true));
    RatePoint rp;
    rp.point = ctx.point;
    rp.lambda = ctx.lambda;
    rp.median_l1 = row->l1_error.q50;
    rp.non_converged = row->non_converged;
    rp.diagnostics = theory::corollary_conditions(
        ctx.point.T, ctx.point.N, ctx.point.s, ctx.lambda,
        local.lambda_rule.xi, ctx.joint.C_sigma, local.C1, ctx.constants.C2);
    Ts.push_back(static_cast<double>(ctx.point.T));
    medians.push_back(rp.median_l1);
    report.points.push_back(rp);
  }
  report.fit = fit_log_log(Ts, medians);
  report.reference_slope = -(1.0 - local.lambda_rule.xi);
  return report;
}

}  // namespace coint_rec::experiments
