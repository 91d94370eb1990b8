#include "coint_rec/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coint_rec/error.hpp"

namespace coint_rec::lasso {
namespace {

void validate(const LassoProblem& problem) {
  if (problem.X.rows() != problem.y.size())
    throw DimensionError("X has " + std::to_string(problem.X.rows()) +
                         " rows but y has length " +
                         std::to_string(problem.y.size()));
  if (!problem.X.allFinite() || !problem.y.allFinite())
    throw InvalidInput("lasso data contains NaN or Inf");
  if (!(problem.lambda >= 0.0) || !std::isfinite(problem.lambda))
    throw InvalidInput("lambda must be finite and nonnegative");
  if (!(problem.loss_weight > 0.0) || !std::isfinite(problem.loss_weight))
    throw InvalidInput("loss weight must be finite and positive");
}

double sign(double v) { return (v > 0.0) - (v < 0.0); }

// Sweeps on the Gram matrix, tracking c = X'y - X'X beta.
class GramSolver {
 public:
  GramSolver(const LassoProblem& problem, const Eigen::VectorXd& start)
      : problem_(problem),
        gram_(problem.X.transpose() * problem.X),
        xty_(problem.X.transpose() * problem.y),
        beta_(start) {
    refresh();
  }

  void refresh() { corr_ = xty_ - gram_ * beta_; }

  double sweep(std::vector<std::size_t>& skipped) {
    const double gamma = problem_.lambda / (2.0 * problem_.loss_weight);
    double max_change = 0.0;
    for (Eigen::Index j = 0; j < beta_.size(); ++j) {
      const double diag = gram_(j, j);
      if (!(diag > 0.0)) {
        if (std::find(skipped.begin(), skipped.end(),
                      static_cast<std::size_t>(j)) == skipped.end())
          skipped.push_back(static_cast<std::size_t>(j));
        continue;
      }
      const double old = beta_(j);
      const double rho = corr_(j) + diag * old;
      const double updated = soft_threshold(rho, gamma) / diag;
      const double delta = updated - old;
      if (delta != 0.0) {
        beta_(j) = updated;
        corr_.noalias() -= gram_.col(j) * delta;
        max_change = std::max(max_change, std::abs(delta));
      }
    }
    return max_change;
  }

  const Eigen::VectorXd& beta() const { return beta_; }

 private:
  const LassoProblem& problem_;
  Eigen::MatrixXd gram_;
  Eigen::VectorXd xty_;
  Eigen::VectorXd beta_;
  Eigen::VectorXd corr_;
};

// Sweeps on the residual r = y - X beta; used when N > T.
class ResidualSolver {
 public:
  ResidualSolver(const LassoProblem& problem, const Eigen::VectorXd& start)
      : problem_(problem),
        norms_(problem.X.colwise().squaredNorm().transpose()),
        beta_(start) {
    refresh();
  }

  void refresh() { resid_ = problem_.y - problem_.X * beta_; }

  double sweep(std::vector<std::size_t>& skipped) {
    const double gamma = problem_.lambda / (2.0 * problem_.loss_weight);
    double max_change = 0.0;
    for (Eigen::Index j = 0; j < beta_.size(); ++j) {
      const double diag = norms_(j);
      if (!(diag > 0.0)) {
        if (std::find(skipped.begin(), skipped.end(),
                      static_cast<std::size_t>(j)) == skipped.end())
          skipped.push_back(static_cast<std::size_t>(j));
        continue;
      }
      const double old = beta_(j);
      const double rho = problem_.X.col(j).dot(resid_) + diag * old;
      const double updated = soft_threshold(rho, gamma) / diag;
      const double delta = updated - old;
      if (delta != 0.0) {
        beta_(j) = updated;
        resid_.noalias() -= problem_.X.col(j) * delta;
        max_change = std::max(max_change, std::abs(delta));
      }
    }
    return max_change;
  }

  const Eigen::VectorXd& beta() const { return beta_; }

 private:
  const LassoProblem& problem_;
  Eigen::VectorXd norms_;
  Eigen::VectorXd beta_;
  Eigen::VectorXd resid_;
};

template <typename Solver>
LassoSolution run(const LassoProblem& problem, const LassoOptions& options,
                  const Eigen::VectorXd& start) {
  constexpr std::size_t kRefreshEvery = 50;
  Solver solver(problem, start);
  LassoSolution out;
  double previous = objective(problem, start);
  for (std::size_t sweep = 1; sweep <= options.max_iter; ++sweep) {
    const double change = solver.sweep(out.skipped_columns);
    out.iterations = sweep;
    if (options.check_descent) {
      const double current = objective(problem, solver.beta());
      if (current > previous * (1.0 + 1e-12) + 1e-300)
        throw NumericalError("lasso objective increased at sweep " +
                             std::to_string(sweep));
      previous = current;
    }
    const double scale = 1.0 + solver.beta().template lpNorm<Eigen::Infinity>();
    if (change <= options.tol * scale) {
      out.converged = true;
      break;
    }
    if (sweep % kRefreshEvery == 0) solver.refresh();
  }
  out.beta_hat = solver.beta();
  std::sort(out.skipped_columns.begin(), out.skipped_columns.end());
  out.objective = objective(problem, out.beta_hat);
  out.kkt_residual = kkt_residual(problem, out.beta_hat);
  return out;
}

}  // namespace

double soft_threshold(double z, double gamma) {
  if (gamma < 0.0) throw DomainError("threshold must be nonnegative");
  if (z > gamma) return z - gamma;
  if (z < -gamma) return z + gamma;
  return 0.0;
}

double objective(const LassoProblem& problem, const Eigen::VectorXd& beta) {
  const Eigen::VectorXd resid = problem.y - problem.X * beta;
  return problem.loss_weight * resid.squaredNorm() +
         problem.lambda * beta.lpNorm<1>();
}

double kkt_residual(const LassoProblem& problem, const Eigen::VectorXd& beta) {
  const Eigen::VectorXd grad =
      2.0 * problem.loss_weight *
      (problem.X.transpose() * (problem.y - problem.X * beta));
  double worst = 0.0;
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    const double violation =
        beta(j) != 0.0 ? std::abs(grad(j) - problem.lambda * sign(beta(j)))
                       : std::max(std::abs(grad(j)) - problem.lambda, 0.0);
    worst = std::max(worst, violation);
  }
  return worst;
}

LassoSolution fit(const LassoProblem& problem, const LassoOptions& options) {
  validate(problem);
  if (!(options.tol > 0.0)) throw InvalidInput("tol must be positive");
  if (options.max_iter == 0) throw InvalidInput("max_iter must be positive");
  Eigen::VectorXd start = Eigen::VectorXd::Zero(problem.X.cols());
  if (options.warm_start) {
    if (options.warm_start->size() != problem.X.cols())
      throw DimensionError("warm start has the wrong length");
    start = *options.warm_start;
  }
  if (problem.X.cols() <= problem.X.rows())
    return run<GramSolver>(problem, options, start);
  return run<ResidualSolver>(problem, options, start);
}

std::vector<LassoSolution> fit_path(const LassoProblem& problem,
                                    const std::vector<double>& lambdas,
                                    const LassoOptions& options) {
  std::vector<LassoSolution> path;
  path.reserve(lambdas.size());
  LassoProblem step = problem;
  LassoOptions local = options;
  for (double lambda : lambdas) {
    step.lambda = lambda;
    path.push_back(fit(step, local));
    local.warm_start = path.back().beta_hat;
  }
  return path;
}

double empirical_process_stat(const Eigen::MatrixXd& X,
                              const Eigen::VectorXd& eps_y, double f_T) {
  if (X.rows() != eps_y.size())
    throw DimensionError("X and eps_y disagree in length");
  if (X.cols() == 0) return 0.0;
  return f_T * f_T * (X.transpose() * eps_y).lpNorm<Eigen::Infinity>();
}

ConeMembership cone_membership(const Eigen::VectorXd& v,
                               const std::vector<std::size_t>& support,
                               double c0) {
  if (support.empty()) throw DomainError("cone support must be nonempty");
  std::vector<bool> inside(static_cast<std::size_t>(v.size()), false);
  for (std::size_t j : support) {
    if (j >= inside.size())
      throw DomainError("support index " + std::to_string(j) +
                        " out of range");
    inside[j] = true;
  }
  double on = 0.0, off = 0.0;
  for (Eigen::Index j = 0; j < v.size(); ++j)
    (inside[static_cast<std::size_t>(j)] ? on : off) += std::abs(v(j));
  ConeMembership out;
  out.slack = c0 * on - off;
  out.inside = off <= c0 * on;
  return out;
}

double error_bound_rhs(double lambda, std::size_t T, std::size_t N,
                       std::size_t s, double phi0) {
  if (!(phi0 > 0.0)) throw DomainError("phi0 must be positive");
  if (N < 2) throw DomainError("N must be at least 2");
  if (T == 0 || s == 0) throw DomainError("T and s must be positive");
  const double t = static_cast<double>(T);
  const double sd = static_cast<double>(s);
  return 4.0 * lambda * lambda * sd * sd * sd *
         std::pow(std::log(static_cast<double>(N)), 1.5) /
         (t * t * phi0 * phi0);
}

}  // namespace coint_rec::lasso
