#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace coint_rec::lasso {

/// Minimizes loss_weight * ||y - X beta||_2^2 + lambda * ||beta||_1.
/// loss_weight = 1 is the unnormalized program; loss_weight = f_T^2 with
/// lambda scaled by f_T^2 is the rescaled program with the same minimizer.
struct LassoProblem {
  Eigen::VectorXd y;
  Eigen::MatrixXd X;
  double lambda = 0.0;
  double loss_weight = 1.0;
};

struct LassoOptions {
  double tol = 1e-8;
  std::size_t max_iter = 100'000;
  /// Assert the objective is nonincreasing after every sweep.
  bool check_descent = false;
  std::optional<Eigen::VectorXd> warm_start;
};

struct LassoSolution {
  Eigen::VectorXd beta_hat;
  double objective = 0.0;
  double kkt_residual = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  /// Columns with zero norm; their coefficients stay at zero.
  std::vector<std::size_t> skipped_columns;
};

/// sign(z) * max(|z| - gamma, 0).
double soft_threshold(double z, double gamma);

double objective(const LassoProblem& problem, const Eigen::VectorXd& beta);

/// With g = 2 w X'(y - X beta): max_j of |g_j - lambda sign(beta_j)| on
/// nonzero coordinates and max(|g_j| - lambda, 0) on zero ones.
double kkt_residual(const LassoProblem& problem, const Eigen::VectorXd& beta);

/// Cyclic coordinate descent, coordinates 0..N-1 in order. Stops when the
/// largest coordinate change in a sweep is at most tol * (1 + ||beta||_inf).
/// Throws InvalidInput on non-finite data or negative lambda.
LassoSolution fit(const LassoProblem& problem,
                  const LassoOptions& options = {});

/// Solutions along a lambda sequence, each warm-started from the previous.
std::vector<LassoSolution> fit_path(const LassoProblem& problem,
                                    const std::vector<double>& lambdas,
                                    const LassoOptions& options = {});

/// f_T^2 ||X' eps_y||_inf.
double empirical_process_stat(const Eigen::MatrixXd& X,
                              const Eigen::VectorXd& eps_y, double f_T);

struct ConeMembership {
  bool inside = false;
  /// c0 ||v_S||_1 - ||v_{S^c}||_1.
  double slack = 0.0;
};

/// Membership of v in {x : ||x_{S^c}||_1 <= c0 ||x_S||_1}. Throws
/// DomainError for an empty support or an index out of range.
ConeMembership cone_membership(const Eigen::VectorXd& v,
                               const std::vector<std::size_t>& support,
                               double c0);

/// 4 lambda^2 s^3 log^{3/2}(N) / (T^2 phi0^2).
double error_bound_rhs(double lambda, std::size_t T, std::size_t N,
                       std::size_t s, double phi0);

}  // namespace coint_rec::lasso
