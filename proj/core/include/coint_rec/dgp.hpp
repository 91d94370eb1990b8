#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace coint_rec::dgp {

enum class CovarianceKind { identity, toeplitz, equicorrelation };

const char* to_string(CovarianceKind kind);
CovarianceKind covariance_kind_from_string(const std::string& name);

/// identity: I; toeplitz: rho^|i-j| with rho in (-1, 1);
/// equicorrelation: 1 on the diagonal, rho elsewhere, rho in [0, 1).
struct CovarianceSpec {
  std::size_t dim = 1;
  CovarianceKind kind = CovarianceKind::identity;
  double rho = 0.0;
};

struct Covariance {
  Eigen::MatrixXd sigma;
  double c_sigma = 0.0;  // smallest eigenvalue
  double C_sigma = 0.0;  // largest eigenvalue
};

Covariance build_covariance(const CovarianceSpec& spec);

/// Lower Cholesky factor L with L L' = sigma. Throws NotPositiveDefinite.
Eigen::MatrixXd lower_cholesky(const Eigen::MatrixXd& sigma);

/// T x dim matrix whose rows are i.i.d. N(0, L L'). Row t takes the next dim
/// standard normals from an Rng seeded with `seed`, then multiplies by L.
Eigen::MatrixXd draw_innovations(std::size_t T, const Eigen::MatrixXd& chol,
                                 std::uint64_t seed);

/// Random-walk panel: rows are running sums of i.i.d. N(0, sigma_x) draws,
/// x_0 = 0. Deterministic in (seed, replication_id, T, sigma_x).
Eigen::MatrixXd simulate_panel(std::size_t T, const Eigen::MatrixXd& sigma_x,
                               std::uint64_t seed,
                               std::uint64_t replication_id = 0);

/// Panel plus the innovations it was built from.
struct Panel {
  Eigen::MatrixXd innovations;
  Eigen::MatrixXd walks;
};
Panel simulate_panel_with_innovations(std::size_t T,
                                      const Eigen::MatrixXd& sigma_x,
                                      std::uint64_t seed,
                                      std::uint64_t replication_id = 0);

struct SimulatedSample {
  Eigen::VectorXd y;
  Eigen::MatrixXd X;
  Eigen::VectorXd eps_y;
  /// Regressor innovations eps_{x,t}, rows in time order (X is their running sum).
  Eigen::MatrixXd eps_x;
  Eigen::VectorXd beta_true;
  std::vector<std::size_t> support;
  std::uint64_t seed = 0;
  std::uint64_t replication_id = 0;
};

/// y_t = beta'x_t + eps_{y,t}, x_t = x_{t-1} + eps_{x,t}, x_0 = 0, with
/// (eps_{y,t}, eps_{x,t}')' ~ N(0, sigma), sigma of size (N+1) x (N+1).
SimulatedSample simulate_cointegrated(std::size_t T, std::size_t N,
                                      const Eigen::VectorXd& beta,
                                      const Eigen::MatrixXd& sigma,
                                      std::uint64_t seed,
                                      std::uint64_t replication_id = 0);

enum class SupportPattern { first_s, random };

SupportPattern support_pattern_from_string(const std::string& name);

/// Exactly s entries equal to `magnitude`; support is {0..s-1} or drawn
/// uniformly without replacement from `seed`.
Eigen::VectorXd make_sparse_beta(std::size_t N, std::size_t s,
                                 double magnitude, SupportPattern pattern,
                                 std::uint64_t seed = 0);

/// Sorted indices of nonzero entries.
std::vector<std::size_t> support_of(const Eigen::VectorXd& beta);

}  // namespace coint_rec::dgp
