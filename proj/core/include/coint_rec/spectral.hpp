#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace coint_rec::spectral {

/// Spectrum of the cumulative-sum Gram operator U'U (phi = 0) or of its
/// shifted variant. Entry t (0-based) holds the (t+1)-th eigenvalue in
/// decreasing order, paired with frequency (2t+1)pi/(2T+1).
struct EigenSequence {
  std::vector<double> values;
  std::vector<double> frequencies;
  double phi = 0.0;

  std::size_t size() const noexcept { return values.size(); }
  double sum() const noexcept;
};

/// omega_t = (2t - 1) pi / (2T + 1) for 1-based t.
double frequency(std::size_t T, std::size_t t);

/// lambda_t = 1 / (4 sin^2(omega_t / 2)). Throws DimensionError for T = 0.
EigenSequence walk_eigenvalues(std::size_t T);

/// lambda_{phi,t} = 1 / (2 (1 + phi - cos omega_t)). Throws DomainError for
/// phi < 0 (or NaN) and DimensionError for T = 0.
EigenSequence shifted_eigenvalues(std::size_t T, double phi);

/// Lower-triangular all-ones T x T matrix U, so that S = U E.
Eigen::MatrixXd cumsum_operator(std::size_t T);

/// U'U, with entries T - max(i, j) for 0-based (i, j).
Eigen::MatrixXd walk_gram(std::size_t T);

/// Orthonormal eigenvectors of U'U from a dense symmetric eigensolver,
/// columns ordered to match EigenSequence (decreasing eigenvalue).
struct WalkBasis {
  Eigen::MatrixXd vectors;
  Eigen::VectorXd numeric_values;
};
WalkBasis walk_basis(std::size_t T);

/// Running sums of the rows of E, added in time order.
Eigen::MatrixXd cumulative_sum(const Eigen::MatrixXd& E);

/// E~' Lambda_phi E~ with E~ = V'E. With phi = 0 this reproduces S'S.
Eigen::MatrixXd shifted_gram(const Eigen::MatrixXd& E, double phi);

/// Same, reusing a precomputed basis for E.rows().
Eigen::MatrixXd shifted_gram(const Eigen::MatrixXd& E, double phi,
                             const WalkBasis& basis);

}  // namespace coint_rec::spectral
