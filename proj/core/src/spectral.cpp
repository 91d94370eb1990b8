#include "coint_rec/spectral.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "coint_rec/error.hpp"

namespace coint_rec::spectral {
namespace {

void require_horizon(std::size_t T) {
  if (T == 0) throw DimensionError("horizon T must be at least 1");
}

}  // namespace

double EigenSequence::sum() const noexcept {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

double frequency(std::size_t T, std::size_t t) {
  return static_cast<double>(2 * t - 1) * std::numbers::pi /
         static_cast<double>(2 * T + 1);
}

EigenSequence walk_eigenvalues(std::size_t T) {
  require_horizon(T);
  EigenSequence seq;
  seq.values.resize(T);
  seq.frequencies.resize(T);
  for (std::size_t t = 1; t <= T; ++t) {
    const double omega = frequency(T, t);
    const double half_sine = std::sin(0.5 * omega);
    seq.frequencies[t - 1] = omega;
    seq.values[t - 1] = 1.0 / (4.0 * half_sine * half_sine);
  }
  return seq;
}

EigenSequence shifted_eigenvalues(std::size_t T, double phi) {
  require_horizon(T);
  if (!(phi >= 0.0) || !std::isfinite(phi)) {
    throw DomainError("spectral shift phi must be finite and nonnegative, got " +
                      std::to_string(phi));
  }
  // phi = 0 goes through the half-angle form, which avoids cancellation in
  // 1 - cos(omega) for small omega.
  if (phi == 0.0) return walk_eigenvalues(T);
  EigenSequence seq;
  seq.phi = phi;
  seq.values.resize(T);
  seq.frequencies.resize(T);
  for (std::size_t t = 1; t <= T; ++t) {
    const double omega = frequency(T, t);
    const double half_sine = std::sin(0.5 * omega);
    seq.frequencies[t - 1] = omega;
    // 1 + phi - cos(omega) = phi + 2 sin^2(omega / 2)
    seq.values[t - 1] = 1.0 / (2.0 * (phi + 2.0 * half_sine * half_sine));
  }
  return seq;
}

Eigen::MatrixXd cumsum_operator(std::size_t T) {
  require_horizon(T);
  const auto n = static_cast<Eigen::Index>(T);
  Eigen::MatrixXd U = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) U.row(i).head(i + 1).setOnes();
  return U;
}

Eigen::MatrixXd walk_gram(std::size_t T) {
  require_horizon(T);
  const auto n = static_cast<Eigen::Index>(T);
  Eigen::MatrixXd G(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      G(i, j) = static_cast<double>(n - std::max(i, j));
  return G;
}

WalkBasis walk_basis(std::size_t T) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(walk_gram(T));
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigendecomposition of U'U failed for T=" +
                         std::to_string(T));
  // Eigen returns ascending order; flip to match EigenSequence.
  WalkBasis basis;
  basis.vectors = solver.eigenvectors().rowwise().reverse();
  basis.numeric_values = solver.eigenvalues().reverse();
  return basis;
}

Eigen::MatrixXd cumulative_sum(const Eigen::MatrixXd& E) {
  Eigen::MatrixXd S = E;
  for (Eigen::Index t = 1; t < S.rows(); ++t) S.row(t) += S.row(t - 1);
  return S;
}

Eigen::MatrixXd shifted_gram(const Eigen::MatrixXd& E, double phi) {
  if (E.rows() == 0) throw DimensionError("innovation matrix has no rows");
  return shifted_gram(E, phi, walk_basis(static_cast<std::size_t>(E.rows())));
}

Eigen::MatrixXd shifted_gram(const Eigen::MatrixXd& E, double phi,
                             const WalkBasis& basis) {
  if (E.rows() == 0) throw DimensionError("innovation matrix has no rows");
  if (basis.vectors.rows() != E.rows())
    throw DimensionError("basis has " + std::to_string(basis.vectors.rows()) +
                         " rows, innovations have " +
                         std::to_string(E.rows()));
  const auto seq = shifted_eigenvalues(static_cast<std::size_t>(E.rows()), phi);
  const Eigen::MatrixXd rotated = basis.vectors.transpose() * E;
  const Eigen::Map<const Eigen::VectorXd> weights(
      seq.values.data(), static_cast<Eigen::Index>(seq.values.size()));
  Eigen::MatrixXd gram =
      rotated.transpose() * weights.asDiagonal() * rotated;
  // Symmetrize away rounding asymmetry.
  return 0.5 * (gram + gram.transpose());
}

}  // namespace coint_rec::spectral
