#include "coint_rec/dgp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "coint_rec/error.hpp"
#include "coint_rec/rng.hpp"
#include "coint_rec/spectral.hpp"

namespace coint_rec::dgp {
namespace {

// Stream tags inside one replication.
constexpr std::uint64_t kInnovationStream = 0;
constexpr std::uint64_t kSupportStream = 1;

}  // namespace

const char* to_string(CovarianceKind kind) {
  switch (kind) {
    case CovarianceKind::identity: return "identity";
    case CovarianceKind::toeplitz: return "toeplitz";
    case CovarianceKind::equicorrelation: return "equicorrelation";
  }
  return "unknown";
}

CovarianceKind covariance_kind_from_string(const std::string& name) {
  if (name == "identity") return CovarianceKind::identity;
  if (name == "toeplitz") return CovarianceKind::toeplitz;
  if (name == "equicorrelation") return CovarianceKind::equicorrelation;
  throw DomainError("unknown covariance kind '" + name + "'");
}

SupportPattern support_pattern_from_string(const std::string& name) {
  if (name == "first_s") return SupportPattern::first_s;
  if (name == "random") return SupportPattern::random;
  throw DomainError("unknown support pattern '" + name + "'");
}

Covariance build_covariance(const CovarianceSpec& spec) {
  if (spec.dim == 0) throw DimensionError("covariance dimension must be >= 1");
  const auto d = static_cast<Eigen::Index>(spec.dim);
  Covariance out;
  switch (spec.kind) {
    case CovarianceKind::identity:
      out.sigma = Eigen::MatrixXd::Identity(d, d);
      break;
    case CovarianceKind::toeplitz:
      if (!(spec.rho > -1.0 && spec.rho < 1.0))
        throw DomainError("toeplitz rho must lie in (-1, 1)");
      out.sigma.resize(d, d);
      for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index i = 0; i < d; ++i)
          out.sigma(i, j) =
              std::pow(spec.rho, static_cast<double>(std::abs(i - j)));
      break;
    case CovarianceKind::equicorrelation:
      if (!(spec.rho >= 0.0 && spec.rho < 1.0))
        throw DomainError("equicorrelation rho must lie in [0, 1)");
      out.sigma = Eigen::MatrixXd::Constant(d, d, spec.rho);
      out.sigma.diagonal().setOnes();
      break;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      out.sigma, Eigen::EigenvaluesOnly);
  out.c_sigma = solver.eigenvalues()(0);
  out.C_sigma = solver.eigenvalues()(d - 1);
  if (!(out.c_sigma > 0.0))
    throw NotPositiveDefinite("covariance has smallest eigenvalue " +
                              std::to_string(out.c_sigma));
  return out;
}

Eigen::MatrixXd lower_cholesky(const Eigen::MatrixXd& sigma) {
  if (sigma.rows() != sigma.cols() || sigma.rows() == 0)
    throw DimensionError("covariance must be square and nonempty");
  if (!sigma.allFinite()) throw InvalidInput("covariance has non-finite entries");
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefinite("Cholesky factorization failed");
  return llt.matrixL();
}

Eigen::MatrixXd draw_innovations(std::size_t T, const Eigen::MatrixXd& chol,
                                 std::uint64_t seed) {
  const auto d = chol.rows();
  const auto n = static_cast<Eigen::Index>(T);
  Rng rng(seed);
  Eigen::MatrixXd E(n, d);
  Eigen::VectorXd z(d);
  for (Eigen::Index t = 0; t < n; ++t) {
    for (Eigen::Index k = 0; k < d; ++k) z(k) = rng.normal();
    // Explicit triangular product keeps the summation order fixed.
    for (Eigen::Index i = 0; i < d; ++i) {
      double acc = 0.0;
      for (Eigen::Index k = 0; k <= i; ++k) acc += chol(i, k) * z(k);
      E(t, i) = acc;
    }
  }
  return E;
}

Panel simulate_panel_with_innovations(std::size_t T,
                                      const Eigen::MatrixXd& sigma_x,
                                      std::uint64_t seed,
                                      std::uint64_t replication_id) {
  if (T == 0) throw DimensionError("horizon T must be at least 1");
  const Eigen::MatrixXd chol = lower_cholesky(sigma_x);
  Panel panel;
  panel.innovations = draw_innovations(
      T, chol, stream_seed(seed, replication_id, kInnovationStream));
  panel.walks = spectral::cumulative_sum(panel.innovations);
  return panel;
}

Eigen::MatrixXd simulate_panel(std::size_t T, const Eigen::MatrixXd& sigma_x,
                               std::uint64_t seed,
                               std::uint64_t replication_id) {
  return simulate_panel_with_innovations(T, sigma_x, seed, replication_id)
      .walks;
}

SimulatedSample simulate_cointegrated(std::size_t T, std::size_t N,
                                      const Eigen::VectorXd& beta,
                                      const Eigen::MatrixXd& sigma,
                                      std::uint64_t seed,
                                      std::uint64_t replication_id) {
  if (T == 0 || N == 0) throw DimensionError("T and N must be at least 1");
  const auto n = static_cast<Eigen::Index>(N);
  if (beta.size() != n)
    throw DimensionError("beta has length " + std::to_string(beta.size()) +
                         ", expected N=" + std::to_string(N));
  if (sigma.rows() != n + 1 || sigma.cols() != n + 1)
    throw DimensionError("joint covariance must be (N+1) x (N+1)");

  const Eigen::MatrixXd chol = lower_cholesky(sigma);
  const Eigen::MatrixXd joint = draw_innovations(
      T, chol, stream_seed(seed, replication_id, kInnovationStream));

  SimulatedSample sample;
  sample.eps_y = joint.col(0);
  sample.eps_x = joint.rightCols(n);
  sample.X = spectral::cumulative_sum(sample.eps_x);
  sample.beta_true = beta;
  sample.support = support_of(beta);
  sample.seed = seed;
  sample.replication_id = replication_id;
  sample.y.resize(static_cast<Eigen::Index>(T));
  for (Eigen::Index t = 0; t < sample.X.rows(); ++t) {
    double signal = 0.0;
    for (std::size_t j : sample.support)
      signal += sample.X(t, static_cast<Eigen::Index>(j)) *
                beta(static_cast<Eigen::Index>(j));
    sample.y(t) = signal + sample.eps_y(t);
  }
  return sample;
}

Eigen::VectorXd make_sparse_beta(std::size_t N, std::size_t s,
                                 double magnitude, SupportPattern pattern,
                                 std::uint64_t seed) {
  if (s == 0 || s > N)
    throw DimensionError("sparsity s=" + std::to_string(s) +
                         " must lie in [1, N=" + std::to_string(N) + "]");
  if (!(magnitude > 0.0) || !std::isfinite(magnitude))
    throw DomainError("beta magnitude must be finite and positive");
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(N));
  if (pattern == SupportPattern::first_s) {
    beta.head(static_cast<Eigen::Index>(s)).setConstant(magnitude);
    return beta;
  }
  // Partial Fisher-Yates.
  std::vector<std::size_t> pool(N);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  Rng rng(stream_seed(seed, 0, kSupportStream));
  for (std::size_t i = 0; i < s; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(N - i));
    std::swap(pool[i], pool[j]);
    beta(static_cast<Eigen::Index>(pool[i])) = magnitude;
  }
  return beta;
}

std::vector<std::size_t> support_of(const Eigen::VectorXd& beta) {
  std::vector<std::size_t> support;
  for (Eigen::Index j = 0; j < beta.size(); ++j)
    if (beta(j) != 0.0) support.push_back(static_cast<std::size_t>(j));
  return support;
}

}  // namespace coint_rec::dgp
