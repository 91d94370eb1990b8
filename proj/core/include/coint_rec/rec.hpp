#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace coint_rec::rec {

/// 0-based, strictly increasing column indices.
using Support = std::vector<std::size_t>;

inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept;

/// Calls `visit` on every u-subset of {0..N-1} in lexicographic order.
/// Throws EnumerationTooLarge if C(N, u) > budget, DomainError unless
/// 1 <= u <= N.
void for_each_support(std::size_t N, std::size_t u, std::uint64_t budget,
                      const std::function<void(const Support&)>& visit);

std::vector<Support> enumerate_supports(std::size_t N, std::size_t u,
                                        std::uint64_t budget);

/// Extreme eigenvalues of f_T^2 S_A'S_A over all |A| = u.
struct SparseEigenvalues {
  double phi_min = 0.0;
  double phi_max = 0.0;
  Support argmin_set;
  Support argmax_set;
  std::uint64_t subsets = 0;
};

SparseEigenvalues sparse_eigenvalues(const Eigen::MatrixXd& S, double f_T,
                                     std::size_t u,
                                     std::uint64_t budget = kDefaultBudget);

/// Same scan on a precomputed Gram matrix G = S'S.
SparseEigenvalues sparse_eigenvalues_from_gram(
    const Eigen::MatrixXd& gram, double f_T, std::size_t u,
    std::uint64_t budget = kDefaultBudget);

/// sqrt(phi_min(s+m)) - c0 sqrt(phi_max(m)) sqrt(s/m). Requires m >= s,
/// s + m <= N and both enumerations within budget (DomainError /
/// EnumerationTooLarge otherwise). May be negative.
double bickel_lower_bound(const Eigen::MatrixXd& S, double f_T, std::size_t s,
                          std::size_t m, double c0,
                          std::uint64_t budget = kDefaultBudget);

/// m used by the Bickel bound: m_kappa when s + m_kappa <= N, otherwise the
/// largest feasible m, N - s. Returns 0 when no m >= s is feasible.
std::size_t default_bickel_m(std::size_t s, std::size_t N,
                             std::uint64_t m_kappa);

/// Bickel bound that stays a valid lower bound beyond the enumeration
/// budget: a sparse eigenvalue whose scan would exceed the budget is replaced
/// by the corresponding extreme eigenvalue of the full scaled Gram matrix
/// (eigenvalue interlacing). Every eigenvalue is widened by a floating-point
/// error margin.
struct BickelBound {
  double value = 0.0;
  double phi_min = 0.0;
  double phi_max = 0.0;
  std::size_t m = 0;
  bool exhaustive = false;
};

BickelBound certified_bickel_bound(const Eigen::MatrixXd& gram, double f_T,
                                   std::size_t s, std::size_t m, double c0,
                                   std::uint64_t budget = kDefaultBudget);

/// f_T * sigma_min(S) minus a floating-point error margin, floored at 0.
/// Since ||x_J||_2 <= ||x||_2, it lower-bounds the restricted eigenvalue for
/// every cone constant; it is 0 whenever N > T.
double singular_value_bound(const Eigen::MatrixXd& S, double f_T);

/// Restricted eigenvalue problem: min over |J| <= s and x in the l1 cone of
/// f_T ||S x||_2 / ||x_J||_2.
struct ConeProblem {
  Eigen::MatrixXd S;
  double f_T = 1.0;
  std::size_t s = 1;
  double c0 = 3.0;
};

void validate(const ConeProblem& problem);

struct SampledOptions {
  std::size_t restarts = 32;
  std::size_t iters = 200;
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultBudget;
  /// If nonzero, scan this many uniformly drawn supports instead of the full
  /// enumeration.
  std::uint64_t support_samples = 0;
};

struct SampledRec {
  double upper_estimate = 0.0;
  Support witness_support;
  Eigen::VectorXd witness_direction;
  std::uint64_t supports_scanned = 0;
  bool exhaustive = false;
};

/// Multi-start projected descent on the sphere for every support of size s.
/// Returns the smallest ratio found, which is an upper bound on the true
/// restricted eigenvalue, together with the attaining support and direction.
SampledRec rec_sampled(const ConeProblem& problem,
                       const SampledOptions& options);

SampledRec rec_sampled(const ConeProblem& problem, std::size_t restarts,
                       std::size_t iters, std::uint64_t seed);

struct RecEstimate {
  /// max(bickel_bound, singular_value_bound).
  double lower_bound = 0.0;
  double upper_estimate = 0.0;
  std::size_t m_used = 0;
  Support witness_support;
  Eigen::VectorXd witness_direction;

  double bickel_bound = 0.0;
  double singular_value_bound = 0.0;
  /// Bickel bound came from full support scans (no interlacing fallback).
  bool bickel_exhaustive = false;
  /// Upper estimate scanned every support of size s.
  bool upper_exhaustive = false;
  std::uint64_t supports_scanned = 0;
  bool lower_informative = false;
};

/// Certified lower bound plus sampled upper estimate. `m` = 0 means "no
/// feasible Bickel m"; the Bickel term is then -infinity.
RecEstimate estimate_rec(const ConeProblem& problem, std::size_t m,
                         const SampledOptions& options);

/// lambda_min(S'S - S^(phi)'S^(phi)) for S = running sums of E.
double shifted_psd_gap(const Eigen::MatrixXd& E, double phi);

}  // namespace coint_rec::rec
