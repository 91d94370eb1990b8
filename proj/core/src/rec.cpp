#include "coint_rec/rec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "coint_rec/error.hpp"
#include "coint_rec/rng.hpp"
#include "coint_rec/spectral.hpp"

namespace coint_rec::rec {
namespace {

__extension__ typedef unsigned __int128 u128;

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_subset_size(std::size_t N, std::size_t u) {
  if (u == 0 || u > N)
    throw DomainError("subset size u=" + std::to_string(u) +
                      " must lie in [1, N=" + std::to_string(N) + "]");
}

Eigen::MatrixXd principal_block(const Eigen::MatrixXd& gram,
                                const Support& set) {
  const auto u = static_cast<Eigen::Index>(set.size());
  Eigen::MatrixXd block(u, u);
  for (Eigen::Index j = 0; j < u; ++j)
    for (Eigen::Index i = 0; i < u; ++i)
      block(i, j) = gram(static_cast<Eigen::Index>(set[i]),
                         static_cast<Eigen::Index>(set[j]));
  return block;
}

std::pair<double, double> extreme_eigenvalues(const Eigen::MatrixXd& sym) {
  if (sym.rows() == 1) return {sym(0, 0), sym(0, 0)};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericalError("symmetric eigensolver failed");
  return {solver.eigenvalues()(0), solver.eigenvalues()(sym.rows() - 1)};
}

// Margin covering the backward error of a dense symmetric eigensolver.
double eigen_margin(std::size_t dim, double spectral_radius) {
  return 16.0 * static_cast<double>(dim) * kEps * std::abs(spectral_radius);
}

Support random_support(std::size_t N, std::size_t s, Rng& rng) {
  std::vector<std::size_t> pool(N);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < s; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(N - i));
    std::swap(pool[i], pool[j]);
  }
  Support out(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(s));
  std::sort(out.begin(), out.end());
  return out;
}

// Descent state for one support: objective x'Gx / ||x_J||^2 on the unit
// sphere, restricted to the cone ||x_{J^c}||_1 <= c0 ||x_J||_1.
class ConeDescent {
 public:
  ConeDescent(const Eigen::MatrixXd& scaled_gram, const Support& support,
              double c0)
      : gram_(scaled_gram), c0_(c0), in_support_(scaled_gram.rows(), false) {
    for (std::size_t j : support) in_support_[j] = true;
  }

  // Rescales the off-support block into the cone and normalizes. Returns
  // false if the on-support block vanished.
  bool project(Eigen::VectorXd& x) const {
    double on_l1 = 0.0, off_l1 = 0.0;
    for (Eigen::Index j = 0; j < x.size(); ++j)
      (in_support_[j] ? on_l1 : off_l1) += std::abs(x(j));
    if (!(on_l1 > 1e-300)) return false;
    if (off_l1 > c0_ * on_l1) {
      const double ratio = c0_ * on_l1 / off_l1;
      for (Eigen::Index j = 0; j < x.size(); ++j)
        if (!in_support_[j]) x(j) *= ratio;
    }
    const double norm = x.norm();
    if (!(norm > 0.0)) return false;
    x /= norm;
    // Rounding in the rescale can leave a sliver outside the cone.
    for (int guard = 0; guard < 64 && slack(x) < 0.0; ++guard)
      for (Eigen::Index j = 0; j < x.size(); ++j)
        if (!in_support_[j]) x(j) *= 1.0 - 1e-14;
    return on_support_norm2(x) > 1e-24;
  }

  double slack(const Eigen::VectorXd& x) const {
    double on_l1 = 0.0, off_l1 = 0.0;
    for (Eigen::Index j = 0; j < x.size(); ++j)
      (in_support_[j] ? on_l1 : off_l1) += std::abs(x(j));
    return c0_ * on_l1 - off_l1;
  }

  double on_support_norm2(const Eigen::VectorXd& x) const {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < x.size(); ++j)
      if (in_support_[j]) acc += x(j) * x(j);
    return acc;
  }

  double objective(const Eigen::VectorXd& x) const {
    return x.dot(gram_ * x) / on_support_norm2(x);
  }

  // Normalized-gradient descent with step halving on non-decrease.
  double run(Eigen::VectorXd& x, std::size_t iters) const {
    double value = objective(x);
    double step = 0.25;
    Eigen::VectorXd candidate(x.size());
    for (std::size_t it = 0; it < iters && step > 1e-12; ++it) {
      const Eigen::VectorXd gx = gram_ * x;
      const double quad = x.dot(gx);
      const double on2 = on_support_norm2(x);
      Eigen::VectorXd grad = gx * on2;
      for (Eigen::Index j = 0; j < x.size(); ++j)
        if (in_support_[j]) grad(j) -= quad * x(j);
      const double gnorm = grad.norm();
      if (!(gnorm > 0.0)) break;
      candidate = x - (step / gnorm) * grad;
      if (!project(candidate)) {
        step *= 0.5;
        continue;
      }
      const double next = objective(candidate);
      if (next < value) {
        x.swap(candidate);
        value = next;
        step = std::min(step * 1.5, 1.0);
      } else {
        step *= 0.5;
      }
    }
    return value;
  }

 private:
  const Eigen::MatrixXd& gram_;
  double c0_;
  std::vector<bool> in_support_;
};

}  // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept {
  if (k > n) return 0;
  k = std::min(k, n - k);
  u128 c = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    c = c * (n - i) / (i + 1);
    if (c > std::numeric_limits<std::uint64_t>::max())
      return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(c);
}

void for_each_support(std::size_t N, std::size_t u, std::uint64_t budget,
                      const std::function<void(const Support&)>& visit) {
  require_subset_size(N, u);
  const std::uint64_t count = binomial(N, u);
  if (count > budget) throw EnumerationTooLarge(count, budget);
  Support set(u);
  std::iota(set.begin(), set.end(), std::size_t{0});
  while (true) {
    visit(set);
    // Advance to the next combination in lexicographic order.
    std::size_t i = u;
    while (i > 0 && set[i - 1] == N - u + (i - 1)) --i;
    if (i == 0) return;
    ++set[i - 1];
    for (std::size_t j = i; j < u; ++j) set[j] = set[j - 1] + 1;
  }
}

std::vector<Support> enumerate_supports(std::size_t N, std::size_t u,
                                        std::uint64_t budget) {
  std::vector<Support> out;
  for_each_support(N, u, budget,
                   [&](const Support& set) { out.push_back(set); });
  return out;
}

SparseEigenvalues sparse_eigenvalues_from_gram(const Eigen::MatrixXd& gram,
                                               double f_T, std::size_t u,
                                               std::uint64_t budget) {
  if (gram.rows() != gram.cols()) throw DimensionError("Gram must be square");
  if (!(f_T > 0.0)) throw DomainError("f_T must be positive");
  const auto N = static_cast<std::size_t>(gram.rows());
  const double scale = f_T * f_T;
  SparseEigenvalues out;
  out.phi_min = kInf;
  out.phi_max = -kInf;
  for_each_support(N, u, budget, [&](const Support& set) {
    const auto [lo, hi] = extreme_eigenvalues(principal_block(gram, set));
    // Strict comparisons keep the lexicographically first attainer.
    if (scale * lo < out.phi_min) {
      out.phi_min = scale * lo;
      out.argmin_set = set;
    }
    if (scale * hi > out.phi_max) {
      out.phi_max = scale * hi;
      out.argmax_set = set;
    }
    ++out.subsets;
  });
  return out;
}

SparseEigenvalues sparse_eigenvalues(const Eigen::MatrixXd& S, double f_T,
                                     std::size_t u, std::uint64_t budget) {
  require_subset_size(static_cast<std::size_t>(S.cols()), u);
  const std::uint64_t count = binomial(static_cast<std::uint64_t>(S.cols()), u);
  if (count > budget) throw EnumerationTooLarge(count, budget);
  const Eigen::MatrixXd gram = S.transpose() * S;
  return sparse_eigenvalues_from_gram(gram, f_T, u, budget);
}

double bickel_lower_bound(const Eigen::MatrixXd& S, double f_T, std::size_t s,
                          std::size_t m, double c0, std::uint64_t budget) {
  const auto N = static_cast<std::size_t>(S.cols());
  if (s == 0 || m < s || s + m > N)
    throw DomainError("Bickel bound needs m >= s >= 1 and s + m <= N (s=" +
                      std::to_string(s) + ", m=" + std::to_string(m) +
                      ", N=" + std::to_string(N) + ")");
  if (!(c0 >= 0.0)) throw DomainError("cone constant c0 must be nonnegative");
  const Eigen::MatrixXd gram = S.transpose() * S;
  const auto low = sparse_eigenvalues_from_gram(gram, f_T, s + m, budget);
  const auto high = sparse_eigenvalues_from_gram(gram, f_T, m, budget);
  return std::sqrt(std::max(low.phi_min, 0.0)) -
         c0 * std::sqrt(std::max(high.phi_max, 0.0)) *
             std::sqrt(static_cast<double>(s) / static_cast<double>(m));
}

std::size_t default_bickel_m(std::size_t s, std::size_t N,
                             std::uint64_t m_kappa) {
  if (s == 0 || 2 * s > N) return 0;
  if (m_kappa >= s && s + m_kappa <= N) return static_cast<std::size_t>(m_kappa);
  return N - s;
}

BickelBound certified_bickel_bound(const Eigen::MatrixXd& gram, double f_T,
                                   std::size_t s, std::size_t m, double c0,
                                   std::uint64_t budget) {
  const auto N = static_cast<std::size_t>(gram.rows());
  if (s == 0 || m < s || s + m > N)
    throw DomainError("Bickel bound needs m >= s >= 1 and s + m <= N");
  const double scale = f_T * f_T;
  const auto [full_lo, full_hi] = extreme_eigenvalues(gram);
  const double margin = eigen_margin(N, scale * full_hi);

  BickelBound out;
  out.m = m;
  out.exhaustive = true;
  if (binomial(N, s + m) <= budget) {
    out.phi_min = sparse_eigenvalues_from_gram(gram, f_T, s + m, budget).phi_min;
  } else {
    out.phi_min = scale * full_lo;
    out.exhaustive = false;
  }
  if (binomial(N, m) <= budget) {
    out.phi_max = sparse_eigenvalues_from_gram(gram, f_T, m, budget).phi_max;
  } else {
    out.phi_max = scale * full_hi;
    out.exhaustive = false;
  }
  out.phi_min = std::max(out.phi_min - margin, 0.0);
  out.phi_max += margin;
  out.value = std::sqrt(out.phi_min) -
              c0 * std::sqrt(out.phi_max) *
                  std::sqrt(static_cast<double>(s) / static_cast<double>(m));
  return out;
}

double singular_value_bound(const Eigen::MatrixXd& S, double f_T) {
  if (S.cols() > S.rows() || S.cols() == 0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(S);
  const auto& sv = svd.singularValues();
  const double sigma_max = sv(0);
  const double sigma_min = sv(sv.size() - 1);
  const double margin =
      8.0 * static_cast<double>(std::max(S.rows(), S.cols())) * kEps * sigma_max;
  return std::max(f_T * (sigma_min - margin), 0.0);
}

void validate(const ConeProblem& problem) {
  const auto N = static_cast<std::size_t>(problem.S.cols());
  if (problem.S.rows() == 0 || N == 0)
    throw DimensionError("S must be nonempty");
  if (problem.s == 0 || problem.s > N)
    throw DomainError("sparsity s must lie in [1, N]");
  if (!(problem.f_T > 0.0)) throw DomainError("f_T must be positive");
  if (!(problem.c0 >= 0.0)) throw DomainError("c0 must be nonnegative");
  if (!problem.S.allFinite()) throw InvalidInput("S has non-finite entries");
}

SampledRec rec_sampled(const ConeProblem& problem,
                       const SampledOptions& options) {
  validate(problem);
  const auto N = static_cast<std::size_t>(problem.S.cols());
  const Eigen::MatrixXd gram =
      (problem.f_T * problem.f_T) * (problem.S.transpose() * problem.S);

  Rng rng(stream_seed(options.seed, 0, 0x5eed));
  std::vector<Support> supports;
  const std::uint64_t count = binomial(N, problem.s);
  SampledRec out;
  if (options.support_samples == 0 && count <= options.budget) {
    supports = enumerate_supports(N, problem.s, options.budget);
    out.exhaustive = true;
  } else {
    const std::uint64_t draws =
        options.support_samples == 0
            ? options.budget
            : std::min(options.support_samples, options.budget);
    if (draws >= count && count <= options.budget) {
      supports = enumerate_supports(N, problem.s, options.budget);
      out.exhaustive = true;
    } else {
      for (std::uint64_t k = 0; k < draws; ++k)
        supports.push_back(random_support(N, problem.s, rng));
    }
  }

  // Smallest eigenvector of the full scaled Gram: a good start when the cone
  // is wide.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> full(gram);
  const Eigen::VectorXd global_start = full.eigenvectors().col(0);

  out.upper_estimate = kInf;
  const auto n = static_cast<Eigen::Index>(N);
  for (const Support& support : supports) {
    ConeDescent descent(gram, support, problem.c0);
    std::vector<Eigen::VectorXd> starts;

    // Exact minimizer over directions supported on J.
    const Eigen::MatrixXd block = principal_block(gram, support);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> local(block);
    Eigen::VectorXd embedded = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < support.size(); ++i)
      embedded(static_cast<Eigen::Index>(support[i])) =
          local.eigenvectors()(static_cast<Eigen::Index>(i), 0);
    starts.push_back(embedded);
    starts.push_back(global_start);

    for (std::size_t r = 0; r < options.restarts; ++r) {
      Eigen::VectorXd x(n);
      for (Eigen::Index j = 0; j < n; ++j) x(j) = rng.normal();
      starts.push_back(x);
    }

    for (auto& x : starts) {
      // Degenerate starts are redrawn a bounded number of times.
      int redraws = 0;
      while (!descent.project(x) && redraws++ < 8)
        for (Eigen::Index j = 0; j < n; ++j) x(j) = rng.normal();
      if (redraws > 8) continue;
      descent.run(x, options.iters);
      // Report the ratio from S itself; the Gram route loses accuracy on
      // ill-conditioned panels.
      const double value = (problem.S * x).squaredNorm() *
                           (problem.f_T * problem.f_T) /
                           descent.on_support_norm2(x);
      if (value < out.upper_estimate) {
        out.upper_estimate = value;
        out.witness_support = support;
        out.witness_direction = x;
      }
    }
    ++out.supports_scanned;
  }
  out.upper_estimate = std::sqrt(std::max(out.upper_estimate, 0.0));
  return out;
}

SampledRec rec_sampled(const ConeProblem& problem, std::size_t restarts,
                       std::size_t iters, std::uint64_t seed) {
  SampledOptions options;
  options.restarts = restarts;
  options.iters = iters;
  options.seed = seed;
  return rec_sampled(problem, options);
}

RecEstimate estimate_rec(const ConeProblem& problem, std::size_t m,
                         const SampledOptions& options) {
  validate(problem);
  const Eigen::MatrixXd gram = problem.S.transpose() * problem.S;

  RecEstimate out;
  out.m_used = m;
  if (m > 0) {
    const auto bickel = certified_bickel_bound(gram, problem.f_T, problem.s, m,
                                               problem.c0, options.budget);
    out.bickel_bound = bickel.value;
    out.bickel_exhaustive = bickel.exhaustive;
  } else {
    out.bickel_bound = -kInf;
  }
  out.singular_value_bound = singular_value_bound(problem.S, problem.f_T);
  out.lower_bound = std::max(out.bickel_bound, out.singular_value_bound);
  out.lower_informative = out.lower_bound > 0.0;

  const auto sampled = rec_sampled(problem, options);
  out.upper_estimate = sampled.upper_estimate;
  out.witness_support = sampled.witness_support;
  out.witness_direction = sampled.witness_direction;
  out.upper_exhaustive = sampled.exhaustive;
  out.supports_scanned = sampled.supports_scanned;
  return out;
}

double shifted_psd_gap(const Eigen::MatrixXd& E, double phi) {
  if (E.rows() == 0) throw DimensionError("innovation matrix has no rows");
  const Eigen::MatrixXd S = spectral::cumulative_sum(E);
  const Eigen::MatrixXd diff =
      S.transpose() * S - spectral::shifted_gram(E, phi);
  const Eigen::MatrixXd sym = 0.5 * (diff + diff.transpose());
  return extreme_eigenvalues(sym).first;
}

}  // namespace coint_rec::rec
