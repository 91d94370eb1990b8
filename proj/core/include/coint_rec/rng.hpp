#pragma once

#include <cstdint>
#include <limits>

namespace coint_rec {

/// SplitMix64 finalizer. Used both to expand seeds and to derive
/// per-replication streams.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Stream seed for replication `replication_id` of a run seeded with
/// `master_seed`. `tag` separates independent streams inside one replication
/// (e.g. innovations vs. support sampling).
///
///   h = mix64(master_seed)
///   h = mix64(h ^ (replication_id + golden))
///   stream = mix64(h ^ rotl(tag + c, 17))
///
/// The result depends only on its arguments, so replications may be generated
/// in any order or on any thread.
std::uint64_t stream_seed(std::uint64_t master_seed,
                          std::uint64_t replication_id,
                          std::uint64_t tag = 0) noexcept;

/// xoshiro256** seeded from a single 64-bit value through SplitMix64.
/// Gaussian variates use the Marsaglia polar method with the spare value
/// cached, which only needs log and sqrt of IEEE doubles.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Uniform integer in [0, bound), bound > 0. Lemire's method.
  std::uint64_t below(std::uint64_t bound) noexcept;
  double normal() noexcept;

 private:
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace coint_rec
