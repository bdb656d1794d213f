#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

namespace qnblp {

/// Derives a child seed from a master seed and a derivation path by chaining
/// a splitmix64 finalizer over the path words. Stable across platforms.
std::uint64_t derive_seed(std::uint64_t master_seed,
                          std::span<const std::uint64_t> path);

/// Deterministic random stream addressed by (master seed, derivation path).
///
/// Independent shots, trials, and episodes each get their own path, so results
/// do not depend on evaluation order. Uniform doubles are built directly from
/// engine words ((x >> 11) * 2^-53) instead of std::uniform_real_distribution,
/// whose output is implementation-defined; byte-identical reruns rely on this.
class RngStream {
 public:
  explicit RngStream(std::uint64_t master_seed);
  RngStream(std::uint64_t master_seed, std::initializer_list<std::uint64_t> path);
  RngStream(std::uint64_t master_seed, std::span<const std::uint64_t> path);

  std::uint64_t next_u64();
  /// Uniform draw from [0, 1) with 53 random bits.
  double uniform();
  /// True with probability p_one (clamped to [0, 1]).
  bool bernoulli(double p_one);
  /// Draws an index proportional to weights[i]; weights need not be normalized.
  std::size_t categorical(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
};

}  // namespace qnblp
