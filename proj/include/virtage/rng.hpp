#pragma once

#include <cstdint>

namespace virtage {

/// Deterministic pseudo-random stream addressed by a (seed, replication) pair.
///
/// The initial state is derived by bit-mixing the pair, so any replication's
/// stream can be constructed directly without generating its predecessors.
/// That makes parallel Monte Carlo runs reproducible: results depend only on
/// the pair, never on scheduling or thread count. The generator itself is the
/// SplitMix64 sequence (Weyl increment + avalanche mix), which is more than
/// adequate for the sample sizes used here.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t replication);

  std::uint64_t next_u64();

  /// Uniform draw strictly inside (0, 1); safe to pass to log().
  double uniform01();

  /// Unit-rate exponential draw.
  double exponential();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t replication() const { return replication_; }

 private:
  std::uint64_t seed_;
  std::uint64_t replication_;
  std::uint64_t state_;
};

}  // namespace virtage
