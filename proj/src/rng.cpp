#include "virtage/rng.hpp"

#include <cmath>

namespace virtage {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

std::uint64_t derive_state(std::uint64_t seed, std::uint64_t replication) {
  return mix64(mix64(seed + kGolden) ^ mix64(replication + 0xD1B54A32D192ED03ULL));
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t replication)
    : seed_(seed), replication_(replication), state_(derive_state(seed, replication)) {}

std::uint64_t RngStream::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double RngStream::uniform01() {
  // 53 random bits, offset by half a step: never exactly 0 or 1.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
}

double RngStream::exponential() { return -std::log(uniform01()); }

}  // namespace virtage
