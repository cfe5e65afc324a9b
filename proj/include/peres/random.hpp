#pragma once

#include <cstdint>
#include <random>

namespace peres {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based random stream. Every draw gets its own engine seeded
/// from (seed, draw index), so the value of draw k never depends on how
/// many draws happened elsewhere or on which thread made them.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t first_index = 0) noexcept
      : seed_(seed), next_(first_index) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t position() const noexcept { return next_; }

  /// Engine for the next draw; advances the counter.
  std::mt19937_64 next_engine() noexcept { return engine_at(next_++); }

  /// Engine for an explicit draw index; does not touch the counter.
  std::mt19937_64 engine_at(std::uint64_t index) const noexcept {
    return std::mt19937_64(mix64(seed_ ^ mix64(index + 0x632be59bd9b4e019ULL)));
  }

  /// Independent child stream keyed by `index`.
  RngStream substream(std::uint64_t index) const noexcept {
    return RngStream(mix64(seed_ + mix64(~index)));
  }

 private:
  std::uint64_t seed_;
  std::uint64_t next_;
};

}  // namespace peres
