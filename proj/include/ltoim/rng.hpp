#pragma once

#include <cstdint>

namespace ltoim {

// Deterministic splittable random stream (splitmix64 core). A stream is
// identified by its base seed; child(key) derives an independent stream
// from (base, key), so a master seed plus a path of keys pins every draw
// bit-for-bit across platforms and runs. Copying a stream replays it.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : base_(seed), state_(seed) {}

  RngStream child(std::uint64_t key) const {
    return RngStream(finalize(base_ + kGamma * (key + 0x632BE59BD9B4E019ULL)));
  }

  std::uint64_t next_u64() {
    state_ += kGamma;
    return finalize(state_);
  }

  // Uniform double in [0, 1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in {0, ..., bound-1}; bound must be positive.
  std::uint32_t next_below(std::uint32_t bound) {
    return static_cast<std::uint32_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  static std::uint64_t finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t base_;
  std::uint64_t state_;
};

}  // namespace ltoim
