#pragma once

#include <cstdint>

namespace moshrink {

// Counter-based generator: output t is a SplitMix64-style mix of (key, t).
// Sub-streams re-key deterministically, so parallel chains get independent
// sequences from one root seed.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : key_(mix_(seed ^ kGamma)) {}

  // Derived stream for (chain, block) style partitioning.
  RngStream substream(std::uint64_t id) const {
    RngStream s(*this);
    s.key_ = mix_(key_ + kGamma * (id + 1));
    s.ctr_ = 0;
    return s;
  }

  std::uint64_t next_u64() { return mix_(key_ + kGamma * ++ctr_); }

  // Uniform on (0,1), endpoints excluded.
  double uniform() {
    double u;
    do {
      u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    } while (u <= 0.0);
    return u;
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  static std::uint64_t mix_(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t key_;
  std::uint64_t ctr_ = 0;
};

}  // namespace moshrink
