#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

// Counter-based random number generation (Philox4x32-10, Salmon et al.,
// SC 2011).  A block cipher over a 128-bit counter under a 64-bit key: the
// stream for one path is fully determined by (seed, path_index), so parallel
// simulation is bit-exact under any batch or thread layout, with provably
// disjoint per-path streams.
namespace randflight {

struct Philox4x32 {
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  // Ten rounds over ctr with the two-word key schedule derived from key.
  static std::array<std::uint32_t, 4> block(
      const std::array<std::uint32_t, 4>& ctr,
      const std::array<std::uint32_t, 2>& key) {
    std::array<std::uint32_t, 4> x = ctr;
    std::uint32_t k0 = key[0], k1 = key[1];
    for (int round = 0; round < 10; ++round) {
      std::uint64_t p0 = std::uint64_t{kMul0} * x[0];
      std::uint64_t p1 = std::uint64_t{kMul1} * x[2];
      std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
      std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
      std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
      std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
      x = {hi1 ^ x[1] ^ k0, lo1, hi0 ^ x[3] ^ k1, lo0};
      k0 += kWeyl0;
      k1 += kWeyl1;
    }
    return x;
  }
};

// Stream of uniforms/normals for one path: key = seed, counter =
// (block_lo, block_hi, path_lo, path_hi).
class PathRng {
 public:
  PathRng(std::uint64_t seed, std::uint64_t path_index)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        path_lo_(static_cast<std::uint32_t>(path_index)),
        path_hi_(static_cast<std::uint32_t>(path_index >> 32)) {}

  std::uint32_t next_u32() {
    if (pos_ == 4) {
      buf_ = Philox4x32::block({static_cast<std::uint32_t>(block_),
                                static_cast<std::uint32_t>(block_ >> 32),
                                path_lo_, path_hi_},
                               key_);
      ++block_;
      pos_ = 0;
    }
    return buf_[pos_++];
  }

  // Uniform on the open interval (0, 1): (x + 1/2) * 2^-32.
  double u01() {
    return (static_cast<double>(next_u32()) + 0.5) * 0x1p-32;
  }

  // Exponential with rate 1.
  double exponential() { return -std::log(u01()); }

  // Standard normal via Box-Muller; always consumes two uniforms per pair.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = u01();
    double u2 = u01();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint32_t path_lo_, path_hi_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace randflight
