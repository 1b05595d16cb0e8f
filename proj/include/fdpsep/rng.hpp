// Copyright 2026 The fdpsep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FDPSEP_RNG_HPP_
#define FDPSEP_RNG_HPP_

// Counter-based RNG (Philox4x32-10) with explicit (seed, stream) addressing.
// Distinct streams under the same seed are independent by construction, so
// Monte Carlo trials can be assigned one stream each and evaluated in any
// order, on any number of threads, with bit-identical results.

#include <array>
#include <cmath>
#include <cstdint>

namespace fdpsep {

namespace detail {
inline constexpr uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr uint32_t kPhiloxW0 = 0x9E3779B9u;
inline constexpr uint32_t kPhiloxW1 = 0xBB67AE85u;
}  // namespace detail

// One full 10-round Philox4x32 block. Exposed for known-answer tests.
inline std::array<uint32_t, 4> philox4x32_10(std::array<uint32_t, 4> ctr,
                                             std::array<uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    uint64_t p0 = static_cast<uint64_t>(detail::kPhiloxM0) * ctr[0];
    uint64_t p1 = static_cast<uint64_t>(detail::kPhiloxM1) * ctr[2];
    uint32_t hi0 = static_cast<uint32_t>(p0 >> 32);
    uint32_t lo0 = static_cast<uint32_t>(p0);
    uint32_t hi1 = static_cast<uint32_t>(p1 >> 32);
    uint32_t lo1 = static_cast<uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += detail::kPhiloxW0;
    key[1] += detail::kPhiloxW1;
  }
  return ctr;
}

class PhiloxRng {
 public:
  PhiloxRng(uint64_t seed, uint64_t stream)
      : key_{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)},
        stream_(stream) {}

  uint64_t next_u64() {
    if (buf_pos_ == 2) refill();
    return buf_[buf_pos_++];
  }

  // Uniform on the open interval (0, 1); never returns an endpoint.
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via the Marsaglia polar method (exact given uniforms).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

  // Unbiased integer in [0, bound) by rejection; no modulo bias.
  uint64_t bounded_u64(uint64_t bound) {
    uint64_t threshold = (-bound) % bound;  // 2^64 mod bound
    for (;;) {
      uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  void refill() {
    std::array<uint32_t, 4> ctr = {
        static_cast<uint32_t>(block_), static_cast<uint32_t>(block_ >> 32),
        static_cast<uint32_t>(stream_), static_cast<uint32_t>(stream_ >> 32)};
    std::array<uint32_t, 4> out = philox4x32_10(ctr, key_);
    buf_[0] = static_cast<uint64_t>(out[0]) | (static_cast<uint64_t>(out[1]) << 32);
    buf_[1] = static_cast<uint64_t>(out[2]) | (static_cast<uint64_t>(out[3]) << 32);
    ++block_;
    buf_pos_ = 0;
  }

  std::array<uint32_t, 2> key_;
  uint64_t stream_;
  uint64_t block_ = 0;
  std::array<uint64_t, 2> buf_{};
  int buf_pos_ = 2;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// (seed, stream) pair that fully determines every random draw derived from it.
struct RngSeed {
  uint64_t seed = 0;
  uint64_t stream = 0;
};

}  // namespace fdpsep

#endif  // FDPSEP_RNG_HPP_
