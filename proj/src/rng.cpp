// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#include "monoadv/rng.hpp"

#include <cassert>

namespace monoadv {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  const std::uint64_t product = std::uint64_t{a} * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

inline std::uint32_t lo32(std::uint64_t v) {
  return static_cast<std::uint32_t>(v);
}
inline std::uint32_t hi32(std::uint64_t v) {
  return static_cast<std::uint32_t>(v >> 32);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a,
                          std::uint64_t b) {
  // Counter words: (a, b); key: seed. Distinct from stream output because
  // streams put the block counter in the low words and never reach the
  // derivation namespace tag below.
  const auto out = philox4x32({lo32(a), hi32(a), lo32(b), hi32(b) ^ 0x5eedu},
                              {lo32(seed), hi32(seed) ^ 0xd3a1u});
  return (std::uint64_t{out[0]} << 32) | out[1];
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {}

void Rng::refill() {
  buffer_ = philox4x32({lo32(block_), hi32(block_), lo32(stream_), hi32(stream_)},
                       {lo32(seed_), hi32(seed_)});
  ++block_;
  used_ = 0;
}

std::uint32_t Rng::next_u32() {
  if (used_ == 4) refill();
  return buffer_[used_++];
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t hi = next_u32();
  return (hi << 32) | next_u32();
}

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
  assert(bound > 0);
  // Lemire's multiply-and-reject; exact and platform independent.
  using u128 = unsigned __int128;
  std::uint64_t x = next_u64();
  u128 m = u128{x} * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = next_u64();
      m = u128{x} * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double Rng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

Rng Rng::split(std::uint64_t tag) const {
  return Rng(derive_seed(seed_, stream_, tag));
}

}  // namespace monoadv
