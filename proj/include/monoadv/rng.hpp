// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace monoadv {

/// Philox4x32-10 block function. Returns the four output words for a
/// counter/key pair.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Deterministic child seed for the pair (a, b) under `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a,
                          std::uint64_t b = 0);

/// Counter-based random stream. The stream is identified by (seed, stream);
/// the block counter advances as words are consumed. Child streams obtained
/// through split() depend only on the parent's identity, never on how many
/// values the parent has produced.
class Rng {
 public:
  using result_type = std::uint32_t;

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return next_u32(); }

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  Rng split(std::uint64_t tag) const;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  unsigned used_ = 4;
};

}  // namespace monoadv
