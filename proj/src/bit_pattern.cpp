// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#include "monoadv/bit_pattern.hpp"

#include <bit>

#include "monoadv/error.hpp"

namespace monoadv {

BitPattern::BitPattern(std::size_t size)
    : words_((size + 63) / 64, 0), size_(size) {}

BitPattern BitPattern::from_string(std::string_view text) {
  BitPattern p(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      p.set(i);
    } else if (text[i] != '0') {
      fail(ErrorCode::parse_error,
           "bit pattern contains a character other than 0/1");
    }
  }
  return p;
}

bool BitPattern::test(std::size_t pos) const {
  return (words_[pos / 64] >> (pos % 64)) & 1u;
}

void BitPattern::set(std::size_t pos, bool value) {
  const std::uint64_t mask = std::uint64_t{1} << (pos % 64);
  if (value) {
    words_[pos / 64] |= mask;
  } else {
    words_[pos / 64] &= ~mask;
  }
}

void BitPattern::flip(std::size_t pos) {
  words_[pos / 64] ^= std::uint64_t{1} << (pos % 64);
}

std::size_t BitPattern::count() const noexcept {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::string BitPattern::to_string() const {
  std::string out(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (test(i)) out[i] = '1';
  }
  return out;
}

std::size_t BitPattern::hash() const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ size_;
  for (auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::strong_ordering operator<=>(const BitPattern& a, const BitPattern& b) {
  const std::size_t n = std::min(a.words_.size(), b.words_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.words_[i] == b.words_[i]) continue;
    // Lowest differing bit is the earliest differing position.
    const std::uint64_t diff = a.words_[i] ^ b.words_[i];
    const int bit = std::countr_zero(diff);
    return ((a.words_[i] >> bit) & 1u) ? std::strong_ordering::greater
                                       : std::strong_ordering::less;
  }
  return a.size_ <=> b.size_;
}

}  // namespace monoadv
