// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace monoadv {

/// Fixed-length binary string. Position 0 is the first character of the
/// textual form and the most significant position for ordering.
class BitPattern {
 public:
  BitPattern() = default;
  explicit BitPattern(std::size_t size);

  static BitPattern from_string(std::string_view text);

  std::size_t size() const noexcept { return size_; }
  bool test(std::size_t pos) const;
  void set(std::size_t pos, bool value = true);
  void flip(std::size_t pos);
  std::size_t count() const noexcept;
  bool none() const noexcept { return count() == 0; }

  std::string to_string() const;
  std::size_t hash() const noexcept;

  friend bool operator==(const BitPattern&, const BitPattern&) = default;
  friend std::strong_ordering operator<=>(const BitPattern& a,
                                          const BitPattern& b);

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

struct BitPatternHash {
  std::size_t operator()(const BitPattern& p) const noexcept {
    return p.hash();
  }
};

}  // namespace monoadv
