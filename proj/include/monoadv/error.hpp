// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace monoadv {

enum class ErrorCode {
  domain_mismatch,
  invalid_parameters,
  protocol_violation,
  realizability_violation,
  capacity_exceeded,
  parse_error,
  unknown_id,
  malformed_transcript,
  io_error,
};

std::string_view to_string(ErrorCode code);

/// Every failure the library reports carries one of the codes above so the
/// CLI can print a single machine-readable line.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace monoadv
