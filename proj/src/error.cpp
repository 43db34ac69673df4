// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#include "monoadv/error.hpp"

namespace monoadv {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::domain_mismatch: return "domain_mismatch";
    case ErrorCode::invalid_parameters: return "invalid_parameters";
    case ErrorCode::protocol_violation: return "protocol_violation";
    case ErrorCode::realizability_violation: return "realizability_violation";
    case ErrorCode::capacity_exceeded: return "capacity_exceeded";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::unknown_id: return "unknown_id";
    case ErrorCode::malformed_transcript: return "malformed_transcript";
    case ErrorCode::io_error: return "io_error";
  }
  return "unknown";
}

}  // namespace monoadv
