// SPDX-License-Identifier: Apache-2.0
#include "pitchlex/error.hpp"

namespace pitchlex {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Io: return "io";
    case ErrorKind::Schema: return "schema";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Config: return "config";
    case ErrorKind::DegenerateOutcome: return "degenerate-outcome";
    case ErrorKind::Separation: return "separation";
    case ErrorKind::Collinearity: return "collinearity";
    case ErrorKind::Undefined: return "undefined";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::EmptyInput: return "empty-input";
  }
  return "unknown";
}

}  // namespace pitchlex
