// SPDX-License-Identifier: Apache-2.0

#ifndef ARMAN_COMMON_HPP
#define ARMAN_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace arman {

inline constexpr const char* kVersion = "0.1.0";

// Bad or missing input data (topology files, tech files, malformed rows).
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem-level failures (missing file, unreadable path).
struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// An internal invariant was violated (e.g. zero cycles with nonzero work).
struct ConsistencyError : std::runtime_error {
  explicit ConsistencyError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace arman

#endif  // ARMAN_COMMON_HPP
