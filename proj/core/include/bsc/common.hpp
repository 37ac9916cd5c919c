// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bsc {

using cplx = std::complex<double>;

/// Photon (or electron) count per mode, mode 0 first.
using Occupation = std::vector<int>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based, 0 when not attributable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed input that violates a documented invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Desk-scale size guard tripped.
class GuardError : public Error {
 public:
  using Error::Error;
};

/// A computation could not produce a trustworthy number.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace bsc
