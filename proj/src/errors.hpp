// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace legendrean {

enum class ErrorKind {
  config,          // malformed configuration or CLI arguments
  syntax,          // expression parse failure
  validation,      // structure failed a pointwise invariant
  singularity,     // division by ~0, log/sqrt outside domain
  order_exceeded,  // asked for more derivatives than the jet carries
  shape,           // mismatched jet/tensor shapes
  degenerate_frame,
  not_contact,
  non_involutive,
  precondition,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse error with a byte offset into the offending text.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& msg);
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Configuration error; line is 1-based, 0 when not tied to a line.
class ConfigError : public Error {
 public:
  ConfigError(std::size_t line, const std::string& msg);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Errors raised at a specific chart point. The point may be attached later by
/// the layer that knows it (jets do not carry their base point).
class PointError : public Error {
 public:
  PointError(ErrorKind kind, const std::string& msg, std::vector<double> point = {});
  const std::vector<double>& point() const noexcept { return point_; }
  const std::string& detail() const noexcept { return detail_; }
  /// Copy of this error with the point (and optionally a context prefix) filled in.
  PointError at(const std::vector<double>& point, const std::string& context = {}) const;

 private:
  std::vector<double> point_;
  std::string detail_;
};

class DegenerateFrameError : public PointError {
 public:
  DegenerateFrameError(const std::string& msg, double condition, std::vector<double> point = {});
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

std::string format_point(const std::vector<double>& p);

}  // namespace legendrean
