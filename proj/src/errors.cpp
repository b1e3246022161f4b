// SPDX-License-Identifier: Apache-2.0
#include "errors.hpp"

#include <cstdio>

namespace legendrean {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::config: return "config";
    case ErrorKind::syntax: return "syntax";
    case ErrorKind::validation: return "validation";
    case ErrorKind::singularity: return "singularity";
    case ErrorKind::order_exceeded: return "order-exceeded";
    case ErrorKind::shape: return "shape";
    case ErrorKind::degenerate_frame: return "degenerate-frame";
    case ErrorKind::not_contact: return "not-a-contact-form";
    case ErrorKind::non_involutive: return "non-involutive";
    case ErrorKind::precondition: return "precondition";
  }
  return "unknown";
}

std::string format_point(const std::vector<double>& p) {
  std::string out = "(";
  char buf[32];
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.6g", p[i]);
    if (i) out += ", ";
    out += buf;
  }
  return out + ")";
}

SyntaxError::SyntaxError(std::size_t offset, const std::string& msg)
    : Error(ErrorKind::syntax, msg + " at offset " + std::to_string(offset)), offset_(offset) {}

ConfigError::ConfigError(std::size_t line, const std::string& msg)
    : Error(ErrorKind::config, line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}

namespace {
std::string with_point(const std::string& msg, const std::vector<double>& p) {
  return p.empty() ? msg : msg + " at " + format_point(p);
}
}  // namespace

PointError::PointError(ErrorKind kind, const std::string& msg, std::vector<double> point)
    : Error(kind, with_point(msg, point)), point_(std::move(point)), detail_(msg) {}

PointError PointError::at(const std::vector<double>& point, const std::string& context) const {
  std::string msg = context.empty() ? detail_ : context + ": " + detail_;
  return PointError(kind(), msg, point_.empty() ? point : point_);
}

DegenerateFrameError::DegenerateFrameError(const std::string& msg, double condition,
                                           std::vector<double> point)
    : PointError(ErrorKind::degenerate_frame, msg, std::move(point)), condition_(condition) {}

}  // namespace legendrean
