#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pgcl {

/// Byte range [start, end) into the source text a diagnostic refers to.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, SourceSpan span)
      : std::runtime_error(std::move(message)), span_(span) {}
  SourceSpan span() const { return span_; }

 private:
  SourceSpan span_;
};

/// Formula is outside the fragment the chosen mode supports.
class UnsupportedFormulaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured resource cap (set size, state count, wall time) was hit.
class BudgetExceededError : public std::runtime_error {
 public:
  BudgetExceededError(std::string message, int depth_reached)
      : std::runtime_error(std::move(message)), depth_(depth_reached) {}
  int depth_reached() const { return depth_; }

 private:
  int depth_ = 0;
};

/// Backend-level evaluation failure (division by zero, range overflow,
/// corrupted amplitudes). Carries the offending configuration when known.
class BackendError : public std::runtime_error {
 public:
  explicit BackendError(std::string message, std::string config = {})
      : std::runtime_error(std::move(message)), config_(std::move(config)) {}
  const std::string& config() const { return config_; }

 private:
  std::string config_;
};

}  // namespace pgcl
