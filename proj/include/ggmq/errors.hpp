#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ggmq {

/// Argument outside the domain of an operation (bad rank, bad parameters).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// The subset-enumeration evaluator was asked to order more values than
/// kNaiveCap. Callers should switch to the incremental or windowed path.
class CapacityError : public std::length_error {
public:
  using std::length_error::length_error;
};

/// A trace violates alpha_k >= 0, tau_k > 0 or the equal-length rule.
/// index() is the 1-based customer index, or 0 when not tied to one customer.
class TraceError : public DomainError {
public:
  TraceError(const std::string& what, std::size_t index)
      : DomainError(what), index_(index) {}
  std::size_t index() const { return index_; }

private:
  std::size_t index_;
};

/// Malformed trace or timeline file. line() is 1-based.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

}  // namespace ggmq
