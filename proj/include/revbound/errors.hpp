#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace revbound {

// DSL syntax or validation failure; `offset` is the byte offset into the
// input text where the problem was detected.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : std::invalid_argument(message + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// The closeness bound and its proof trace need E[V] < infinity.
class InfiniteExpectationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised when a check that follows from the definitions fails; indicates a
// bug in the revenue search or quadrature rather than a property of the law.
class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace revbound
