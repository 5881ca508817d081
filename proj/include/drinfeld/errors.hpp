#pragma once

#include <stdexcept>
#include <string>

namespace drinfeld {

// Violated mathematical precondition (division by zero, singular matrix, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reading a series coefficient beyond its known window, or a search bound
// (depth, extension degree, generator degree) that was too small.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad literal or malformed input text.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace drinfeld
