#pragma once

#include <stdexcept>
#include <string>

namespace fracsum {

// Malformed input text (rationals, set files, instance strings).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A theorem or engine precondition does not hold for the given parameters.
class HypothesisError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An enumeration or representation would exceed its configured cap.
class ResourceCapError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace fracsum
