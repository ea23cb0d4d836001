#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace possibilistic {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two values from different declared scales were combined.
class ScaleMismatch : public Error {
 public:
  using Error::Error;
};

/// Distributions, decisions or configs defined over different label sets.
class DomainMismatch : public Error {
 public:
  using Error::Error;
};

/// A value violates an invariant of its type (normalization, anchors, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text (scenario files, labels, CLI values).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed its configured limits.
class BoundExceeded : public Error {
 public:
  BoundExceeded(const std::string& what, std::uint64_t requested)
      : Error(what), requested_(requested) {}

  std::uint64_t requested() const noexcept { return requested_; }

 private:
  std::uint64_t requested_;
};

}  // namespace possibilistic
