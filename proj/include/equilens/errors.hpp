#pragma once

#include <stdexcept>
#include <string>

namespace equilens {

/// Invalid input: wrong base, mismatched lengths, out-of-range values.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Index out of the range a generator supports (e.g. n >= N for lattice nodes).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A weight or system lacks something an operation needs (e.g. no tail bound).
class CapabilityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A computation hit a configured budget. When the failing computation can
/// still bracket its answer, `lower()`/`upper()` hold the interval.
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what, double lower = -1.0, double upper = -1.0)
      : std::runtime_error(what), lower_(lower), upper_(upper) {}

  bool has_bracket() const { return lower_ >= 0.0 && upper_ >= 0.0; }
  double lower() const { return lower_; }
  double upper() const { return upper_; }

 private:
  double lower_;
  double upper_;
};

/// Malformed point file or mini-language token; carries the 1-based line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace equilens
