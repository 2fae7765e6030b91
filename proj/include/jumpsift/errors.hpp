#pragma once

#include <stdexcept>
#include <string>

namespace jumpsift {

// Bad caller input: non-positive sizes, out-of-range parameters, malformed data.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The operation is well-defined in general but not for this input
// (irregular grid where a single lag is needed, missing ground truth, ...).
class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A sampler or numeric routine could not produce a finite value.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Zero denominator in a normalized statistic.
class DegenerateStatistic : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Config file / flag schema violations. The message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File system failures, with the path in the message.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace jumpsift
