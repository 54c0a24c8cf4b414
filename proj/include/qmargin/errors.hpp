#pragma once

#include <stdexcept>
#include <string>

namespace qmargin {

/// Violated mathematical precondition (bad shapes, non-Hermitian input, ...).
class DomainError : public std::runtime_error {
  public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Requested object exceeds the configured dense-size caps.
class CapacityError : public std::runtime_error {
  public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed external input (files, configs).
class FormatError : public std::runtime_error {
  public:
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical procedure failed to converge or produced non-finite values.
class NumericError : public std::runtime_error {
  public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qmargin
