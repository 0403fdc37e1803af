#pragma once

#include <stdexcept>
#include <string>

namespace mortarfem {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid input: bad geometry, malformed config, violated preconditions.
/// The CLI maps this to exit code 1.
class ValidationError : public Error {
public:
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

/// Numerical breakdown: failed factorization, indefinite quadratic form.
/// The CLI maps this to exit code 2.
class NumericalError : public Error {
public:
  explicit NumericalError(const std::string& msg) : Error(msg) {}
};

} // namespace mortarfem
