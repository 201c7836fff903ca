#pragma once

#include <stdexcept>
#include <string>

namespace stmhd {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user input: bad sweep lists, non-divisible extents, unknown names.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// A factorization met a zero pivot. The message names the failing block.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// NaN/Inf appeared inside a Krylov iteration.
class BreakdownError : public Error {
 public:
  using Error::Error;
};

}  // namespace stmhd
