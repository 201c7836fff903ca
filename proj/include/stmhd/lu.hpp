#pragma once

#include <memory>
#include <string>

#include "stmhd/sparse.hpp"

namespace stmhd {

/// Sparse LU factorization (COLAMD fill-reducing column ordering, partial
/// pivoting). Immutable once built; copies share the factor.
class LUFactor {
 public:
  LUFactor() = default;
  /// Throws SingularMatrixError naming `label` on a zero pivot.
  explicit LUFactor(const SparseMatrix& a, const std::string& label = "matrix");

  bool valid() const { return impl_ != nullptr; }
  int size() const { return n_; }
  Vector solve(const Vector& b) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  int n_ = 0;
};

}  // namespace stmhd
