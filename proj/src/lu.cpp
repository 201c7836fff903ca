#include "stmhd/lu.hpp"

#include <Eigen/SparseLU>

#include "stmhd/errors.hpp"

namespace stmhd {

struct LUFactor::Impl {
  using ColMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
  Eigen::SparseLU<ColMatrix, Eigen::COLAMDOrdering<int>> lu;
};

LUFactor::LUFactor(const SparseMatrix& a, const std::string& label) {
  if (a.rows() != a.cols()) throw SingularMatrixError(label + ": LU needs a square matrix");
  auto impl = std::make_shared<Impl>();
  Impl::ColMatrix col(a);
  col.makeCompressed();
  impl->lu.analyzePattern(col);
  impl->lu.factorize(col);
  if (impl->lu.info() != Eigen::Success)
    throw SingularMatrixError(label + ": zero pivot in LU factorization (" + impl->lu.lastErrorMessage() + ")");
  n_ = static_cast<int>(a.rows());
  impl_ = std::move(impl);
}

Vector LUFactor::solve(const Vector& b) const {
  if (!impl_) throw Error("LU factor used before construction");
  Vector x = impl_->lu.solve(b);
  return x;
}

}  // namespace stmhd
