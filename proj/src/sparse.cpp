#include "stmhd/sparse.hpp"

namespace stmhd {

SparseMatrix from_triplets(int rows, int cols, const std::vector<Triplet>& entries) {
  SparseMatrix a(rows, cols);
  a.setFromTriplets(entries.begin(), entries.end());
  a.makeCompressed();
  return a;
}

SparseMatrix identity(int n) {
  SparseMatrix a(n, n);
  a.setIdentity();
  a.makeCompressed();
  return a;
}

void zero_rows(SparseMatrix& a, const std::vector<int>& rows) {
  for (int r : rows)
    for (SparseMatrix::InnerIterator it(a, r); it; ++it) it.valueRef() = 0.0;
  a.prune(0.0, 0.0);
  a.makeCompressed();
}

void set_identity_rows(SparseMatrix& a, const std::vector<int>& rows, double diag) {
  zero_rows(a, rows);
  for (int r : rows) a.coeffRef(r, r) = diag;
  a.makeCompressed();
}

SparseMatrix eliminate_symmetric(const SparseMatrix& a, const std::vector<int>& dofs, double diag) {
  std::vector<char> mask(static_cast<std::size_t>(a.rows()), 0);
  for (int d : dofs) mask[static_cast<std::size_t>(d)] = 1;
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(a.nonZeros()) + dofs.size());
  for (int r = 0; r < a.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(a, r); it; ++it)
      if (!mask[static_cast<std::size_t>(it.row())] && !mask[static_cast<std::size_t>(it.col())])
        t.emplace_back(it.row(), it.col(), it.value());
  if (diag != 0.0)
    for (int d : dofs) t.emplace_back(d, d, diag);
  return from_triplets(static_cast<int>(a.rows()), static_cast<int>(a.cols()), t);
}

DenseMatrix to_dense(const SparseMatrix& a) { return DenseMatrix(a); }

bool is_well_formed(const SparseMatrix& a) {
  if (!a.isCompressed()) return false;
  const int* outer = a.outerIndexPtr();
  const int* inner = a.innerIndexPtr();
  for (int r = 0; r < a.outerSize(); ++r) {
    if (outer[r + 1] < outer[r]) return false;
    for (int p = outer[r] + 1; p < outer[r + 1]; ++p)
      if (inner[p] <= inner[p - 1]) return false;
  }
  return true;
}

}  // namespace stmhd
