#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

namespace stmhd {

/// Compressed sparse row matrix. Eigen keeps column indices sorted and unique
/// per row once compressed, which every helper below guarantees on return.
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;
using Triplet = Eigen::Triplet<double, int>;
using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;

/// Duplicate entries are summed.
SparseMatrix from_triplets(int rows, int cols, const std::vector<Triplet>& entries);

SparseMatrix identity(int n);

/// Clears the given rows; the sparsity of other rows is untouched.
void zero_rows(SparseMatrix& a, const std::vector<int>& rows);
/// Clears the given rows and puts `diag` on their diagonal entries.
void set_identity_rows(SparseMatrix& a, const std::vector<int>& rows, double diag = 1.0);
/// Clears rows and columns of `dofs`, then puts `diag` on their diagonal.
SparseMatrix eliminate_symmetric(const SparseMatrix& a, const std::vector<int>& dofs, double diag);

DenseMatrix to_dense(const SparseMatrix& a);

/// Column indices sorted and unique in every row, offsets nondecreasing.
bool is_well_formed(const SparseMatrix& a);

}  // namespace stmhd
