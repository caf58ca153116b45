#pragma once

#include <vector>

#include "becfem/mesh.hpp"

namespace becfem
{

/// Symmetric sparse matrix in compressed row storage with sorted column
/// ids and a fixed symbolic pattern.
struct SparseMatrix
{
  Index n = 0;
  std::vector<Index> row_offsets;  // size n + 1
  std::vector<Index> cols;         // sorted within each row
  std::vector<double> vals;

  std::size_t nonzeros() const { return cols.size(); }

  void set_zero();
  /// y = A x
  void multiply(const double* x, double* y) const;
  std::vector<double> multiply(const std::vector<double>& x) const;

  /// Offset of entry (row, col) in vals; -1 if outside the pattern.
  std::ptrdiff_t find(Index row, Index col) const;

  /// this += alpha * other; both matrices must share the symbolic pattern.
  void add_scaled(double alpha, const SparseMatrix& other);
};

/// Shared symbolic pattern: all forms assembled on one space reuse it.
struct SparsityPattern
{
  Index n = 0;
  std::vector<Index> row_offsets;
  std::vector<Index> cols;

  SparseMatrix make_matrix() const;
};

}  // namespace becfem
