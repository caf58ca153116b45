#include "becfem/sparse.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>

#include "becfem/parallel.hpp"

namespace becfem
{

void SparseMatrix::set_zero()
{
  std::fill(vals.begin(), vals.end(), 0.0);
}

void SparseMatrix::multiply(const double* x, double* y) const
{
  // Rows are independent, so the result does not depend on the worker
  // count or the block partition.
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r)
    {
      double acc = 0.0;
      for (Index k = row_offsets[r]; k < row_offsets[r + 1]; ++k)
        acc += vals[k] * x[cols[k]];
      y[r] = acc;
    }
  });
}

std::vector<double> SparseMatrix::multiply(const std::vector<double>& x) const
{
  assert(static_cast<Index>(x.size()) == n);
  std::vector<double> y(x.size());
  multiply(x.data(), y.data());
  return y;
}

std::ptrdiff_t SparseMatrix::find(Index row, Index col) const
{
  const Index* first = cols.data() + row_offsets[row];
  const Index* last = cols.data() + row_offsets[row + 1];
  const Index* it = std::lower_bound(first, last, col);
  if (it == last || *it != col)
    return -1;
  return it - cols.data();
}

void SparseMatrix::add_scaled(double alpha, const SparseMatrix& other)
{
  assert(vals.size() == other.vals.size());
  for (std::size_t k = 0; k < vals.size(); ++k)
    vals[k] += alpha * other.vals[k];
}

SparseMatrix SparsityPattern::make_matrix() const
{
  SparseMatrix m;
  m.n = n;
  m.row_offsets = row_offsets;
  m.cols = cols;
  m.vals.assign(cols.size(), 0.0);
  return m;
}

}  // namespace becfem
