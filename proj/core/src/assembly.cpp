#include "becfem/assembly.hpp"

#include <algorithm>
#include <cassert>

#include "becfem/parallel.hpp"

namespace becfem
{

namespace
{

constexpr std::size_t kCellBlock = 1024;

SparsityPattern build_pattern(const FeSpace& space)
{
  const Index nfree = space.free_dof_count();
  const Index ncells = space.mesh().cell_count();
  const int nl = space.local_size();

  // Free-DOF -> cell adjacency.
  std::vector<Index> adj_offsets(nfree + 1, 0);
  for (Index c = 0; c < ncells; ++c)
    for (int i = 0; i < nl; ++i)
    {
      const Index fr = space.free_index(space.cell_dof(c, i));
      if (fr >= 0)
        ++adj_offsets[fr + 1];
    }
  for (Index r = 0; r < nfree; ++r)
    adj_offsets[r + 1] += adj_offsets[r];
  std::vector<Index> adj(adj_offsets[nfree]);
  {
    std::vector<Index> cursor(adj_offsets.begin(), adj_offsets.end() - 1);
    for (Index c = 0; c < ncells; ++c)
      for (int i = 0; i < nl; ++i)
      {
        const Index fr = space.free_index(space.cell_dof(c, i));
        if (fr >= 0)
          adj[cursor[fr]++] = c;
      }
  }

  SparsityPattern pattern;
  pattern.n = nfree;
  pattern.row_offsets.assign(nfree + 1, 0);
  std::vector<Index> scratch;
  for (Index r = 0; r < nfree; ++r)
  {
    scratch.clear();
    for (Index k = adj_offsets[r]; k < adj_offsets[r + 1]; ++k)
    {
      const Index c = adj[k];
      for (int j = 0; j < nl; ++j)
      {
        const Index fc = space.free_index(space.cell_dof(c, j));
        if (fc >= 0)
          scratch.push_back(fc);
      }
    }
    std::sort(scratch.begin(), scratch.end());
    scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
    pattern.cols.insert(pattern.cols.end(), scratch.begin(), scratch.end());
    pattern.row_offsets[r + 1] = static_cast<Index>(pattern.cols.size());
  }
  return pattern;
}

void scatter_cell(const FeSpace& space, Index cell, const double* local, SparseMatrix& into)
{
  const int nl = space.local_size();
  for (int i = 0; i < nl; ++i)
  {
    const Index ri = space.free_index(space.cell_dof(cell, i));
    if (ri < 0)
      continue;
    for (int j = 0; j < nl; ++j)
    {
      const Index cj = space.free_index(space.cell_dof(cell, j));
      if (cj < 0)
        continue;
      const std::ptrdiff_t k = into.find(ri, cj);
      assert(k >= 0);
      into.vals[k] += local[i * nl + j];
    }
  }
}

}  // namespace

FormAssembler::FormAssembler(const FeSpace& space)
    : space_(space), pattern_(build_pattern(space))
{
  const int nl = space.local_size();
  const int nq = space.quadrature().size();
  const auto& quad = space.quadrature();
  const double hx = space.mesh().hx;
  const double hy = space.mesh().hy;
  const double jac = 0.25 * hx * hy;
  const double sx2 = (2.0 / hx) * (2.0 / hx);
  const double sy2 = (2.0 / hy) * (2.0 / hy);

  local_stiffness_.assign(static_cast<std::size_t>(nl) * nl, 0.0);
  local_mass_.assign(static_cast<std::size_t>(nl) * nl, 0.0);
  for (int q = 0; q < nq; ++q)
  {
    const double w = quad.w[q] * jac;
    const double* val = &space.tab_values()[static_cast<std::size_t>(q) * nl];
    const double* dx = &space.tab_dx()[static_cast<std::size_t>(q) * nl];
    const double* dy = &space.tab_dy()[static_cast<std::size_t>(q) * nl];
    for (int i = 0; i < nl; ++i)
      for (int j = 0; j < nl; ++j)
      {
        local_stiffness_[i * nl + j] += w * (sx2 * dx[i] * dx[j] + sy2 * dy[i] * dy[j]);
        local_mass_[i * nl + j] += w * val[i] * val[j];
      }
  }
}

SparseMatrix FormAssembler::stiffness() const
{
  SparseMatrix m = pattern_.make_matrix();
  for (Index c = 0; c < space_.mesh().cell_count(); ++c)
    scatter_cell(space_, c, local_stiffness_.data(), m);
  return m;
}

SparseMatrix FormAssembler::mass() const
{
  SparseMatrix m = pattern_.make_matrix();
  for (Index c = 0; c < space_.mesh().cell_count(); ++c)
    scatter_cell(space_, c, local_mass_.data(), m);
  return m;
}

SparseMatrix FormAssembler::weighted_mass(const std::vector<double>& cell_weights) const
{
  const Index ncells = space_.mesh().cell_count();
  const int nl = space_.local_size();
  const int nq = space_.quadrature().size();
  const double jac = 0.25 * space_.mesh().hx * space_.mesh().hy;

  SparseMatrix m = pattern_.make_matrix();
  std::vector<double> locals(kCellBlock * nl * nl);
  for (Index block = 0; block < ncells; block += static_cast<Index>(kCellBlock))
  {
    const Index block_end = std::min<Index>(block + static_cast<Index>(kCellBlock), ncells);
    parallel_for(static_cast<std::size_t>(block_end - block),
                 [&](std::size_t begin, std::size_t end) {
                   for (std::size_t b = begin; b < end; ++b)
                   {
                     double* local = &locals[b * nl * nl];
                     std::fill(local, local + nl * nl, 0.0);
                     const double* wq = &cell_weights[static_cast<std::size_t>(block + b) * nq];
                     for (int q = 0; q < nq; ++q)
                     {
                       const double w = wq[q] * space_.quadrature().w[q] * jac;
                       if (w == 0.0)
                         continue;
                       const double* val = &space_.tab_values()[static_cast<std::size_t>(q) * nl];
                       for (int i = 0; i < nl; ++i)
                         for (int j = 0; j <= i; ++j)
                           local[i * nl + j] += w * val[i] * val[j];
                     }
                     for (int i = 0; i < nl; ++i)
                       for (int j = i + 1; j < nl; ++j)
                         local[i * nl + j] = local[j * nl + i];
                   }
                 });
    for (Index c = block; c < block_end; ++c)
      scatter_cell(space_, c, &locals[static_cast<std::size_t>(c - block) * nl * nl], m);
  }
  return m;
}

std::vector<double> FormAssembler::quadrature_weight_buffer() const
{
  return std::vector<double>(static_cast<std::size_t>(space_.mesh().cell_count()) *
                             space_.quadrature().size());
}

SparseMatrix FormAssembler::potential(const Potential& V) const
{
  const int nq = space_.quadrature().size();
  std::vector<double> weights = quadrature_weight_buffer();
  parallel_for(static_cast<std::size_t>(space_.mesh().cell_count()),
               [&](std::size_t begin, std::size_t end) {
                 for (std::size_t c = begin; c < end; ++c)
                 {
                   const auto center = space_.mesh().cell_center(static_cast<Index>(c));
                   for (int q = 0; q < nq; ++q)
                   {
                     const double x = center[0] + 0.5 * space_.mesh().hx * space_.quadrature().x[q];
                     const double y = center[1] + 0.5 * space_.mesh().hy * space_.quadrature().y[q];
                     weights[c * nq + q] = V(x, y);
                   }
                 }
               });
  return weighted_mass(weights);
}

SparseMatrix FormAssembler::density(const DiscreteField& w) const
{
  space_.check_field(w);
  const int nq = space_.quadrature().size();
  const int nl = space_.local_size();
  std::vector<double> weights = quadrature_weight_buffer();
  parallel_for(static_cast<std::size_t>(space_.mesh().cell_count()),
               [&](std::size_t begin, std::size_t end) {
                 std::vector<double> local(nl);
                 for (std::size_t c = begin; c < end; ++c)
                 {
                   space_.gather(w, static_cast<Index>(c), local);
                   for (int q = 0; q < nq; ++q)
                   {
                     const double* val = &space_.tab_values()[static_cast<std::size_t>(q) * nl];
                     double v = 0.0;
                     for (int i = 0; i < nl; ++i)
                       v += local[i] * val[i];
                     weights[c * nq + q] = v * v;
                   }
                 }
               });
  return weighted_mass(weights);
}

SparseMatrix assemble_stiffness(const FeSpace& space)
{
  return FormAssembler(space).stiffness();
}

SparseMatrix assemble_mass(const FeSpace& space)
{
  return FormAssembler(space).mass();
}

SparseMatrix assemble_potential(const FeSpace& space, const Potential& V)
{
  return FormAssembler(space).potential(V);
}

SparseMatrix assemble_density(const FeSpace& space, const DiscreteField& w)
{
  return FormAssembler(space).density(w);
}

namespace
{

// Per-cell partial integrals accumulated in cell order.
template <typename CellValue>
double integrate_cells(const FeSpace& space, CellValue&& cell_value)
{
  const Index ncells = space.mesh().cell_count();
  std::vector<double> partial(ncells);
  parallel_for(static_cast<std::size_t>(ncells), [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c)
      partial[c] = cell_value(static_cast<Index>(c));
  });
  double total = 0.0;
  for (Index c = 0; c < ncells; ++c)
    total += partial[c];
  return total;
}

template <typename PointMap>
double integrate_field(const FeSpace& space, const DiscreteField& v, PointMap&& map)
{
  space.check_field(v);
  const int nl = space.local_size();
  const int nq = space.quadrature().size();
  const double jac = 0.25 * space.mesh().hx * space.mesh().hy;
  return integrate_cells(space, [&](Index c) {
    std::array<double, 9> local{};
    space.gather(v, c, std::span<double>(local.data(), nl));
    double acc = 0.0;
    for (int q = 0; q < nq; ++q)
    {
      const double* val = &space.tab_values()[static_cast<std::size_t>(q) * nl];
      double u = 0.0;
      for (int i = 0; i < nl; ++i)
        u += local[i] * val[i];
      acc += space.quadrature().w[q] * map(u);
    }
    return acc * jac;
  });
}

}  // namespace

double integrate_value(const FeSpace& space, const DiscreteField& v)
{
  return integrate_field(space, v, [](double u) { return u; });
}

double integrate_fourth_power(const FeSpace& space, const DiscreteField& v)
{
  return integrate_field(space, v, [](double u) { return (u * u) * (u * u); });
}

}  // namespace becfem
