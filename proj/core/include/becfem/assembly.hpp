#pragma once

#include "becfem/elements.hpp"
#include "becfem/potential.hpp"
#include "becfem/sparse.hpp"

namespace becfem
{

/// Assembles the global forms of one space into a shared symbolic pattern.
/// The element matrices of the gradient and mass forms are computed once on
/// the reference cell (all cells are congruent on a uniform mesh); weighted
/// forms run per-cell quadrature. Cells are processed in blocks that may be
/// computed concurrently and are merged in cell order, so the assembled
/// values are bitwise independent of the worker count.
class FormAssembler
{
public:
  explicit FormAssembler(const FeSpace& space);

  const FeSpace& space() const { return space_; }
  const SparsityPattern& pattern() const { return pattern_; }

  /// (grad phi_i, grad phi_j), broken gradients; SPD on the free DOFs.
  SparseMatrix stiffness() const;
  /// (phi_i, phi_j); SPD.
  SparseMatrix mass() const;
  /// (V phi_i, phi_j); symmetric positive semidefinite for V >= 0.
  SparseMatrix potential(const Potential& V) const;
  /// (w^2 phi_i, phi_j) with the field w evaluated at quadrature points.
  /// The interaction strength multiplies the result at the call site.
  SparseMatrix density(const DiscreteField& w) const;

private:
  SparseMatrix weighted_mass(const std::vector<double>& cell_weights) const;
  std::vector<double> quadrature_weight_buffer() const;

  const FeSpace& space_;
  SparsityPattern pattern_;
  std::vector<double> local_stiffness_;  // physical scaling folded in
  std::vector<double> local_mass_;
};

SparseMatrix assemble_stiffness(const FeSpace& space);
SparseMatrix assemble_mass(const FeSpace& space);
SparseMatrix assemble_potential(const FeSpace& space, const Potential& V);
SparseMatrix assemble_density(const FeSpace& space, const DiscreteField& w);

/// Integral of the field over the domain.
double integrate_value(const FeSpace& space, const DiscreteField& v);
/// Integral of the fourth power of the field; an independent quadrature
/// route for cross-checking v' density(v) v.
double integrate_fourth_power(const FeSpace& space, const DiscreteField& v);

}  // namespace becfem
