#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "becfem/field.hpp"
#include "becfem/mesh.hpp"
#include "becfem/quadrature.hpp"

namespace becfem
{

enum class ElementKind
{
  EQ1Rot,  // enriched rotated Q1: span{1, x, y, x^2, y^2}, edge/cell averages
  Q2       // conforming biquadratic, 3x3 nodal layout
};

constexpr int local_dof_count(ElementKind kind)
{
  return kind == ElementKind::EQ1Rot ? 5 : 9;
}

/// Shape functions on the reference cell [-1,1]^2.
///
/// EQ1Rot numbers its degrees of freedom as the mean values over the
/// bottom, right, top and left edges (0..3) followed by the cell mean (4);
/// the coefficients are obtained by solving the 5x5 moment system of
/// {1, x, y, x^2, y^2} against those five functionals. Q2 uses the tensor
/// Lagrange basis on the {-1,0,1}^2 nodes, numbered bottom row first.
class ReferenceBasis
{
public:
  explicit ReferenceBasis(ElementKind kind, double debug_perturbation = 0.0);

  ElementKind kind() const { return kind_; }
  int size() const { return local_dof_count(kind_); }

  double value(int i, double x, double y) const;
  std::array<double, 2> gradient(int i, double x, double y) const;
  /// Second mixed derivative d2/dxdy on the reference cell. Identically
  /// zero for EQ1Rot, whose span contains no xy monomial.
  double mixed_xy(int i, double x, double y) const;
  /// Reference second derivatives (dxx, dxy, dyy).
  std::array<double, 3> second_derivatives(int i, double x, double y) const;

  /// EQ1Rot only: coefficients of shape i in the monomial basis
  /// {1, x, y, x^2, y^2}.
  const std::array<std::array<double, 5>, 5>& monomial_coefficients() const
  {
    return coeff_;
  }

private:
  ElementKind kind_;
  std::array<std::array<double, 5>, 5> coeff_{};  // EQ1Rot only
};

struct SpaceOptions
{
  bool constrain_boundary = true;
  /// Selftest hook: perturbs the EQ1Rot basis coefficients so that the
  /// element identities fail; never set outside negative tests.
  double basis_perturbation = 0.0;
};

/// A finite element space on a uniform mesh: global DOF numbering,
/// Dirichlet mask, quadrature and tabulated shape values. Immutable.
///
/// Global numbering is deterministic: EQ1Rot takes face DOFs in mesh face
/// order followed by cell DOFs in cell order; Q2 numbers the (2nx+1) by
/// (2ny+1) node grid lexicographically.
class FeSpace
{
public:
  FeSpace(Mesh mesh, ElementKind kind, int quad_order, SpaceOptions options = {});

  const Mesh& mesh() const { return mesh_; }
  ElementKind kind() const { return kind_; }
  const Quadrature& quadrature() const { return quad_; }
  const GaussRule& edge_rule() const { return edge_rule_; }
  const ReferenceBasis& basis() const { return basis_; }
  std::uint64_t id() const { return id_; }

  Index total_dofs() const { return total_dofs_; }
  Index free_dof_count() const { return static_cast<Index>(free_to_global_.size()); }
  int local_size() const { return local_dof_count(kind_); }

  Index cell_dof(Index cell, int local) const
  {
    return dof_map_[static_cast<std::size_t>(cell) * local_size() + local];
  }
  bool is_masked(Index global_dof) const { return global_to_free_[global_dof] < 0; }
  Index free_index(Index global_dof) const { return global_to_free_[global_dof]; }
  Index global_of_free(Index free_dof) const { return free_to_global_[free_dof]; }

  /// Local coefficients of `f` on `cell` (masked DOFs read as zero).
  void gather(const DiscreteField& f, Index cell, std::span<double> local) const;

  DiscreteField make_field() const
  {
    return DiscreteField{id_, std::vector<double>(free_to_global_.size(), 0.0)};
  }
  void check_field(const DiscreteField& f) const;

  // Tabulated shape values at the volume quadrature points, laid out as
  // [q * local_size + i].
  const std::vector<double>& tab_values() const { return tab_val_; }
  const std::vector<double>& tab_dx() const { return tab_dx_; }
  const std::vector<double>& tab_dy() const { return tab_dy_; }

  /// Shape traces at the edge quadrature points of reference edge e
  /// (0 bottom, 1 right, 2 top, 3 left), laid out as [q * local_size + i].
  const std::vector<double>& tab_edge_values(int edge) const { return tab_edge_[edge]; }

  /// Reference coordinates of edge quadrature point q on edge e.
  std::array<double, 2> edge_point(int edge, int q) const;

private:
  Mesh mesh_;
  ElementKind kind_;
  Quadrature quad_;
  GaussRule edge_rule_;
  ReferenceBasis basis_;
  std::uint64_t id_;
  Index total_dofs_ = 0;
  std::vector<Index> dof_map_;
  std::vector<Index> global_to_free_;
  std::vector<Index> free_to_global_;
  std::vector<double> tab_val_, tab_dx_, tab_dy_;
  std::array<std::vector<double>, 4> tab_edge_;
};

/// Convenience constructor; quadrature order 5 is the project-wide default.
FeSpace build_space(const Mesh& mesh, ElementKind kind, int quad_order = 5);

struct EvalResult
{
  std::vector<double> values;
  std::vector<std::array<double, 2>> gradients;  // physical (broken) gradients
};

/// Evaluate a field and its broken gradient at reference points of one cell.
EvalResult eval_field(const FeSpace& space, const DiscreteField& f, Index cell,
                      std::span<const std::array<double, 2>> ref_points);

}  // namespace becfem
