#pragma once

#include <functional>
#include <optional>

#include "becfem/gpe.hpp"
#include "becfem/interpolate.hpp"

namespace becfem
{

/// Piecewise field on a mesh, possibly discontinuous across faces;
/// evaluated in reference coordinates of a given cell. Gradients and the
/// mixed derivative are physical.
class CellField
{
public:
  virtual ~CellField() = default;
  virtual double value(Index cell, double xhat, double yhat) const = 0;
  virtual std::array<double, 2> gradient(Index cell, double xhat, double yhat) const = 0;
  virtual double mixed_derivative(Index cell, double xhat, double yhat) const = 0;
};

/// View of a discrete field as a CellField.
class FeCellField : public CellField
{
public:
  FeCellField(const FeSpace& space, const DiscreteField& f);
  double value(Index cell, double xhat, double yhat) const override;
  std::array<double, 2> gradient(Index cell, double xhat, double yhat) const override;
  double mixed_derivative(Index cell, double xhat, double yhat) const override;

private:
  const FeSpace& space_;
  const DiscreteField& field_;
};

/// A globally smooth function injected cell-wise; conforming by
/// construction, so all jump quantities vanish on it.
class SmoothCellField : public CellField
{
public:
  SmoothCellField(const Mesh& mesh, ScalarFunction value,
                  std::function<std::array<double, 2>(double, double)> gradient = nullptr,
                  ScalarFunction mixed = nullptr);
  double value(Index cell, double xhat, double yhat) const override;
  std::array<double, 2> gradient(Index cell, double xhat, double yhat) const override;
  double mixed_derivative(Index cell, double xhat, double yhat) const override;

private:
  const Mesh& mesh_;
  ScalarFunction value_;
  std::function<std::array<double, 2>(double, double)> gradient_;
  ScalarFunction mixed_;
};

/// Point evaluation of a discrete field anywhere in the domain; points on
/// mesh lines resolve to the cell on the upper/right side. O(1) per point
/// on the uniform mesh.
class FieldEvaluator
{
public:
  FieldEvaluator(const FeSpace& space, const DiscreteField& f);

  double value(double x, double y) const;
  std::array<double, 2> gradient(double x, double y) const;
  /// (uxx, uxy, uyy)
  std::array<double, 3> hessian(double x, double y) const;

  ScalarFunction as_function() const;

private:
  const FeSpace& space_;
  const DiscreteField& field_;
};

struct VectorField
{
  ScalarFunction x;
  ScalarFunction y;
  ScalarFunction divergence;
};

/// The broken gradient of a discrete field as a VectorField (divergence
/// from the cell-wise Hessian trace).
VectorField gradient_field(const FieldEvaluator& eval);

// -- interpolation operators ----------------------------------------------

/// EQ1Rot interpolation preserving all face and cell means of f. Throws
/// std::invalid_argument for other element kinds.
DiscreteField interpolate_pi_h(const FeSpace& space, const ScalarFunction& f);

/// Same operator for a field on a nested finer mesh; the means are
/// integrated exactly by composite quadrature over the fine cells and
/// sub-edges, which keeps the gradient orthogonality exact.
DiscreteField interpolate_pi_h(const FeSpace& space, const FeSpace& fine_space,
                               const DiscreteField& fine_field);

/// Cell-mean projection: one value per cell.
std::vector<double> project_pi0(const FeSpace& space, const DiscreteField& v);
/// || v - Pi0 v ||_{L2}.
double pi0_deviation(const FeSpace& space, const DiscreteField& v);

// -- broken norms and functionals -----------------------------------------

double l2_norm(const FeSpace& space, const DiscreteField& v);
double broken_h1_seminorm(const FeSpace& space, const DiscreteField& v);
double broken_h1_norm(const FeSpace& space, const DiscreteField& v);
/// || d2 v / dx dy ||_{L2}, cell-wise.
double mixed_derivative_l2norm(const FeSpace& space, const DiscreteField& v);
/// Frobenius L2 norm of the cell-wise Hessian.
double hessian_seminorm(const FeSpace& space, const DiscreteField& v);

/// Consistency error functional, volume form:
///   sum_K int_K v_h (div g) + g . grad_h v_h.
double consistency_functional(const FeSpace& space, const CellField& v_h,
                              const VectorField& g);
/// Same functional evaluated as face integrals of jumps,
///   sum_e int_e [v_h] (g . n); the two routes agree for exact quadrature.
double consistency_functional_faces(const FeSpace& space, const CellField& v_h,
                                    const VectorField& g);

/// ( sum_e h^-1 || [v_h] ||^2_{L2(e)} )^{1/2}; boundary faces use the trace.
double jump_seminorm(const FeSpace& space, const CellField& v_h);

/// Max |d2 v / dx dy| over all cells' quadrature points.
double mixed_derivative_check(const FeSpace& space, const CellField& v_h);

// -- errors against a nested reference ------------------------------------

struct FieldErrors
{
  double l2 = 0.0;
  double h1 = 0.0;  // broken H1 norm of the difference
};

/// Errors of a coarse field against a reference on a nested finer mesh,
/// integrated over the fine cells with signs aligned so (u, u_ref) >= 0.
FieldErrors compute_errors(const FeSpace& coarse_space, const DiscreteField& coarse,
                           const FeSpace& reference_space, const DiscreteField& reference);
FieldErrors compute_errors(const FeSpace& coarse_space, const GroundState& coarse,
                           const FeSpace& reference_space, const GroundState& reference);

/// (grad_h a - grad_h b, grad_h c) with a on the fine space and b, c on a
/// nested coarser space, integrated exactly over the fine cells. Zero for
/// b = Pi_h a by the gradient-orthogonality of the EQ1Rot interpolation.
double nested_gradient_defect(const FeSpace& fine_space, const DiscreteField& a,
                              const FeSpace& coarse_space, const DiscreteField& b,
                              const DiscreteField& c);

/// Experimental order of convergence between dyadic levels; absent for
/// nonpositive errors.
std::optional<double> eoc(double error_coarse, double error_fine);

// -- lower bound / monotonicity report -------------------------------------

struct LowerBoundReport
{
  std::vector<bool> below;      // E_level <= conforming energy
  std::vector<double> margins;  // conforming energy - E_level
  bool all_below = false;
  /// First index from which every level is below, -1 if none.
  int threshold_index = -1;
  bool monotone_nondecreasing = false;
  double min_step_increase = 0.0;
};

LowerBoundReport lower_bound_check(const std::vector<double>& nonconforming_energies,
                                   double conforming_fine_energy);

/// Per-level study record (one table row).
struct ErrorRecord
{
  int level = 0;  // cells per axis
  Index dofs = 0;
  double l2_error = 0.0;
  double h1_error = 0.0;
  double energy = 0.0;
  double eigenvalue = 0.0;
  double energy_error = 0.0;
  double eigenvalue_error = 0.0;
  double cpu_seconds = 0.0;
  int iterations = 0;
  bool converged = true;
};

}  // namespace becfem
