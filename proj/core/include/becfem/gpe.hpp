#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "becfem/assembly.hpp"
#include "becfem/linalg.hpp"
#include "becfem/potential.hpp"

namespace becfem
{

/// Ground-state problem: minimize the energy
///   E(v) = 1/2 int |grad_h v|^2 + V v^2 + (beta/2) v^4
/// over the discrete L2 unit sphere of the space.
struct GpeProblem
{
  const FeSpace& space;
  Potential V;
  double beta = 0.0;

  GpeProblem(const FeSpace& space_, Potential V_, double beta_)
      : space(space_), V(std::move(V_)), beta(beta_)
  {
    if (beta < 0.0)
      throw std::invalid_argument("GpeProblem: beta must be nonnegative");
  }
};

enum class InitialGuess
{
  Bubble,  // normalized interpolant of (1-x^2)(1-y^2) mapped to the domain
  Given
};

struct FlowConfig
{
  double step = 1.0;
  double tolerance = 1e-12;
  int max_iterations = 2000;
  InitialGuess guess = InitialGuess::Bubble;
  std::optional<SolverConfig> linear;  // defaults by free-DOF count
};

struct IterationRecord
{
  double energy;
  double eigenvalue;
  double residual;
};

struct GroundState
{
  DiscreteField u;
  double energy = 0.0;
  double eigenvalue = 0.0;
  int iterations = 0;
  double residual = 0.0;
  std::vector<IterationRecord> trajectory;
};

struct NonConvergence : std::runtime_error
{
  NonConvergence(const std::string& what, std::vector<IterationRecord> trajectory_)
      : std::runtime_error(what), trajectory(std::move(trajectory_))
  {
  }
  std::vector<IterationRecord> trajectory;
};

double energy(const GpeProblem& problem, const DiscreteField& v);

/// Rayleigh quotient of the nonlinear operator: v'(K + A_V + beta A_rho(v))v / v'Mv.
double eigenvalue(const GpeProblem& problem, const DiscreteField& v);

/// Scale to the L2 unit sphere. Throws std::invalid_argument on a zero field.
DiscreteField normalize(const FeSpace& space, const DiscreteField& v);

struct FlowStepResult
{
  DiscreteField next;
  double eigenvalue;
  double residual;
};

/// One step of the energy-adaptive gradient flow
///   z = A(u)^-1 M u,   u+ = normalize((1-step) u + step z / (u'Mz)),
/// with the residual measured in the A(u)^-1 dual norm. At step 1 this is
/// generalized inverse iteration.
FlowStepResult flow_step(const GpeProblem& problem, const DiscreteField& u,
                         const FlowConfig& config);

/// Iterate the flow until the residual drops below the tolerance. The
/// returned state has nonnegative mean (the minimizer is unique up to
/// sign). Throws NonConvergence with the recorded trajectory on failure.
GroundState solve_ground_state(const GpeProblem& problem, const FlowConfig& config,
                               const DiscreteField* given = nullptr);

/// The default starting point of the flow on this space.
DiscreteField bubble_guess(const FeSpace& space);

}  // namespace becfem
