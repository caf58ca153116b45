#include "becfem/gpe.hpp"

#include <cmath>

#include "becfem/interpolate.hpp"

namespace becfem
{

namespace
{

SolverConfig linear_config(const GpeProblem& problem, const FlowConfig& config)
{
  return config.linear ? *config.linear
                       : SolverConfig::default_for(problem.space.free_dof_count());
}

}  // namespace

double energy(const GpeProblem& problem, const DiscreteField& v)
{
  problem.space.check_field(v);
  FormAssembler forms(problem.space);
  SparseMatrix H = forms.stiffness();
  if (problem.V.kind() != Potential::Kind::Zero)
    H.add_scaled(1.0, forms.potential(problem.V));
  double e = 0.5 * dot(v.coeffs, H.multiply(v.coeffs));
  if (problem.beta > 0.0)
    e += 0.25 * problem.beta * integrate_fourth_power(problem.space, v);
  return e;
}

double eigenvalue(const GpeProblem& problem, const DiscreteField& v)
{
  problem.space.check_field(v);
  FormAssembler forms(problem.space);
  const double vmv = dot(v.coeffs, forms.mass().multiply(v.coeffs));
  if (vmv <= 0.0)
    throw std::invalid_argument("eigenvalue: zero field");
  SparseMatrix A = forms.stiffness();
  if (problem.V.kind() != Potential::Kind::Zero)
    A.add_scaled(1.0, forms.potential(problem.V));
  if (problem.beta > 0.0)
    A.add_scaled(problem.beta, forms.density(v));
  return dot(v.coeffs, A.multiply(v.coeffs)) / vmv;
}

DiscreteField normalize(const FeSpace& space, const DiscreteField& v)
{
  space.check_field(v);
  const SparseMatrix M = assemble_mass(space);
  const double vmv = dot(v.coeffs, M.multiply(v.coeffs));
  if (vmv <= 0.0)
    throw std::invalid_argument("normalize: zero field");
  DiscreteField out = v;
  scale(1.0 / std::sqrt(vmv), out.coeffs);
  return out;
}

DiscreteField bubble_guess(const FeSpace& space)
{
  const Domain& d = space.mesh().domain;
  auto bubble = [&d](double x, double y) {
    const double xh = (2.0 * x - d.xmin - d.xmax) / d.width();
    const double yh = (2.0 * y - d.ymin - d.ymax) / d.height();
    return (1.0 - xh * xh) * (1.0 - yh * yh);
  };
  return normalize(space, interpolate(space, bubble));
}

namespace
{

// Shared machinery of flow_step and solve_ground_state. Matrices with the
// fixed pattern are assembled once; only the density part is refreshed.
struct FlowDriver
{
  const GpeProblem& problem;
  FlowConfig config;
  FormAssembler forms;
  SparseMatrix M;
  SparseMatrix H;  // stiffness + potential
  SparseMatrix A;  // H + beta * density(u)
  std::optional<SpdSolver> solver;

  FlowDriver(const GpeProblem& p, const FlowConfig& cfg)
      : problem(p), config(cfg), forms(p.space), M(forms.mass()), H(forms.stiffness())
  {
    if (problem.V.kind() != Potential::Kind::Zero)
      H.add_scaled(1.0, forms.potential(problem.V));
    A = H;
  }

  // Rebuild A at the current iterate and refactorize.
  void refresh(const DiscreteField& u)
  {
    if (problem.beta > 0.0)
    {
      A.vals = H.vals;
      A.add_scaled(problem.beta, forms.density(u));
    }
    if (!solver)
      solver.emplace(A, linear_config(problem, config));
    else if (problem.beta > 0.0)
      solver->update_values(A);
  }

  struct Observables
  {
    std::vector<double> Au;
    std::vector<double> Mu;
    double lambda;
    double energy;
    double residual;
  };

  Observables observe(const DiscreteField& u)
  {
    Observables obs;
    obs.Au = A.multiply(u.coeffs);
    obs.Mu = M.multiply(u.coeffs);
    const double umu = dot(u.coeffs, obs.Mu);
    obs.lambda = dot(u.coeffs, obs.Au) / umu;
    const double q4 =
        problem.beta > 0.0 ? integrate_fourth_power(problem.space, u) : 0.0;
    obs.energy = 0.5 * dot(u.coeffs, obs.Au) - 0.25 * problem.beta * q4;
    std::vector<double> r(obs.Au.size());
    for (std::size_t i = 0; i < r.size(); ++i)
      r[i] = obs.Au[i] - obs.lambda * obs.Mu[i];
    const std::vector<double> y = solver->solve(r);
    obs.residual = std::sqrt(std::max(0.0, dot(r, y)));
    return obs;
  }

  DiscreteField advance(const DiscreteField& u, const Observables& obs,
                        std::vector<double>* warm)
  {
    const std::vector<double> z = warm && !warm->empty() ? solver->solve(obs.Mu, *warm)
                                                         : solver->solve(obs.Mu);
    if (warm)
      *warm = z;
    const double lambda_hat = 1.0 / dot(obs.Mu, z);
    DiscreteField next = u;
    const double tau = config.step;
    for (std::size_t i = 0; i < next.coeffs.size(); ++i)
      next.coeffs[i] = (1.0 - tau) * u.coeffs[i] + tau * lambda_hat * z[i];
    const double nrm = std::sqrt(dot(next.coeffs, M.multiply(next.coeffs)));
    scale(1.0 / nrm, next.coeffs);
    return next;
  }
};

}  // namespace

FlowStepResult flow_step(const GpeProblem& problem, const DiscreteField& u,
                         const FlowConfig& config)
{
  problem.space.check_field(u);
  FlowDriver driver(problem, config);
  driver.refresh(u);
  const auto obs = driver.observe(u);
  return FlowStepResult{driver.advance(u, obs, nullptr), obs.lambda, obs.residual};
}

GroundState solve_ground_state(const GpeProblem& problem, const FlowConfig& config,
                               const DiscreteField* given)
{
  DiscreteField u;
  if (config.guess == InitialGuess::Given)
  {
    if (!given)
      throw std::invalid_argument("solve_ground_state: missing initial iterate");
    u = normalize(problem.space, *given);
  }
  else
  {
    u = bubble_guess(problem.space);
  }

  FlowDriver driver(problem, config);
  std::vector<IterationRecord> trajectory;
  std::vector<double> warm;
  for (int it = 0; it <= config.max_iterations; ++it)
  {
    driver.refresh(u);
    const auto obs = driver.observe(u);
    trajectory.push_back({obs.energy, obs.lambda, obs.residual});
    if (obs.residual < config.tolerance)
    {
      GroundState state;
      if (integrate_value(problem.space, u) < 0.0)
        scale(-1.0, u.coeffs);
      state.u = std::move(u);
      state.energy = obs.energy;
      state.eigenvalue = obs.lambda;
      state.iterations = it;
      state.residual = obs.residual;
      state.trajectory = std::move(trajectory);
      return state;
    }
    if (it == config.max_iterations)
      break;
    u = driver.advance(u, obs, &warm);
  }
  throw NonConvergence("gradient flow did not converge within the iteration budget",
                       std::move(trajectory));
}

}  // namespace becfem
