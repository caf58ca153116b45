#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "becfem/gpe.hpp"
#include "becfem/interpolate.hpp"

using namespace becfem;

namespace
{

Eigen::MatrixXd dense(const SparseMatrix& A)
{
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(A.n, A.n);
  for (Index r = 0; r < A.n; ++r)
    for (Index k = A.row_offsets[r]; k < A.row_offsets[r + 1]; ++k)
      M(r, A.cols[k]) = A.vals[k];
  return M;
}

}  // namespace

TEST_CASE("normalize")
{
  const FeSpace space(build_mesh(Domain{-1, 1, -1, 1}, 8, 8), ElementKind::EQ1Rot, 5);
  const SparseMatrix M = assemble_mass(space);

  const DiscreteField bubble = interpolate(space, [](double x, double y) {
    return (1.0 - x * x) * (1.0 - y * y);
  });
  const DiscreteField w = normalize(space, bubble);
  CHECK(dot(w.coeffs, M.multiply(w.coeffs)) == doctest::Approx(1.0).epsilon(1e-14));

  // || (1-x^2)(1-y^2) ||_{L2} = 16/15 on [-1,1]^2, so the scale factor of
  // the (interpolated) bubble is close to 15/16.
  const double scale = w.coeffs[0] / bubble.coeffs[0];
  CHECK(scale == doctest::Approx(15.0 / 16.0).epsilon(0.01));

  const DiscreteField w2 = normalize(space, w);
  for (std::size_t i = 0; i < w.coeffs.size(); ++i)
    CHECK(w2.coeffs[i] == doctest::Approx(w.coeffs[i]).epsilon(1e-15));

  DiscreteField scaled = bubble;
  for (double& c : scaled.coeffs)
    c *= 7.0;
  const DiscreteField w7 = normalize(space, scaled);
  for (std::size_t i = 0; i < w.coeffs.size(); ++i)
    CHECK(w7.coeffs[i] == doctest::Approx(w.coeffs[i]).epsilon(1e-14));

  CHECK_THROWS_AS(normalize(space, space.make_field()), std::invalid_argument);
}

TEST_CASE("energy and eigenvalue definitions")
{
  const FeSpace space(build_mesh(Domain{-1, 1, -1, 1}, 8, 8), ElementKind::EQ1Rot, 5);
  const GpeProblem linear(space, Potential::zero(), 0.0);

  CHECK(energy(linear, space.make_field()) == 0.0);
  CHECK_THROWS_AS(eigenvalue(linear, space.make_field()), std::invalid_argument);

  const DiscreteField u = normalize(space, bubble_guess(space));
  // Without the quartic term the eigenvalue is twice the energy.
  CHECK(eigenvalue(linear, u) == doctest::Approx(2.0 * energy(linear, u)).epsilon(1e-13));

  // Rayleigh-quotient scaling invariance at beta = 0.
  DiscreteField cu = u;
  for (double& c : cu.coeffs)
    c *= -3.7;
  CHECK(eigenvalue(linear, cu) == doctest::Approx(eigenvalue(linear, u)).epsilon(1e-13));

  // beta > 0: lambda = 2E + (beta/2) int u^4.
  const GpeProblem nonlinear(space, Potential::sin_well(), 1.0);
  const double q4 = integrate_fourth_power(space, u);
  CHECK(eigenvalue(nonlinear, u) ==
        doctest::Approx(2.0 * energy(nonlinear, u) + 0.5 * q4).epsilon(1e-12));
}

TEST_CASE("flow at beta = 0 is inverse iteration on (K, M)")
{
  const FeSpace space(build_mesh(Domain{-1, 1, -1, 1}, 8, 8), ElementKind::EQ1Rot, 5);
  const GpeProblem problem(space, Potential::zero(), 0.0);

  // Dense generalized eigensolve oracle.
  const SparseMatrix K = assemble_stiffness(space);
  const SparseMatrix M = assemble_mass(space);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense(K), dense(M));
  REQUIRE(eig.info() == Eigen::Success);
  const double lambda1 = eig.eigenvalues()(0);

  FlowConfig flow;
  const GroundState gs = solve_ground_state(problem, flow);
  CHECK(gs.eigenvalue == doctest::Approx(lambda1).epsilon(1e-10));
  CHECK(gs.residual < flow.tolerance);

  // The Rayleigh quotient decreases monotonically along the iteration.
  for (std::size_t i = 1; i < gs.trajectory.size(); ++i)
    CHECK(gs.trajectory[i].eigenvalue <= gs.trajectory[i - 1].eigenvalue + 1e-12);

  // Fixed point: one step from the converged state stays put.
  const FlowStepResult step = flow_step(problem, gs.u, flow);
  CHECK(step.residual <= 1e-12);
  double diff = 0.0;
  for (std::size_t i = 0; i < gs.u.coeffs.size(); ++i)
    diff = std::max(diff, std::abs(std::abs(step.next.coeffs[i]) - std::abs(gs.u.coeffs[i])));
  CHECK(diff <= 1e-9);
}

TEST_CASE("one flow step decreases the energy from the bubble guess")
{
  const FeSpace space(build_mesh(Domain{-1, 1, -1, 1}, 8, 8), ElementKind::EQ1Rot, 5);
  const GpeProblem problem(space, Potential::sin_well(), 1.0);
  const DiscreteField u0 = bubble_guess(space);
  const FlowStepResult step = flow_step(problem, u0, FlowConfig{});
  CHECK(energy(problem, step.next) < energy(problem, u0));
}

TEST_CASE("sine-well ground state reproduces the coarse-level values")
{
  // Frozen discrete energies and eigenvalues of the beta = 1 sine-well
  // problem on [-1,1]^2 at N = 8 and 16.
  const Domain dom{-1, 1, -1, 1};
  FlowConfig flow;

  const FeSpace s8(build_mesh(dom, 8, 8), ElementKind::EQ1Rot, 5);
  const GpeProblem p8(s8, Potential::sin_well(), 1.0);
  const GroundState g8 = solve_ground_state(p8, flow);
  CHECK(std::abs(g8.energy - 2.795872) <= 5e-6);
  CHECK(std::abs(g8.eigenvalue - 5.872934) <= 5e-6);

  const FeSpace s16(build_mesh(dom, 16, 16), ElementKind::EQ1Rot, 5);
  const GpeProblem p16(s16, Potential::sin_well(), 1.0);
  const GroundState g16 = solve_ground_state(p16, flow);
  CHECK(std::abs(g16.energy - 2.818900) <= 5e-6);
  CHECK(std::abs(g16.eigenvalue - 5.919046) <= 5e-6);

  // Ground-state invariants.
  const SparseMatrix M = assemble_mass(s8);
  CHECK(std::abs(dot(g8.u.coeffs, M.multiply(g8.u.coeffs)) - 1.0) <= 1e-12);
  const double q4 = integrate_fourth_power(s8, g8.u);
  CHECK(std::abs(g8.eigenvalue - (2.0 * g8.energy + 0.5 * q4)) <= 1e-10);
  CHECK(integrate_value(s8, g8.u) >= 0.0);
  for (std::size_t i = 1; i < g8.trajectory.size(); ++i)
    CHECK(g8.trajectory[i].energy <= g8.trajectory[i - 1].energy + 1e-12);
}

TEST_CASE("gradient of the energy matches central differences")
{
  const FeSpace space(build_mesh(Domain{-1, 1, -1, 1}, 8, 8), ElementKind::EQ1Rot, 5);
  const GpeProblem problem(space, Potential::sin_well(), 1.0);
  const FormAssembler forms(space);
  const SparseMatrix M = forms.mass();
  SparseMatrix H = forms.stiffness();
  H.add_scaled(1.0, forms.potential(problem.V));

  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 3; ++trial)
  {
    DiscreteField u = space.make_field();
    for (double& c : u.coeffs)
      c = dist(rng);
    u = normalize(space, u);
    DiscreteField w = space.make_field();
    for (double& c : w.coeffs)
      c = dist(rng);
    axpy(-dot(w.coeffs, M.multiply(u.coeffs)), u.coeffs, w.coeffs);

    SparseMatrix A = H;
    A.add_scaled(problem.beta, forms.density(u));
    const double directional = dot(w.coeffs, A.multiply(u.coeffs));

    auto mismatch = [&](double eps) {
      DiscreteField up = u, um = u;
      axpy(eps, w.coeffs, up.coeffs);
      axpy(-eps, w.coeffs, um.coeffs);
      return std::abs((energy(problem, up) - energy(problem, um)) / (2.0 * eps) - directional);
    };
    const double m3 = mismatch(1e-3);
    const double m4 = mismatch(1e-4);
    CHECK(m4 < m3);
    CHECK(m3 / m4 > 30.0);
    CHECK(m3 / m4 < 300.0);
  }
}

TEST_CASE("non-convergence carries the trajectory")
{
  const FeSpace space(build_mesh(Domain{-1, 1, -1, 1}, 8, 8), ElementKind::EQ1Rot, 5);
  const GpeProblem problem(space, Potential::sin_well(), 1.0);
  FlowConfig flow;
  flow.max_iterations = 2;
  try
  {
    solve_ground_state(problem, flow);
    FAIL("expected NonConvergence");
  }
  catch (const NonConvergence& err)
  {
    CHECK(err.trajectory.size() == 3);  // residual evaluated at iterates 0..2
    CHECK(err.trajectory.front().residual > err.trajectory.back().residual);
  }
}

TEST_CASE("negative beta is rejected")
{
  const FeSpace space(build_mesh(Domain{-1, 1, -1, 1}, 2, 2), ElementKind::EQ1Rot, 5);
  CHECK_THROWS_AS(GpeProblem(space, Potential::zero(), -1.0), std::invalid_argument);
}

TEST_CASE("energy of the interpolated Laplace eigenfunction")
{
  // The first Dirichlet eigenpair of [-1,1]^2 is cos(pi x/2) cos(pi y/2)
  // with eigenvalue pi^2/2, so the normalized mode carries energy pi^2/4.
  const FeSpace space(build_mesh(Domain{-1, 1, -1, 1}, 64, 64), ElementKind::EQ1Rot, 5);
  const GpeProblem problem(space, Potential::zero(), 0.0);
  const DiscreteField mode = normalize(space, interpolate(space, [](double x, double y) {
    return std::cos(0.5 * M_PI * x) * std::cos(0.5 * M_PI * y);
  }));
  const double exact = M_PI * M_PI / 4.0;
  CHECK(std::abs(energy(problem, mode) - exact) <= 5e-3);  // O(h^2) at h = 1/32
}
