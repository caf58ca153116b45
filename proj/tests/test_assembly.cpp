#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "becfem/assembly.hpp"
#include "becfem/interpolate.hpp"
#include "becfem/linalg.hpp"
#include "becfem/parallel.hpp"

using namespace becfem;

namespace
{

SpaceOptions all_free()
{
  SpaceOptions opts;
  opts.constrain_boundary = false;
  return opts;
}

Eigen::MatrixXd dense(const SparseMatrix& A)
{
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(A.n, A.n);
  for (Index r = 0; r < A.n; ++r)
    for (Index k = A.row_offsets[r]; k < A.row_offsets[r + 1]; ++k)
      M(r, A.cols[k]) = A.vals[k];
  return M;
}

DiscreteField random_field(const FeSpace& space, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  DiscreteField f = space.make_field();
  for (double& c : f.coeffs)
    c = dist(rng);
  return f;
}

}  // namespace

TEST_CASE("matrices are symmetric and share the pattern")
{
  const FeSpace space(build_mesh(Domain{-1, 1, -1, 1}, 6, 6), ElementKind::EQ1Rot, 5);
  const FormAssembler forms(space);
  const SparseMatrix K = forms.stiffness();
  const SparseMatrix M = forms.mass();
  const SparseMatrix AV = forms.potential(Potential::sin_well());
  const SparseMatrix D = forms.density(random_field(space, 3));

  CHECK(K.row_offsets == M.row_offsets);
  CHECK(K.cols == AV.cols);
  CHECK(K.cols == D.cols);

  for (const SparseMatrix* A : {&K, &M, &AV, &D})
  {
    for (Index r = 0; r < A->n; ++r)
      for (Index k = A->row_offsets[r]; k < A->row_offsets[r + 1]; ++k)
      {
        const std::ptrdiff_t t = A->find(A->cols[k], r);
        REQUIRE(t >= 0);
        CHECK(A->vals[k] == doctest::Approx(A->vals[t]).epsilon(1e-13));
      }
  }

  // Quadratic forms have the right signs.
  const DiscreteField v = random_field(space, 5);
  CHECK(dot(v.coeffs, K.multiply(v.coeffs)) >= 0.0);
  CHECK(dot(v.coeffs, M.multiply(v.coeffs)) > 0.0);
  CHECK(dot(v.coeffs, AV.multiply(v.coeffs)) >= 0.0);
  CHECK(dot(v.coeffs, D.multiply(v.coeffs)) >= 0.0);
}

TEST_CASE("stiffness matches the Dirichlet energy of affine interpolants")
{
  const FeSpace space(build_mesh(Domain{-1, 1, -1, 1}, 4, 4), ElementKind::EQ1Rot, 5,
                      all_free());
  const SparseMatrix K = assemble_stiffness(space);
  const DiscreteField v =
      interpolate(space, [](double x, double y) { return 1.0 + 2.0 * x - 3.0 * y; });
  // |grad|^2 = 4 + 9 over an area-4 domain.
  CHECK(dot(v.coeffs, K.multiply(v.coeffs)) == doctest::Approx(13.0 * 4.0).epsilon(1e-12));
}

TEST_CASE("single-cell stiffness and mass of the cell bubble")
{
  // On the one-cell mesh of [-1,1]^2 the only unconstrained DOF carries
  // the bubble 2 - 3/2(x^2+y^2): int |grad|^2 = 24, int phi^2 = 28/5.
  const FeSpace space(build_mesh(Domain{-1, 1, -1, 1}, 1, 1), ElementKind::EQ1Rot, 5);
  REQUIRE(space.free_dof_count() == 1);
  const SparseMatrix K = assemble_stiffness(space);
  const SparseMatrix M = assemble_mass(space);
  CHECK(K.vals[0] == doctest::Approx(24.0).epsilon(1e-13));
  CHECK(M.vals[0] == doctest::Approx(28.0 / 5.0).epsilon(1e-13));
}

TEST_CASE("mass integrates constants and is SPD")
{
  for (int n : {4, 8, 16})
  {
    const FeSpace space(build_mesh(Domain{-1, 1, -1, 1}, n, n), ElementKind::EQ1Rot, 5,
                        all_free());
    const SparseMatrix M = assemble_mass(space);
    const DiscreteField one = interpolate(space, [](double, double) { return 1.0; });
    CHECK(dot(one.coeffs, M.multiply(one.coeffs)) == doctest::Approx(4.0).epsilon(1e-12));

    SolverConfig cfg;
    cfg.strategy = SolverStrategy::DirectCholesky;
    CHECK_NOTHROW(SpdSolver(M, cfg));  // Cholesky succeeds: SPD
  }
}

TEST_CASE("potential-weighted mass")
{
  const FeSpace space(build_mesh(Domain{-1, 1, -1, 1}, 8, 8), ElementKind::EQ1Rot, 5,
                      all_free());
  const FormAssembler forms(space);

  const SparseMatrix Z = forms.potential(Potential::zero());
  for (double v : Z.vals)
    CHECK(v == 0.0);

  const SparseMatrix C = forms.potential(Potential::custom([](double, double) { return 2.5; }));
  const SparseMatrix M = forms.mass();
  for (std::size_t k = 0; k < C.vals.size(); ++k)
    CHECK(C.vals[k] == doctest::Approx(2.5 * M.vals[k]).epsilon(1e-13));

  // int V over [-1,1]^2 for the sine well: 4 - 1 = 3.
  const SparseMatrix AV = forms.potential(Potential::sin_well());
  const DiscreteField one = interpolate(space, [](double, double) { return 1.0; });
  CHECK(dot(one.coeffs, AV.multiply(one.coeffs)) == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("density-weighted mass")
{
  const FeSpace space(build_mesh(Domain{-1, 1, -1, 1}, 8, 8), ElementKind::EQ1Rot, 5,
                      all_free());
  const FormAssembler forms(space);

  const DiscreteField zero = space.make_field();
  const SparseMatrix Dz = forms.density(zero);
  for (double v : Dz.vals)
    CHECK(v == 0.0);

  const DiscreteField one = interpolate(space, [](double, double) { return 1.0; });
  const SparseMatrix D1 = forms.density(one);
  const SparseMatrix M = forms.mass();
  for (std::size_t k = 0; k < D1.vals.size(); ++k)
    CHECK(D1.vals[k] == doctest::Approx(M.vals[k]).epsilon(1e-13));

  // Two independent quadrature routes to int u^4.
  const DiscreteField u = random_field(space, 17);
  const SparseMatrix Du = forms.density(u);
  const double quartic_matrix = dot(u.coeffs, Du.multiply(u.coeffs));
  const double quartic_direct = integrate_fourth_power(space, u);
  CHECK(quartic_matrix == doctest::Approx(quartic_direct).epsilon(1e-12));

  const FeSpace other(build_mesh(Domain{-1, 1, -1, 1}, 4, 4), ElementKind::EQ1Rot, 5);
  CHECK_THROWS_AS(forms.density(other.make_field()), std::invalid_argument);
}

TEST_CASE("smallest Laplace eigenvalue of EQ1Rot sits below pi^2/2")
{
  // Dense generalized eigensolve as the oracle on the small mesh.
  const FeSpace space(build_mesh(Domain{-1, 1, -1, 1}, 8, 8), ElementKind::EQ1Rot, 5);
  const SparseMatrix K = assemble_stiffness(space);
  const SparseMatrix M = assemble_mass(space);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense(K), dense(M));
  REQUIRE(eig.info() == Eigen::Success);
  const double lambda1 = eig.eigenvalues()(0);
  CHECK(lambda1 < M_PI * M_PI / 2.0);
  CHECK(lambda1 == doctest::Approx(M_PI * M_PI / 2.0).epsilon(0.02));
}

TEST_CASE("Galerkin consistency of the assembled operator")
{
  const FeSpace space(build_mesh(Domain{-1, 1, -1, 1}, 8, 8), ElementKind::EQ1Rot, 5);
  const FormAssembler forms(space);
  const Potential V = Potential::sin_well();
  const double beta = 1.3;
  const DiscreteField u = random_field(space, 23);

  SparseMatrix A = forms.stiffness();
  A.add_scaled(1.0, forms.potential(V));
  A.add_scaled(beta, forms.density(u));
  const double operator_value = dot(u.coeffs, A.multiply(u.coeffs));

  // Direct quadrature of |grad u|^2 + V u^2 + beta u^4.
  const int nl = space.local_size();
  const double jac = 0.25 * space.mesh().hx * space.mesh().hy;
  const double sx = 2.0 / space.mesh().hx, sy = 2.0 / space.mesh().hy;
  double direct = 0.0;
  std::vector<double> local(nl);
  for (Index c = 0; c < space.mesh().cell_count(); ++c)
  {
    space.gather(u, c, local);
    for (int q = 0; q < space.quadrature().size(); ++q)
    {
      double val = 0.0, gx = 0.0, gy = 0.0;
      for (int i = 0; i < nl; ++i)
      {
        val += local[i] * space.tab_values()[static_cast<std::size_t>(q) * nl + i];
        gx += local[i] * space.tab_dx()[static_cast<std::size_t>(q) * nl + i];
        gy += local[i] * space.tab_dy()[static_cast<std::size_t>(q) * nl + i];
      }
      gx *= sx;
      gy *= sy;
      const auto p = space.mesh().map_to_physical(c, space.quadrature().x[q],
                                                  space.quadrature().y[q]);
      direct += jac * space.quadrature().w[q] *
                (gx * gx + gy * gy + V(p[0], p[1]) * val * val + beta * val * val * val * val);
    }
  }
  CHECK(operator_value == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("assembly is independent of the worker count")
{
  const FeSpace space(build_mesh(Domain{-1, 1, -1, 1}, 16, 16), ElementKind::Q2, 5);
  const FormAssembler forms(space);
  const DiscreteField u = random_field(space, 29);

  set_worker_count(1);
  const SparseMatrix D1 = forms.density(u);
  const SparseMatrix P1 = forms.potential(Potential::harmonic_stirrer());
  set_worker_count(4);
  const SparseMatrix D4 = forms.density(u);
  const SparseMatrix P4 = forms.potential(Potential::harmonic_stirrer());
  set_worker_count(0);  // back to the default

  CHECK(D1.vals == D4.vals);  // bitwise
  CHECK(P1.vals == P4.vals);
}
