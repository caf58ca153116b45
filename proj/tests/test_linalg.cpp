#include <doctest.h>

#include <random>

#include "becfem/assembly.hpp"
#include "becfem/linalg.hpp"

using namespace becfem;

namespace
{

SparseMatrix diagonal_matrix(const std::vector<double>& d)
{
  SparseMatrix A;
  A.n = static_cast<Index>(d.size());
  A.row_offsets.resize(d.size() + 1);
  for (std::size_t i = 0; i <= d.size(); ++i)
    A.row_offsets[i] = static_cast<Index>(i);
  for (std::size_t i = 0; i < d.size(); ++i)
    A.cols.push_back(static_cast<Index>(i));
  A.vals = d;
  return A;
}

std::vector<double> random_vector(std::size_t n, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v)
    x = dist(rng);
  return v;
}

}  // namespace

TEST_CASE("identity and diagonal systems")
{
  const std::vector<double> b = random_vector(40, 1);
  const SparseMatrix I = diagonal_matrix(std::vector<double>(40, 1.0));
  for (SolverStrategy strategy : {SolverStrategy::DirectCholesky, SolverStrategy::PcgJacobi})
  {
    SolverConfig cfg;
    cfg.strategy = strategy;
    const std::vector<double> x = solve_spd(I, b, cfg);
    for (std::size_t i = 0; i < b.size(); ++i)
      CHECK(x[i] == doctest::Approx(b[i]).epsilon(1e-14));
  }
}

TEST_CASE("mass system reproduces constants")
{
  const FeSpace space(build_mesh(Domain{-1, 1, -1, 1}, 8, 8), ElementKind::EQ1Rot, 5);
  const SparseMatrix M = assemble_mass(space);
  const std::vector<double> one(M.n, 1.0);
  const std::vector<double> b = M.multiply(one);
  for (SolverStrategy strategy : {SolverStrategy::DirectCholesky, SolverStrategy::PcgJacobi})
  {
    SolverConfig cfg;
    cfg.strategy = strategy;
    const std::vector<double> x = solve_spd(M, b, cfg);
    for (double v : x)
      CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("direct and PCG agree on a stiffness-plus-mass system")
{
  const FeSpace space(build_mesh(Domain{-1, 1, -1, 1}, 64, 64), ElementKind::EQ1Rot, 5);
  SparseMatrix A = assemble_stiffness(space);
  A.add_scaled(1.0, assemble_mass(space));
  const std::vector<double> b = random_vector(A.n, 7);

  SolverConfig direct;
  direct.strategy = SolverStrategy::DirectCholesky;
  SolverConfig pcg;
  pcg.strategy = SolverStrategy::PcgJacobi;
  pcg.tolerance = 1e-13;

  const std::vector<double> xd = solve_spd(A, b, direct);
  const std::vector<double> xp = solve_spd(A, b, pcg);
  double scale = norm2(xd);
  double diff = 0.0;
  for (std::size_t i = 0; i < xd.size(); ++i)
    diff += (xd[i] - xp[i]) * (xd[i] - xp[i]);
  CHECK(std::sqrt(diff) <= 1e-10 * scale);

  // Residual contracts.
  for (const auto* x : {&xd, &xp})
  {
    std::vector<double> r = A.multiply(*x);
    for (std::size_t i = 0; i < r.size(); ++i)
      r[i] -= b[i];
    CHECK(norm2(r) <= 1e-12 * norm2(b));
  }
}

TEST_CASE("solves are bitwise reproducible")
{
  const FeSpace space(build_mesh(Domain{-1, 1, -1, 1}, 16, 16), ElementKind::Q2, 5);
  SparseMatrix A = assemble_stiffness(space);
  A.add_scaled(0.5, assemble_mass(space));
  const std::vector<double> b = random_vector(A.n, 11);
  for (SolverStrategy strategy : {SolverStrategy::DirectCholesky, SolverStrategy::PcgJacobi})
  {
    SolverConfig cfg;
    cfg.strategy = strategy;
    const std::vector<double> x1 = solve_spd(A, b, cfg);
    const std::vector<double> x2 = solve_spd(A, b, cfg);
    CHECK(x1 == x2);
  }
}

TEST_CASE("failure modes")
{
  const SparseMatrix bad = diagonal_matrix({1.0, -2.0, 3.0});
  SolverConfig direct;
  direct.strategy = SolverStrategy::DirectCholesky;
  CHECK_THROWS_AS(SpdSolver(bad, direct), NotPositiveDefinite);
  SolverConfig pcg;
  pcg.strategy = SolverStrategy::PcgJacobi;
  CHECK_THROWS_AS(SpdSolver(bad, pcg), NotPositiveDefinite);

  const FeSpace space(build_mesh(Domain{-1, 1, -1, 1}, 16, 16), ElementKind::EQ1Rot, 5);
  const SparseMatrix K = assemble_stiffness(space);
  SolverConfig strict;
  strict.strategy = SolverStrategy::PcgJacobi;
  strict.tolerance = 1e-13;
  strict.max_iterations = 2;
  try
  {
    solve_spd(K, random_vector(K.n, 13), strict);
    FAIL("expected SolverFailure");
  }
  catch (const SolverFailure& err)
  {
    CHECK(err.residual > 0.0);
    CHECK(err.residual < 1.0);
  }
}

TEST_CASE("default strategy switches on size")
{
  CHECK(SolverConfig::default_for(1000).strategy == SolverStrategy::DirectCholesky);
  CHECK(SolverConfig::default_for(300000).strategy == SolverStrategy::DirectCholesky);
  CHECK(SolverConfig::default_for(2500000).strategy == SolverStrategy::PcgJacobi);
}
