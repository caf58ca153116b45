#include <benchmark/benchmark.h>

#include <random>

#include "becfem/assembly.hpp"
#include "becfem/linalg.hpp"

namespace
{

using namespace becfem;

struct System
{
  SparseMatrix A;
  std::vector<double> b;
};

System make_system(int n)
{
  const FeSpace space(build_mesh(Domain{-1, 1, -1, 1}, n, n), ElementKind::EQ1Rot, 5);
  System sys;
  sys.A = assemble_stiffness(space);
  sys.A.add_scaled(1.0, assemble_mass(space));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  sys.b.resize(sys.A.n);
  for (double& v : sys.b)
    v = dist(rng);
  return sys;
}

void BM_CholeskyFactorize(benchmark::State& state)
{
  const System sys = make_system(static_cast<int>(state.range(0)));
  SolverConfig cfg;
  cfg.strategy = SolverStrategy::DirectCholesky;
  SpdSolver solver(sys.A, cfg);
  for (auto _ : state)
    solver.update_values(sys.A);
}
BENCHMARK(BM_CholeskyFactorize)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_CholeskySolve(benchmark::State& state)
{
  const System sys = make_system(static_cast<int>(state.range(0)));
  SolverConfig cfg;
  cfg.strategy = SolverStrategy::DirectCholesky;
  const SpdSolver solver(sys.A, cfg);
  for (auto _ : state)
    benchmark::DoNotOptimize(solver.solve(sys.b).back());
}
BENCHMARK(BM_CholeskySolve)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_PcgJacobi(benchmark::State& state)
{
  const System sys = make_system(static_cast<int>(state.range(0)));
  SolverConfig cfg;
  cfg.strategy = SolverStrategy::PcgJacobi;
  cfg.tolerance = 1e-13;
  const SpdSolver solver(sys.A, cfg);
  for (auto _ : state)
    benchmark::DoNotOptimize(solver.solve(sys.b).back());
}
BENCHMARK(BM_PcgJacobi)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_SpMV(benchmark::State& state)
{
  const System sys = make_system(static_cast<int>(state.range(0)));
  std::vector<double> y(sys.b.size());
  for (auto _ : state)
  {
    sys.A.multiply(sys.b.data(), y.data());
    benchmark::DoNotOptimize(y.back());
  }
}
BENCHMARK(BM_SpMV)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

}  // namespace
