#include <benchmark/benchmark.h>

#include "becfem/gpe.hpp"

namespace
{

using namespace becfem;

void BM_FlowStep(benchmark::State& state)
{
  const FeSpace space(build_mesh(Domain{-1, 1, -1, 1}, static_cast<Index>(state.range(0)),
                                 static_cast<Index>(state.range(0))),
                      ElementKind::EQ1Rot, 5);
  const GpeProblem problem(space, Potential::sin_well(), 1.0);
  const DiscreteField u0 = bubble_guess(space);
  for (auto _ : state)
    benchmark::DoNotOptimize(flow_step(problem, u0, FlowConfig{}).residual);
}
BENCHMARK(BM_FlowStep)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_GroundState(benchmark::State& state)
{
  const FeSpace space(build_mesh(Domain{-1, 1, -1, 1}, static_cast<Index>(state.range(0)),
                                 static_cast<Index>(state.range(0))),
                      ElementKind::EQ1Rot, 5);
  const GpeProblem problem(space, Potential::sin_well(), 1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_ground_state(problem, FlowConfig{}).iterations);
}
BENCHMARK(BM_GroundState)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace
