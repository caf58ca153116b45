#include <benchmark/benchmark.h>

#include <random>

#include "becfem/assembly.hpp"

namespace
{

using namespace becfem;

FeSpace make_space(ElementKind kind, int n)
{
  return FeSpace(build_mesh(Domain{-1, 1, -1, 1}, n, n), kind, 5);
}

DiscreteField random_field(const FeSpace& space)
{
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  DiscreteField f = space.make_field();
  for (double& c : f.coeffs)
    c = dist(rng);
  return f;
}

void BM_PatternBuild(benchmark::State& state)
{
  const FeSpace space = make_space(static_cast<ElementKind>(state.range(0)), 64);
  for (auto _ : state)
    benchmark::DoNotOptimize(FormAssembler(space).pattern().cols.size());
}
BENCHMARK(BM_PatternBuild)->Arg(0)->Arg(1);

void BM_Stiffness(benchmark::State& state)
{
  const FeSpace space = make_space(static_cast<ElementKind>(state.range(0)), 64);
  const FormAssembler forms(space);
  for (auto _ : state)
    benchmark::DoNotOptimize(forms.stiffness().vals.back());
}
BENCHMARK(BM_Stiffness)->Arg(0)->Arg(1);

void BM_Density(benchmark::State& state)
{
  const FeSpace space = make_space(static_cast<ElementKind>(state.range(0)), 64);
  const FormAssembler forms(space);
  const DiscreteField w = random_field(space);
  for (auto _ : state)
    benchmark::DoNotOptimize(forms.density(w).vals.back());
}
BENCHMARK(BM_Density)->Arg(0)->Arg(1);

void BM_QuarticIntegral(benchmark::State& state)
{
  const FeSpace space = make_space(ElementKind::EQ1Rot, static_cast<int>(state.range(0)));
  const DiscreteField w = random_field(space);
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate_fourth_power(space, w));
}
BENCHMARK(BM_QuarticIntegral)->Arg(64)->Arg(128);

}  // namespace
