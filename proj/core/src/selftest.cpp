#include "becfem/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "becfem/analysis.hpp"
#include "becfem/experiment.hpp"

namespace becfem
{

int SelftestReport::failures() const
{
  int n = 0;
  for (const auto& s : suites)
    if (!s.passed)
      ++n;
  return n;
}

namespace
{

DiscreteField random_field(const FeSpace& space, std::mt19937_64& rng)
{
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  DiscreteField f = space.make_field();
  for (double& c : f.coeffs)
    c = dist(rng);
  return f;
}

struct SelftestContext
{
  SelftestOptions options;
  std::mt19937_64 rng;
  Domain domain{-1.0, 1.0, -1.0, 1.0};

  // Conforming reference ground state (sine-well problem, beta = 1).
  std::optional<FeSpace> ref_space;
  GroundState ref_state;

  SpaceOptions eq1rot_options() const
  {
    SpaceOptions opts;
    opts.basis_perturbation = options.corrupt_basis ? 1e-3 : 0.0;
    return opts;
  }

  FeSpace eq1rot_space(int n) const
  {
    return FeSpace(build_mesh(domain, n, n), ElementKind::EQ1Rot, 5, eq1rot_options());
  }

  void solve_reference()
  {
    std::vector<int> chain{options.reference_level};
    while (chain.front() > 32)
      chain.insert(chain.begin(), chain.front() / 2);
    std::optional<FeSpace> prev_space;
    DiscreteField prev;
    for (int level : chain)
    {
      FeSpace space(build_mesh(domain, level, level), ElementKind::Q2, 5);
      const GpeProblem problem(space, Potential::sin_well(), 1.0);
      FlowConfig flow;
      GroundState state;
      if (prev.coeffs.empty())
      {
        state = solve_ground_state(problem, flow);
      }
      else
      {
        const FieldEvaluator eval(*prev_space, prev);
        const DiscreteField guess = interpolate(space, eval.as_function());
        flow.guess = InitialGuess::Given;
        state = solve_ground_state(problem, flow, &guess);
      }
      prev = state.u;
      prev_space.emplace(std::move(space));
      ref_state = std::move(state);
    }
    ref_space = std::move(prev_space);
  }
};

SuiteResult quadrature_suite()
{
  SuiteResult result{"quadrature-exactness", false, 0.0, {}};
  const Quadrature quad = Quadrature::tensor(5);
  double worst = 0.0;
  double wsum = 0.0;
  for (double w : quad.w)
    wsum += w;
  worst = std::abs(wsum - 4.0);
  auto exact_1d = [](int p) { return p % 2 == 0 ? 2.0 / (p + 1) : 0.0; };
  for (int a = 0; a <= 9; ++a)
  {
    for (int b = 0; b <= 9; ++b)
    {
      double acc = 0.0;
      for (int q = 0; q < quad.size(); ++q)
        acc += quad.w[q] * std::pow(quad.x[q], a) * std::pow(quad.y[q], b);
      worst = std::max(worst, std::abs(acc - exact_1d(a) * exact_1d(b)));
    }
  }
  result.metric = worst;
  result.passed = worst <= 1e-13;
  result.detail = "max deviation over monomials of degree <= 9";
  return result;
}

SuiteResult mixed_derivative_suite(SelftestContext& ctx)
{
  SuiteResult result{"mixed-derivative", false, 0.0, {}};
  const FeSpace space = ctx.eq1rot_space(8);
  double worst = 0.0;
  for (int k = 0; k < 10; ++k)
  {
    const DiscreteField v = random_field(space, ctx.rng);
    worst = std::max(worst, mixed_derivative_check(space, FeCellField(space, v)));
  }
  // A biquadratic field must register: Q2 carries the xy monomial.
  const FeSpace q2(build_mesh(ctx.domain, 8, 8), ElementKind::Q2, 5);
  const DiscreteField w = random_field(q2, ctx.rng);
  const double q2_mixed = mixed_derivative_check(space, FeCellField(q2, w));
  result.metric = worst;
  result.passed = worst <= 1e-13 && q2_mixed > 1e-3;
  result.detail = "EQ1Rot max |dxdy|; Q2 probe " + format_scientific(q2_mixed);
  return result;
}

SuiteResult conforming_zero_suite(SelftestContext& ctx)
{
  SuiteResult result{"conforming-zero", false, 0.0, {}};
  const FeSpace q2(build_mesh(ctx.domain, 8, 8), ElementKind::Q2, 5);
  DiscreteField v = random_field(q2, ctx.rng);
  scale(1.0 / broken_h1_norm(q2, v), v.coeffs);
  const FeCellField field(q2, v);

  VectorField g;
  g.x = [](double x, double y) { return std::sin(x + 0.3 * y); };
  g.y = [](double x, double y) { return std::cos(0.5 * x - y); };
  g.divergence = [](double x, double y) {
    return std::cos(x + 0.3 * y) + std::sin(0.5 * x - y);
  };

  const double jump = jump_seminorm(q2, field);
  const double volume = std::abs(consistency_functional(q2, field, g));
  const double faces = std::abs(consistency_functional_faces(q2, field, g));

  // Constant flux against an EQ1Rot field: mean-zero jumps annihilate it.
  const FeSpace nc = ctx.eq1rot_space(8);
  const DiscreteField vh = random_field(nc, ctx.rng);
  VectorField constant;
  constant.x = [](double, double) { return 0.7; };
  constant.y = [](double, double) { return -0.4; };
  constant.divergence = [](double, double) { return 0.0; };
  const double constant_flux =
      std::abs(consistency_functional_faces(nc, FeCellField(nc, vh), constant));

  result.metric = std::max({jump, volume, faces, constant_flux});
  result.passed = result.metric <= 1e-11;
  result.detail = "jump " + format_scientific(jump) + ", volume " + format_scientific(volume) +
                  ", faces " + format_scientific(faces);
  return result;
}

SuiteResult orthogonality_suite(SelftestContext& ctx)
{
  SuiteResult result{"orthogonality", false, 0.0, {}};
  const double ref_h1 = broken_h1_seminorm(*ctx.ref_space, ctx.ref_state.u);
  double worst = 0.0;
  for (int n : {4, 8})
  {
    const FeSpace space = ctx.eq1rot_space(n);
    const DiscreteField pi_h = interpolate_pi_h(space, *ctx.ref_space, ctx.ref_state.u);
    for (int k = 0; k < 20; ++k)
    {
      const DiscreteField v = random_field(space, ctx.rng);
      const double defect =
          std::abs(nested_gradient_defect(*ctx.ref_space, ctx.ref_state.u, space, pi_h, v));
      worst = std::max(worst, defect / (ref_h1 * broken_h1_seminorm(space, v)));
    }
  }
  result.metric = worst;
  result.passed = worst <= 1e-10;
  result.detail = "max |(grad(u - Pi_h u), grad v_h)| / (|u|_1 |v_h|_1)";
  return result;
}

SuiteResult patch_test_suite(SelftestContext& ctx)
{
  SuiteResult result{"patch-test", false, 0.0, {}};
  const FieldEvaluator ref_eval(*ctx.ref_space, ctx.ref_state.u);
  const VectorField g = gradient_field(ref_eval);
  const double h1 = broken_h1_seminorm(*ctx.ref_space, ctx.ref_state.u);
  const double h2 = hessian_seminorm(*ctx.ref_space, ctx.ref_state.u);
  const double g_h1norm = std::sqrt(h1 * h1 + h2 * h2);

  std::vector<double> ratios;
  for (int n : {8, 16, 32, 64})
  {
    const FeSpace space = ctx.eq1rot_space(n);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k)
    {
      const DiscreteField v = random_field(space, ctx.rng);
      const double value =
          std::abs(consistency_functional_faces(space, FeCellField(space, v), g));
      worst = std::max(worst, value / (space.mesh().h() * g_h1norm * broken_h1_norm(space, v)));
    }
    ratios.push_back(worst);
  }
  bool bounded = true;
  for (std::size_t i = 1; i < ratios.size(); ++i)
    if (ratios[i] > 1.3 * ratios[i - 1])
      bounded = false;
  result.metric = *std::max_element(ratios.begin(), ratios.end());
  result.passed = bounded && std::isfinite(result.metric);
  result.detail = "ratios";
  for (double r : ratios)
    result.detail += " " + format_number(r);
  return result;
}

SuiteResult jump_bound_suite(SelftestContext& ctx)
{
  SuiteResult result{"jump-bound", false, 0.0, {}};
  std::vector<double> ratios;
  for (int n : {8, 16, 32, 64})
  {
    const FeSpace space = ctx.eq1rot_space(n);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k)
    {
      const DiscreteField v = random_field(space, ctx.rng);
      worst = std::max(worst,
                       jump_seminorm(space, FeCellField(space, v)) / broken_h1_norm(space, v));
    }
    ratios.push_back(worst);
  }
  bool bounded = true;
  for (std::size_t i = 1; i < ratios.size(); ++i)
    if (ratios[i] > 1.3 * ratios[i - 1])
      bounded = false;
  result.metric = *std::max_element(ratios.begin(), ratios.end());
  result.passed = bounded && std::isfinite(result.metric);
  result.detail = "ratios";
  for (double r : ratios)
    result.detail += " " + format_number(r);
  return result;
}

SuiteResult gradient_check_suite(SelftestContext& ctx)
{
  SuiteResult result{"gradient-check", false, 0.0, {}};
  const FeSpace space = ctx.eq1rot_space(8);
  const GpeProblem problem(space, Potential::sin_well(), 1.0);
  const FormAssembler forms(space);
  const SparseMatrix M = forms.mass();
  SparseMatrix H = forms.stiffness();
  H.add_scaled(1.0, forms.potential(problem.V));

  std::vector<double> ratios;
  bool shrinking = true;
  for (int k = 0; k < 5; ++k)
  {
    const DiscreteField u = normalize(space, random_field(space, ctx.rng));
    DiscreteField w = random_field(space, ctx.rng);
    const std::vector<double> Mu = M.multiply(u.coeffs);
    axpy(-dot(w.coeffs, Mu), u.coeffs, w.coeffs);  // tangent: u'Mw = 0

    SparseMatrix A = H;
    A.add_scaled(problem.beta, forms.density(u));
    const double directional = dot(w.coeffs, A.multiply(u.coeffs));

    auto mismatch = [&](double eps) {
      DiscreteField up = u, um = u;
      axpy(eps, w.coeffs, up.coeffs);
      axpy(-eps, w.coeffs, um.coeffs);
      const double central = (energy(problem, up) - energy(problem, um)) / (2.0 * eps);
      return std::abs(central - directional);
    };
    const double m3 = mismatch(1e-3);
    const double m4 = mismatch(1e-4);
    if (!(m4 < m3))
      shrinking = false;
    ratios.push_back(m3 / m4);
  }
  std::sort(ratios.begin(), ratios.end());
  const double median = ratios[ratios.size() / 2];
  result.metric = median;
  result.passed = shrinking && median > 30.0 && median < 300.0;
  result.detail = "median mismatch ratio for eps 1e-3 vs 1e-4 (second order ~ 100)";
  return result;
}

}  // namespace

SelftestReport run_selftest(const SelftestOptions& options, std::ostream& out)
{
  SelftestContext ctx;
  ctx.options = options;
  ctx.rng.seed(options.seed);
  ctx.solve_reference();

  SelftestReport report;
  report.suites.push_back(quadrature_suite());
  report.suites.push_back(mixed_derivative_suite(ctx));
  report.suites.push_back(conforming_zero_suite(ctx));
  report.suites.push_back(orthogonality_suite(ctx));
  report.suites.push_back(patch_test_suite(ctx));
  report.suites.push_back(jump_bound_suite(ctx));
  report.suites.push_back(gradient_check_suite(ctx));

  for (const auto& s : report.suites)
    out << s.name << ": " << (s.passed ? "PASS" : "FAIL") << "  (metric "
        << format_scientific(s.metric) << (s.detail.empty() ? "" : "; " + s.detail) << ")\n";
  out << "selftest: " << (report.failures() == 0 ? "all suites passed" : "FAILURES PRESENT")
      << "\n";
  return report;
}

}  // namespace becfem
