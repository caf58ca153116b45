#include <doctest.h>

#include <cmath>

#include "becfem/quadrature.hpp"

using namespace becfem;

namespace
{

double monomial_integral_1d(int p)
{
  return p % 2 == 0 ? 2.0 / (p + 1) : 0.0;
}

}  // namespace

TEST_CASE("gauss rules integrate monomials exactly up to 2n-1")
{
  for (int n = 1; n <= 8; ++n)
  {
    const GaussRule rule = gauss_legendre(n);
    double wsum = 0.0;
    for (double w : rule.weights)
      wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-15));
    for (int p = 0; p <= 2 * n - 1; ++p)
    {
      double acc = 0.0;
      for (int q = 0; q < rule.size(); ++q)
        acc += rule.weights[q] * std::pow(rule.points[q], p);
      CHECK(std::abs(acc - monomial_integral_1d(p)) <= 1e-13);
    }
  }
}

TEST_CASE("order-5 rule matches the closed-form nodes")
{
  // Nodes of the five-point rule: 0, ±sqrt(5 - 2 sqrt(10/7))/3,
  // ±sqrt(5 + 2 sqrt(10/7))/3.
  const GaussRule rule = gauss_legendre(5);
  const double inner = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
  const double outer = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
  CHECK(rule.points[0] == doctest::Approx(-outer).epsilon(1e-14));
  CHECK(rule.points[1] == doctest::Approx(-inner).epsilon(1e-14));
  CHECK(rule.points[2] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(rule.points[2] == 0.0);
  CHECK(rule.weights[2] == doctest::Approx(128.0 / 225.0).epsilon(1e-14));
  const double w_inner = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
  const double w_outer = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
  CHECK(rule.weights[1] == doctest::Approx(w_inner).epsilon(1e-14));
  CHECK(rule.weights[0] == doctest::Approx(w_outer).epsilon(1e-14));
}

TEST_CASE("tensor rule on the reference cell")
{
  const Quadrature quad = Quadrature::tensor(5);
  CHECK(quad.size() == 25);
  double wsum = 0.0;
  for (double w : quad.w)
    wsum += w;
  CHECK(wsum == doctest::Approx(4.0).epsilon(1e-15));  // reference cell area

  // Exact for x^a y^b with a, b <= 9.
  for (int a = 0; a <= 9; ++a)
  {
    for (int b = 0; b <= 9; ++b)
    {
      double acc = 0.0;
      for (int q = 0; q < quad.size(); ++q)
        acc += quad.w[q] * std::pow(quad.x[q], a) * std::pow(quad.y[q], b);
      CHECK(std::abs(acc - monomial_integral_1d(a) * monomial_integral_1d(b)) <= 1e-13);
    }
  }
}
