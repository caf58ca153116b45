#include "becfem/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace becfem
{

namespace
{

// Legendre polynomial P_n and derivative at x by the three-term recurrence.
std::pair<double, double> legendre(int n, double x)
{
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k)
  {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

}  // namespace

GaussRule gauss_legendre(int npoints)
{
  if (npoints < 1)
    throw std::invalid_argument("gauss_legendre: need at least one point");

  GaussRule rule;
  rule.points.resize(npoints);
  rule.weights.resize(npoints);

  const int half = (npoints + 1) / 2;
  for (int i = 0; i < half; ++i)
  {
    // Chebyshev-based initial guess, then Newton on P_n.
    double x = std::cos(M_PI * (i + 0.75) / (npoints + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it)
    {
      const auto [p, d] = legendre(npoints, x);
      dp = d;
      const double dx = p / d;
      x -= dx;
      if (std::abs(dx) < 1e-16)
      {
        dp = legendre(npoints, x).second;
        break;
      }
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points[i] = -x;
    rule.weights[i] = w;
    rule.points[npoints - 1 - i] = x;
    rule.weights[npoints - 1 - i] = w;
  }
  if (npoints % 2 == 1)
  {
    rule.points[npoints / 2] = 0.0;
    const double dp = legendre(npoints, 0.0).second;
    rule.weights[npoints / 2] = 2.0 / (dp * dp);
  }
  return rule;
}

Quadrature Quadrature::tensor(int order)
{
  const GaussRule rule = gauss_legendre(order);
  Quadrature quad;
  quad.order = order;
  quad.x.reserve(static_cast<std::size_t>(order) * order);
  quad.y.reserve(static_cast<std::size_t>(order) * order);
  quad.w.reserve(static_cast<std::size_t>(order) * order);
  for (int j = 0; j < order; ++j)
  {
    for (int i = 0; i < order; ++i)
    {
      quad.x.push_back(rule.points[i]);
      quad.y.push_back(rule.points[j]);
      quad.w.push_back(rule.weights[i] * rule.weights[j]);
    }
  }
  return quad;
}

}  // namespace becfem
