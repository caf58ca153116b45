#pragma once

#include <vector>

namespace becfem
{

/// Gauss-Legendre points and weights on [-1, 1]; exact for polynomials of
/// degree 2*npoints - 1.
struct GaussRule
{
  std::vector<double> points;
  std::vector<double> weights;

  int size() const { return static_cast<int>(points.size()); }
};

GaussRule gauss_legendre(int npoints);

/// Tensor Gauss rule on the reference cell [-1,1]^2. Weights sum to 4.
struct Quadrature
{
  int order = 0;  // points per axis
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> w;

  int size() const { return static_cast<int>(w.size()); }

  static Quadrature tensor(int order);
};

}  // namespace becfem
