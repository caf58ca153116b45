#include "becfem/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace becfem
{

Potential Potential::custom(std::function<double(double, double)> fn)
{
  Potential p(Kind::Custom);
  p.fn_ = std::move(fn);
  return p;
}

Potential Potential::preset(Kind kind)
{
  if (kind == Kind::Custom)
    throw std::invalid_argument("Potential::preset: Custom needs a callable");
  return Potential(kind);
}

double Potential::operator()(double x, double y) const
{
  switch (kind_)
  {
    case Kind::Zero:
      return 0.0;
    case Kind::HarmonicAniso:
      return 16.0 * x * x + y * y;
    case Kind::SinWell:
    {
      const double sx = std::sin(0.5 * M_PI * (x + 1.0));
      const double sy = std::sin(0.5 * M_PI * (y + 1.0));
      return 1.0 - sx * sx * sy * sy;
    }
    case Kind::HarmonicStirrer:
      return x * x + y * y + 8.0 * std::exp(-(x - 1.0) * (x - 1.0) - y * y);
    case Kind::Custom:
      return fn_(x, y);
  }
  return 0.0;
}

const char* Potential::name(Kind kind)
{
  switch (kind)
  {
    case Kind::Zero: return "zero";
    case Kind::HarmonicAniso: return "harmonic_aniso";
    case Kind::SinWell: return "sin_well";
    case Kind::HarmonicStirrer: return "harmonic_stirrer";
    case Kind::Custom: return "custom";
  }
  return "zero";
}

}  // namespace becfem
