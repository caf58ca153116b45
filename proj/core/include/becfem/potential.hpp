#pragma once

#include <functional>
#include <string>

namespace becfem
{

/// Trapping potential V >= 0. The presets cover the study cases; Custom
/// accepts any nonnegative callable.
class Potential
{
public:
  enum class Kind
  {
    Zero,
    HarmonicAniso,    // 16 x^2 + y^2
    SinWell,          // 1 - sin^2(pi (x+1)/2) sin^2(pi (y+1)/2)
    HarmonicStirrer,  // x^2 + y^2 + 8 exp(-(x-1)^2 - y^2)
    Custom
  };

  Potential() : kind_(Kind::Zero) {}

  static Potential zero() { return Potential(Kind::Zero); }
  static Potential harmonic_aniso() { return Potential(Kind::HarmonicAniso); }
  static Potential sin_well() { return Potential(Kind::SinWell); }
  static Potential harmonic_stirrer() { return Potential(Kind::HarmonicStirrer); }
  static Potential custom(std::function<double(double, double)> fn);
  static Potential preset(Kind kind);

  Kind kind() const { return kind_; }
  double operator()(double x, double y) const;

  static const char* name(Kind kind);

private:
  explicit Potential(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::function<double(double, double)> fn_;
};

}  // namespace becfem
