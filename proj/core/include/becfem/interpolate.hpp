#pragma once

#include <functional>

#include "becfem/elements.hpp"

namespace becfem
{

using ScalarFunction = std::function<double(double, double)>;

/// Canonical interpolation onto a space: edge and cell averages for
/// EQ1Rot, nodal values for Q2. Averages use the space's Gauss rules.
/// Constrained DOFs are dropped from the result.
DiscreteField interpolate(const FeSpace& space, const ScalarFunction& f);

}  // namespace becfem
