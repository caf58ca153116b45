#pragma once

#include <cstdint>
#include <vector>

namespace becfem
{

/// Coefficient vector over the free (unconstrained) degrees of freedom of
/// one finite element space; constrained DOFs are implicitly zero. The
/// space_id ties a field to the FeSpace that created it.
struct DiscreteField
{
  std::uint64_t space_id = 0;
  std::vector<double> coeffs;
};

}  // namespace becfem
