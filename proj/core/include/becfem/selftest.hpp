#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace becfem
{

struct SelftestOptions
{
  std::uint64_t seed = 1;
  /// Negative-test hook: perturbs the EQ1Rot basis so the element
  /// identities (orthogonality first) must fail.
  bool corrupt_basis = false;
  /// Level of the conforming reference field the suites test against.
  int reference_level = 128;
};

struct SuiteResult
{
  std::string name;
  bool passed = false;
  double metric = 0.0;  // the quantity the suite bounds
  std::string detail;
};

struct SelftestReport
{
  std::vector<SuiteResult> suites;
  int failures() const;
};

/// Property suites over the element identities: quadrature exactness,
/// mixed-derivative vanishing, conforming-field zero checks, interpolation
/// orthogonality, the generalized patch test, the jump-seminorm bound and
/// the energy gradient check. Prints one line per suite.
SelftestReport run_selftest(const SelftestOptions& options, std::ostream& out);

}  // namespace becfem
