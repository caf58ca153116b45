#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "becfem/analysis.hpp"

namespace becfem
{

enum class ExampleId
{
  GsMorphology,    // [-4,4]x[-8,8], beta 400, anisotropic harmonic trap
  TableConv,       // [-1,1]^2, beta 1, sine-well potential
  ElementCompare,  // [-1,1]^2, beta 10, sine-well potential
  Stirrer,         // [-8,8]^2, beta 400, harmonic trap plus stirrer
  Custom
};

struct ConfigError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

/// Declarative description of one study: which elements, which dyadic
/// levels, and an optional finer reference for field errors.
struct ExperimentConfig
{
  ExampleId example = ExampleId::TableConv;
  Domain domain;
  Potential::Kind potential = Potential::Kind::SinWell;
  double beta = 1.0;
  std::vector<ElementKind> elements{ElementKind::EQ1Rot};
  std::vector<int> levels;
  int reference_level = 0;  // 0: no reference solve
  ElementKind reference_element = ElementKind::Q2;
  FlowConfig flow;
  std::string output_dir = "out";
  std::uint64_t seed = 1;

  bool wants_errors() const { return reference_level > 0; }
  /// Cells per axis for level N (tall domains get 2N rows to keep cells square).
  std::pair<Index, Index> grid_for(int level) const;

  Domain effective_domain() const;
  Potential make_potential() const;

  static ExperimentConfig parse_file(const std::filesystem::path& path);
  static ExperimentConfig parse_stream(std::istream& in, const std::string& origin);
  static ExperimentConfig preset(ExampleId example);
  void validate() const;
};

/// All rows of one element kind, in level order.
struct RunResult
{
  ElementKind element;
  std::vector<ErrorRecord> rows;
  std::vector<std::vector<IterationRecord>> trajectories;
  std::vector<DiscreteField> states;  // empty coeffs for failed rows
  LowerBoundReport lower_bound;       // vs the reference energy, if present
  bool has_lower_bound = false;
};

struct ExperimentReport
{
  ExperimentConfig config;
  std::vector<RunResult> runs;
  bool has_reference = false;
  double reference_energy = 0.0;
  double reference_eigenvalue = 0.0;
  /// || d2 u_ref / dx dy ||_{L2}: nonzero because the ground state is not
  /// additively separable; the quantity behind the saturation bound.
  double reference_mixed_derivative_norm = 0.0;
  int reference_iterations = 0;
  double reference_cpu_seconds = 0.0;
  bool any_failure = false;
};

/// Solve every (element, level) row of the config, cascading initial
/// guesses through the levels, then measure errors against the reference
/// when one is configured. Does not touch the filesystem.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Write table_errors.csv (reference runs only), table_energy.csv,
/// convergence.csv, field_N<k>.csv and lowerbound.csv under
/// config.output_dir. Bodies are deterministic; comment lines carry the
/// config echo.
void write_report(const ExperimentReport& report);

// CSV number formatting: shortest round-trip representations.
std::string format_number(double v);
std::string format_scientific(double v);

}  // namespace becfem
