// becfem command line: ground-state convergence studies for the
// Gross-Pitaevskii energy functional with EQ1Rot and Q2 elements.

#include <iostream>

#include <CLI11.hpp>

#include "becfem/experiment.hpp"
#include "becfem/selftest.hpp"

namespace
{

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitSelftest = 4;

std::vector<int> dyadic_levels(int from, int to)
{
  std::vector<int> levels;
  for (int n = from; n <= to; n *= 2)
    levels.push_back(n);
  return levels;
}

int run_and_write(const becfem::ExperimentConfig& config)
{
  const becfem::ExperimentReport report = becfem::run_experiment(config);
  becfem::write_report(report);
  std::cout << "wrote report to " << config.output_dir << "/\n";
  if (report.any_failure)
  {
    std::cerr << "becfem: some rows did not converge; see the report comments\n";
    return kExitSolver;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Finite element ground states of Bose-Einstein condensates"};
  app.require_subcommand(1);

  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", config_path, "Path to the experiment config")->required();

  std::uint64_t seed = 1;
  bool corrupt_basis = false;
  CLI::App* selftest = app.add_subcommand("selftest", "Run the element property suites");
  selftest->add_option("--seed", seed, "Seed for the randomized suites");
  selftest->add_flag("--corrupt-basis", corrupt_basis,
                     "Debug hook: perturb the EQ1Rot basis (suites must fail)");

  int max_level_t1 = 128;
  CLI::App* table1 = app.add_subcommand(
      "table1", "Field-error convergence table (sine-well study, Q2 reference)");
  table1->add_option("--max-level", max_level_t1, "Finest measured level")
      ->check(CLI::Range(8, 512));

  int max_level_t2 = 256;
  CLI::App* table2 =
      app.add_subcommand("table2", "Energy and eigenvalue convergence table (sine-well study)");
  table2->add_option("--max-level", max_level_t2, "Finest measured level")
      ->check(CLI::Range(8, 1024));

  std::string lb_example = "6.3";
  CLI::App* lowerbound =
      app.add_subcommand("lowerbound", "Lower-bound study against a fine conforming solve");
  lowerbound->add_option("--example", lb_example, "Which study: 6.3 or 6.4")
      ->check(CLI::IsMember({"6.3", "6.4"}));

  CLI11_PARSE(app, argc, argv);

  try
  {
    if (*run)
    {
      return run_and_write(becfem::ExperimentConfig::parse_file(config_path));
    }
    if (*selftest)
    {
      becfem::SelftestOptions options;
      options.seed = seed;
      options.corrupt_basis = corrupt_basis;
      const becfem::SelftestReport report = becfem::run_selftest(options, std::cout);
      return report.failures() == 0 ? kExitOk : kExitSelftest;
    }
    if (*table1)
    {
      becfem::ExperimentConfig config =
          becfem::ExperimentConfig::preset(becfem::ExampleId::TableConv);
      config.levels = dyadic_levels(8, max_level_t1);
      config.reference_level = std::max(512, 4 * max_level_t1);
      config.output_dir = "out/table1";
      return run_and_write(config);
    }
    if (*table2)
    {
      becfem::ExperimentConfig config =
          becfem::ExperimentConfig::preset(becfem::ExampleId::TableConv);
      config.levels = dyadic_levels(8, max_level_t2);
      config.output_dir = "out/table2";
      return run_and_write(config);
    }
    if (*lowerbound)
    {
      becfem::ExperimentConfig config = becfem::ExperimentConfig::preset(
          lb_example == "6.3" ? becfem::ExampleId::ElementCompare : becfem::ExampleId::Stirrer);
      config.levels = dyadic_levels(8, 256);
      config.reference_level = 512;
      config.output_dir = lb_example == "6.3" ? "out/lowerbound63" : "out/lowerbound64";
      const becfem::ExperimentReport report = becfem::run_experiment(config);
      becfem::write_report(report);
      for (const auto& study : report.runs)
      {
        if (!study.has_lower_bound)
          continue;
        std::cout << "reference energy (q2, N=" << config.reference_level
                  << "): " << becfem::format_number(report.reference_energy) << "\n";
        std::size_t k = 0;
        for (const auto& row : study.rows)
        {
          if (!row.converged)
            continue;
          std::cout << "N=" << row.level << "  E=" << becfem::format_number(row.energy)
                    << "  below=" << (study.lower_bound.below[k] ? "yes" : "no")
                    << "  margin=" << becfem::format_scientific(study.lower_bound.margins[k])
                    << "\n";
          ++k;
        }
        if (study.lower_bound.threshold_index >= 0)
          std::cout << "lower bound holds from N="
                    << study.rows[study.lower_bound.threshold_index].level << " onward\n";
        else
          std::cout << "lower bound not yet reached on these levels\n";
      }
      return report.any_failure ? kExitSolver : kExitOk;
    }
  }
  catch (const becfem::ConfigError& err)
  {
    std::cerr << "becfem: " << err.what() << "\n";
    return kExitConfig;
  }
  catch (const becfem::NonConvergence& err)
  {
    std::cerr << "becfem: " << err.what() << "\n";
    return kExitSolver;
  }
  catch (const becfem::SolverFailure& err)
  {
    std::cerr << "becfem: " << err.what() << " (residual " << err.residual << ")\n";
    return kExitSolver;
  }
  catch (const std::exception& err)
  {
    std::cerr << "becfem: " << err.what() << "\n";
    return 1;
  }
  return kExitOk;
}
