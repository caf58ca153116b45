#include <doctest.h>

#include <fstream>
#include <sstream>

#include "becfem/experiment.hpp"
#include "becfem/parallel.hpp"
#include "becfem/selftest.hpp"

using namespace becfem;

namespace
{

ExperimentConfig parse(const std::string& text)
{
  std::istringstream in(text);
  return ExperimentConfig::parse_stream(in, "test");
}

std::string read_body(const std::filesystem::path& p)
{
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::string body, line;
  while (std::getline(in, line))
    if (!line.empty() && line.front() != '#')
      body += line + "\n";
  return body;
}

}  // namespace

TEST_CASE("config parsing")
{
  const ExperimentConfig cfg = parse(R"(
# sine-well study
[experiment]
example = table_conv
elements = eq1rot,q2
levels = 8, 16, 32
reference_level = 128
reference_element = q2
output_dir = out/test
seed = 3

[flow]
step = 1.0
tolerance = 1e-12
max_iterations = 400
)");
  CHECK(cfg.example == ExampleId::TableConv);
  CHECK(cfg.elements.size() == 2);
  CHECK(cfg.levels == std::vector<int>{8, 16, 32});
  CHECK(cfg.reference_level == 128);
  CHECK(cfg.beta == 1.0);
  CHECK(cfg.flow.max_iterations == 400);
  CHECK(cfg.seed == 3);

  const auto [nx, ny] = cfg.grid_for(8);
  CHECK(nx == 8);
  CHECK(ny == 8);

  const ExperimentConfig tall = ExperimentConfig::preset(ExampleId::GsMorphology);
  const auto [tx, ty] = tall.grid_for(8);
  CHECK(tx == 8);
  CHECK(ty == 16);
  CHECK(tall.beta == 400.0);
}

TEST_CASE("config validation failures")
{
  // Empty levels.
  CHECK_THROWS_AS(parse("[experiment]\nexample = table_conv\n"), ConfigError);
  // Not a power of two.
  CHECK_THROWS_AS(parse("[experiment]\nexample = table_conv\nlevels = 8,12\n"), ConfigError);
  // Not strictly increasing.
  CHECK_THROWS_AS(parse("[experiment]\nexample = table_conv\nlevels = 16,8\n"), ConfigError);
  // Reference must exceed the finest level.
  CHECK_THROWS_AS(
      parse("[experiment]\nexample = table_conv\nlevels = 8,16\nreference_level = 16\n"),
      ConfigError);
  // Unknown keys and sections are rejected with the offending field named.
  try
  {
    parse("[experiment]\nexample = table_conv\nlevels = 8\ntypo_key = 1\n");
    FAIL("expected ConfigError");
  }
  catch (const ConfigError& err)
  {
    CHECK(std::string(err.what()).find("typo_key") != std::string::npos);
  }
  CHECK_THROWS_AS(parse("[experiment]\nexample = table_conv\nlevels = 8\n[bogus]\nx = 1\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse("[experiment]\nexample = nope\nlevels = 8\n"), ConfigError);
  // Custom example needs a sane domain.
  CHECK_THROWS_AS(parse("[experiment]\nexample = custom\nlevels = 8\n"
                        "[domain]\nxmin = 1\nxmax = -1\n"),
                  ConfigError);
}

TEST_CASE("small experiment run and report")
{
  ExperimentConfig cfg = ExperimentConfig::preset(ExampleId::TableConv);
  cfg.levels = {4, 8};
  cfg.output_dir = "test_out/small";

  const ExperimentReport report = run_experiment(cfg);
  REQUIRE(report.runs.size() == 1);
  REQUIRE(report.runs[0].rows.size() == 2);
  CHECK(report.runs[0].rows[1].dofs == 208);
  CHECK(!report.any_failure);
  CHECK(report.runs[0].rows[0].energy > 0.0);
  // Cascaded level 8 must agree with the table value regardless of guess.
  CHECK(std::abs(report.runs[0].rows[1].energy - 2.795872) <= 5e-6);

  write_report(report);
  CHECK(std::filesystem::exists("test_out/small/table_energy.csv"));
  CHECK(std::filesystem::exists("test_out/small/convergence.csv"));
  CHECK(std::filesystem::exists("test_out/small/field_N8.csv"));
  CHECK(!std::filesystem::exists("test_out/small/table_errors.csv"));  // no reference
}

TEST_CASE("reference errors flow into the report")
{
  ExperimentConfig cfg = ExperimentConfig::preset(ExampleId::TableConv);
  cfg.levels = {4, 8};
  cfg.reference_level = 32;
  cfg.output_dir = "test_out/ref";

  const ExperimentReport report = run_experiment(cfg);
  CHECK(report.has_reference);
  const auto& rows = report.runs[0].rows;
  CHECK(rows[0].l2_error > rows[1].l2_error);
  CHECK(rows[1].l2_error > 0.0);
  CHECK(report.runs[0].has_lower_bound);
  CHECK(report.runs[0].lower_bound.all_below);

  write_report(report);
  CHECK(std::filesystem::exists("test_out/ref/table_errors.csv"));
  CHECK(std::filesystem::exists("test_out/ref/lowerbound.csv"));
}

TEST_CASE("csv bodies are byte-identical across reruns and worker counts")
{
  ExperimentConfig cfg = ExperimentConfig::preset(ExampleId::TableConv);
  cfg.levels = {4, 8};

  set_worker_count(1);
  cfg.output_dir = "test_out/det1";
  write_report(run_experiment(cfg));
  set_worker_count(3);
  cfg.output_dir = "test_out/det3";
  write_report(run_experiment(cfg));
  set_worker_count(0);

  for (const char* name : {"table_energy.csv", "convergence.csv", "field_N4.csv", "field_N8.csv"})
  {
    const std::string a = read_body(std::filesystem::path("test_out/det1") / name);
    const std::string b = read_body(std::filesystem::path("test_out/det3") / name);
    CHECK(a == b);
    CHECK(!a.empty());
  }
}

TEST_CASE("number formatting round-trips")
{
  for (double v : {2.795872, 1.28e-2, 0.0, -3.14159265358979, 5.02e-5})
  {
    CHECK(std::stod(format_number(v)) == v);
    CHECK(std::stod(format_scientific(v)) == v);
  }
  CHECK(format_scientific(1.28e-2).find('e') != std::string::npos);
}

TEST_CASE("corrupted basis makes the orthogonality suite fail")
{
  SelftestOptions options;
  options.corrupt_basis = true;
  options.reference_level = 32;  // keep the negative test quick
  std::ostringstream sink;
  const SelftestReport report = run_selftest(options, sink);
  CHECK(report.failures() >= 1);
  bool orthogonality_failed = false;
  for (const auto& suite : report.suites)
    if (suite.name == "orthogonality" && !suite.passed)
      orthogonality_failed = true;
  CHECK(orthogonality_failed);
}

TEST_CASE("morphology study keeps cells square on the tall domain")
{
  ExperimentConfig cfg = ExperimentConfig::preset(ExampleId::GsMorphology);
  cfg.levels = {4, 8};
  cfg.flow.max_iterations = 400;
  const ExperimentReport report = run_experiment(cfg);
  REQUIRE(!report.any_failure);
  // N x 2N grid: faces N(2N+1) + 2N(N+1) plus 2N^2 cell DOFs.
  CHECK(report.runs[0].rows[0].dofs == 4 * 9 + 8 * 5 + 32);
  CHECK(report.runs[0].rows[1].energy > 0.0);
  // The strongly repulsive condensate converges too, just more slowly.
  CHECK(report.runs[0].rows[1].iterations > 10);
}

TEST_CASE("selftest outcome is seed independent")
{
  std::ostringstream sink;
  for (std::uint64_t seed : {7ull, 99ull})
  {
    SelftestOptions options;
    options.seed = seed;
    options.reference_level = 32;
    CHECK(run_selftest(options, sink).failures() == 0);
  }
}

TEST_CASE("non-convergence is reported as failed rows")
{
  ExperimentConfig cfg = ExperimentConfig::preset(ExampleId::TableConv);
  cfg.levels = {4};
  cfg.flow.max_iterations = 1;
  cfg.output_dir = "test_out/failed";
  const ExperimentReport report = run_experiment(cfg);
  CHECK(report.any_failure);
  CHECK(!report.runs[0].rows[0].converged);
  CHECK(!report.runs[0].trajectories[0].empty());
  write_report(report);
  std::ifstream in("test_out/failed/table_energy.csv");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.find("did not converge") != std::string::npos);
}
