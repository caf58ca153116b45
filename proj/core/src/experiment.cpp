#include "becfem/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace becfem
{

namespace
{

bool is_power_of_two(int n)
{
  return n > 0 && (n & (n - 1)) == 0;
}

std::string trim(const std::string& s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
  std::vector<std::string> parts;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, sep))
    parts.push_back(trim(item));
  return parts;
}

std::optional<ExampleId> example_from_name(const std::string& name)
{
  if (name == "gs_morphology")
    return ExampleId::GsMorphology;
  if (name == "table_conv")
    return ExampleId::TableConv;
  if (name == "element_compare")
    return ExampleId::ElementCompare;
  if (name == "stirrer")
    return ExampleId::Stirrer;
  if (name == "custom")
    return ExampleId::Custom;
  return std::nullopt;
}

const char* example_name(ExampleId id)
{
  switch (id)
  {
    case ExampleId::GsMorphology: return "gs_morphology";
    case ExampleId::TableConv: return "table_conv";
    case ExampleId::ElementCompare: return "element_compare";
    case ExampleId::Stirrer: return "stirrer";
    case ExampleId::Custom: return "custom";
  }
  return "custom";
}

std::optional<ElementKind> element_from_name(const std::string& name)
{
  if (name == "eq1rot")
    return ElementKind::EQ1Rot;
  if (name == "q2")
    return ElementKind::Q2;
  return std::nullopt;
}

const char* element_name(ElementKind kind)
{
  return kind == ElementKind::EQ1Rot ? "eq1rot" : "q2";
}

std::optional<Potential::Kind> potential_from_name(const std::string& name)
{
  if (name == "zero")
    return Potential::Kind::Zero;
  if (name == "harmonic_aniso")
    return Potential::Kind::HarmonicAniso;
  if (name == "sin_well")
    return Potential::Kind::SinWell;
  if (name == "harmonic_stirrer")
    return Potential::Kind::HarmonicStirrer;
  return std::nullopt;
}

using IniSections = std::map<std::string, std::map<std::string, std::string>>;

IniSections parse_ini(std::istream& in, const std::string& origin)
{
  IniSections sections;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line))
  {
    ++lineno;
    const std::string t = trim(line.substr(0, line.find('#')));
    if (t.empty())
      continue;
    if (t.front() == '[')
    {
      if (t.back() != ']')
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed section header");
      section = trim(t.substr(1, t.size() - 2));
      sections[section];
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    sections[section][trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return sections;
}

double parse_double(const std::string& s, const std::string& field,
                    std::vector<std::string>& errors)
{
  try
  {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size())
      throw std::invalid_argument(s);
    return v;
  }
  catch (const std::exception&)
  {
    errors.push_back(field + ": not a number ('" + s + "')");
    return 0.0;
  }
}

long parse_int(const std::string& s, const std::string& field, std::vector<std::string>& errors)
{
  try
  {
    std::size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size())
      throw std::invalid_argument(s);
    return v;
  }
  catch (const std::exception&)
  {
    errors.push_back(field + ": not an integer ('" + s + "')");
    return 0;
  }
}

}  // namespace

std::pair<Index, Index> ExperimentConfig::grid_for(int level) const
{
  if (example == ExampleId::GsMorphology)
    return {level, 2 * level};  // keeps cells square on the tall domain
  return {level, level};
}

Domain ExperimentConfig::effective_domain() const
{
  switch (example)
  {
    case ExampleId::GsMorphology: return Domain{-4.0, 4.0, -8.0, 8.0};
    case ExampleId::TableConv:
    case ExampleId::ElementCompare: return Domain{-1.0, 1.0, -1.0, 1.0};
    case ExampleId::Stirrer: return Domain{-8.0, 8.0, -8.0, 8.0};
    case ExampleId::Custom: return domain;
  }
  return domain;
}

Potential ExperimentConfig::make_potential() const
{
  switch (example)
  {
    case ExampleId::GsMorphology: return Potential::harmonic_aniso();
    case ExampleId::TableConv:
    case ExampleId::ElementCompare: return Potential::sin_well();
    case ExampleId::Stirrer: return Potential::harmonic_stirrer();
    case ExampleId::Custom: return Potential::preset(potential);
  }
  return Potential::zero();
}

ExperimentConfig ExperimentConfig::preset(ExampleId id)
{
  ExperimentConfig cfg;
  cfg.example = id;
  switch (id)
  {
    case ExampleId::GsMorphology:
    case ExampleId::Stirrer: cfg.beta = 400.0; break;
    case ExampleId::TableConv: cfg.beta = 1.0; break;
    case ExampleId::ElementCompare: cfg.beta = 10.0; break;
    case ExampleId::Custom: break;
  }
  return cfg;
}

void ExperimentConfig::validate() const
{
  std::vector<std::string> errors;
  if (levels.empty())
    errors.push_back("experiment.levels: empty");
  for (std::size_t i = 0; i < levels.size(); ++i)
  {
    if (!is_power_of_two(levels[i]))
      errors.push_back("experiment.levels: " + std::to_string(levels[i]) +
                       " is not a power of two");
    if (i > 0 && levels[i] <= levels[i - 1])
      errors.push_back("experiment.levels: not strictly increasing");
  }
  if (elements.empty())
    errors.push_back("experiment.elements: empty");
  if (reference_level != 0)
  {
    if (!is_power_of_two(reference_level))
      errors.push_back("experiment.reference_level: not a power of two");
    else if (!levels.empty() && reference_level <= levels.back())
      errors.push_back("experiment.reference_level: must exceed the finest measured level");
  }
  if (!(flow.step > 0.0) || flow.step > 1.0)
    errors.push_back("flow.step: must lie in (0, 1]");
  if (!(flow.tolerance > 0.0))
    errors.push_back("flow.tolerance: must be positive");
  if (flow.max_iterations < 1)
    errors.push_back("flow.max_iterations: must be positive");
  if (example == ExampleId::Custom)
  {
    if (!(domain.xmin < domain.xmax) || !(domain.ymin < domain.ymax))
      errors.push_back("domain: degenerate rectangle");
    if (beta < 0.0)
      errors.push_back("potential.beta: must be nonnegative");
    if (potential == Potential::Kind::Custom)
      errors.push_back("potential.preset: config files support presets only");
  }
  if (!errors.empty())
  {
    std::string msg = "invalid experiment config:";
    for (const auto& e : errors)
      msg += "\n  - " + e;
    throw ConfigError(msg);
  }
}

ExperimentConfig ExperimentConfig::parse_stream(std::istream& in, const std::string& origin)
{
  const IniSections sections = parse_ini(in, origin);
  std::vector<std::string> errors;
  ExperimentConfig cfg;
  bool example_set = false;

  for (const auto& [section, entries] : sections)
  {
    if (section == "experiment")
    {
      for (const auto& [key, value] : entries)
      {
        if (key == "example")
        {
          if (auto id = example_from_name(value))
          {
            cfg = preset(*id);
            example_set = true;
          }
          else
            errors.push_back("experiment.example: unknown example '" + value + "'");
        }
      }
    }
  }

  for (const auto& [section, entries] : sections)
  {
    if (section == "experiment")
    {
      for (const auto& [key, value] : entries)
      {
        if (key == "example")
          continue;
        if (key == "elements")
        {
          cfg.elements.clear();
          for (const auto& name : split(value, ','))
          {
            if (auto kind = element_from_name(name))
              cfg.elements.push_back(*kind);
            else
              errors.push_back("experiment.elements: unknown element '" + name + "'");
          }
        }
        else if (key == "levels")
        {
          cfg.levels.clear();
          for (const auto& item : split(value, ','))
            cfg.levels.push_back(static_cast<int>(parse_int(item, "experiment.levels", errors)));
        }
        else if (key == "reference_level")
          cfg.reference_level = static_cast<int>(parse_int(value, "experiment.reference_level", errors));
        else if (key == "reference_element")
        {
          if (auto kind = element_from_name(value))
            cfg.reference_element = *kind;
          else
            errors.push_back("experiment.reference_element: unknown element '" + value + "'");
        }
        else if (key == "output_dir")
          cfg.output_dir = value;
        else if (key == "seed")
          cfg.seed = static_cast<std::uint64_t>(parse_int(value, "experiment.seed", errors));
        else
          errors.push_back("experiment." + key + ": unknown key");
      }
    }
    else if (section == "flow")
    {
      for (const auto& [key, value] : entries)
      {
        if (key == "step")
          cfg.flow.step = parse_double(value, "flow.step", errors);
        else if (key == "tolerance")
          cfg.flow.tolerance = parse_double(value, "flow.tolerance", errors);
        else if (key == "max_iterations")
          cfg.flow.max_iterations = static_cast<int>(parse_int(value, "flow.max_iterations", errors));
        else
          errors.push_back("flow." + key + ": unknown key");
      }
    }
    else if (section == "domain")
    {
      for (const auto& [key, value] : entries)
      {
        if (key == "xmin")
          cfg.domain.xmin = parse_double(value, "domain.xmin", errors);
        else if (key == "xmax")
          cfg.domain.xmax = parse_double(value, "domain.xmax", errors);
        else if (key == "ymin")
          cfg.domain.ymin = parse_double(value, "domain.ymin", errors);
        else if (key == "ymax")
          cfg.domain.ymax = parse_double(value, "domain.ymax", errors);
        else
          errors.push_back("domain." + key + ": unknown key");
      }
    }
    else if (section == "potential")
    {
      for (const auto& [key, value] : entries)
      {
        if (key == "preset")
        {
          if (auto kind = potential_from_name(value))
            cfg.potential = *kind;
          else
            errors.push_back("potential.preset: unknown preset '" + value + "'");
        }
        else if (key == "beta")
          cfg.beta = parse_double(value, "potential.beta", errors);
        else
          errors.push_back("potential." + key + ": unknown key");
      }
    }
    else
      errors.push_back("[" + section + "]: unknown section");
  }

  if (!example_set)
    errors.push_back("experiment.example: missing");
  if (!errors.empty())
  {
    std::string msg = "invalid experiment config (" + origin + "):";
    for (const auto& e : errors)
      msg += "\n  - " + e;
    throw ConfigError(msg);
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::parse_file(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open config file: " + path.string());
  return parse_stream(in, path.filename().string());
}

namespace
{

struct ReferenceSolution
{
  FeSpace space;
  GroundState state;
};

DiscreteField prolong(const FeSpace& from_space, const DiscreteField& from,
                      const FeSpace& to_space)
{
  const FieldEvaluator eval(from_space, from);
  return interpolate(to_space, eval.as_function());
}

// Solve one level, cascading from the previous state when available.
GroundState solve_level(const FeSpace& space, const Potential& V, double beta,
                        FlowConfig flow, const FeSpace* prev_space,
                        const DiscreteField* prev_state)
{
  const GpeProblem problem(space, V, beta);
  if (prev_space && prev_state && !prev_state->coeffs.empty())
  {
    const DiscreteField guess = prolong(*prev_space, *prev_state, space);
    flow.guess = InitialGuess::Given;
    return solve_ground_state(problem, flow, &guess);
  }
  flow.guess = InitialGuess::Bubble;
  return solve_ground_state(problem, flow);
}

ReferenceSolution solve_reference(const ExperimentConfig& config, const Domain& domain,
                                  const Potential& V, double beta, double* cpu_seconds,
                                  int* iterations)
{
  // Cascade through dyadic levels up to the reference level; start no
  // finer than 64 cells per axis.
  std::vector<int> chain{config.reference_level};
  while (chain.front() > 64)
    chain.insert(chain.begin(), chain.front() / 2);

  std::optional<FeSpace> prev_space;
  DiscreteField prev_state;
  std::optional<FeSpace> space;
  GroundState state;
  const auto t0 = std::chrono::steady_clock::now();
  for (int level : chain)
  {
    const auto [nx, ny] = config.grid_for(level);
    space.emplace(build_mesh(domain, nx, ny), config.reference_element, 5);
    state = solve_level(*space, V, beta, config.flow,
                        prev_space ? &*prev_space : nullptr, &prev_state);
    prev_state = state.u;
    prev_space = std::move(space);
    space.reset();
  }
  *cpu_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  *iterations = state.iterations;
  return ReferenceSolution{std::move(*prev_space), std::move(state)};
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config)
{
  config.validate();
  ExperimentReport report;
  report.config = config;

  const Domain domain = config.effective_domain();
  const Potential V = config.make_potential();
  const double beta = config.beta;

  std::optional<ReferenceSolution> reference;
  if (config.wants_errors())
  {
    reference = solve_reference(config, domain, V, beta, &report.reference_cpu_seconds,
                                &report.reference_iterations);
    report.has_reference = true;
    report.reference_energy = reference->state.energy;
    report.reference_eigenvalue = reference->state.eigenvalue;
    report.reference_mixed_derivative_norm =
        mixed_derivative_l2norm(reference->space, reference->state.u);
  }

  for (ElementKind kind : config.elements)
  {
    RunResult run;
    run.element = kind;

    std::optional<FeSpace> prev_space;
    DiscreteField prev_state;
    for (int level : config.levels)
    {
      const auto [nx, ny] = config.grid_for(level);
      FeSpace space(build_mesh(domain, nx, ny), kind, 5);

      ErrorRecord row;
      row.level = level;
      row.dofs = space.total_dofs();
      const auto t0 = std::chrono::steady_clock::now();
      try
      {
        GroundState gs = solve_level(space, V, beta, config.flow,
                                     prev_space ? &*prev_space : nullptr, &prev_state);
        row.cpu_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        row.energy = gs.energy;
        row.eigenvalue = gs.eigenvalue;
        row.iterations = gs.iterations;
        if (reference)
        {
          const FieldErrors err =
              compute_errors(space, gs.u, reference->space, reference->state.u);
          row.l2_error = err.l2;
          row.h1_error = err.h1;
        }
        run.trajectories.push_back(std::move(gs.trajectory));
        run.states.push_back(gs.u);
        prev_state = std::move(gs.u);
        prev_space = std::move(space);
      }
      catch (const NonConvergence& failure)
      {
        row.converged = false;
        row.cpu_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        run.trajectories.push_back(failure.trajectory);
        run.states.push_back(DiscreteField{});
        prev_state = DiscreteField{};
        prev_space.reset();
        report.any_failure = true;
      }
      run.rows.push_back(row);
    }

    // Energy and eigenvalue errors against the Richardson-extrapolated
    // limits of the level sequence (second-order accurate, reference-free).
    const auto converged_rows = [&run]() {
      std::vector<const ErrorRecord*> rows;
      for (const auto& r : run.rows)
        if (r.converged)
          rows.push_back(&r);
      return rows;
    }();
    if (converged_rows.size() >= 2)
    {
      const ErrorRecord& last = *converged_rows.back();
      const ErrorRecord& prev = *converged_rows[converged_rows.size() - 2];
      const double energy_limit = last.energy + (last.energy - prev.energy) / 3.0;
      const double eigenvalue_limit =
          last.eigenvalue + (last.eigenvalue - prev.eigenvalue) / 3.0;
      for (auto& r : run.rows)
      {
        if (!r.converged)
          continue;
        r.energy_error = std::abs(r.energy - energy_limit);
        r.eigenvalue_error = std::abs(r.eigenvalue - eigenvalue_limit);
      }
    }

    if (reference && kind == ElementKind::EQ1Rot &&
        config.reference_element == ElementKind::Q2)
    {
      std::vector<double> energies;
      for (const auto& r : run.rows)
        if (r.converged)
          energies.push_back(r.energy);
      run.lower_bound = lower_bound_check(energies, report.reference_energy);
      run.has_lower_bound = true;
    }
    report.runs.push_back(std::move(run));
  }
  return report;
}

// -- CSV output ---------------------------------------------------------------

std::string format_number(double v)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_scientific(double v)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific);
  return std::string(buf, res.ptr);
}

namespace
{

std::string config_echo(const ExperimentConfig& cfg)
{
  std::string line = "# config: example=";
  line += example_name(cfg.example);
  line += " potential=";
  line += Potential::name(cfg.make_potential().kind());
  line += " beta=" + format_number(cfg.beta);
  line += " elements=";
  for (std::size_t i = 0; i < cfg.elements.size(); ++i)
    line += std::string(i ? "," : "") + element_name(cfg.elements[i]);
  line += " levels=";
  for (std::size_t i = 0; i < cfg.levels.size(); ++i)
    line += (i ? "," : "") + std::to_string(cfg.levels[i]);
  if (cfg.reference_level > 0)
    line += " reference=" + std::string(element_name(cfg.reference_element)) + ":" +
            std::to_string(cfg.reference_level);
  line += " step=" + format_number(cfg.flow.step);
  line += " tolerance=" + format_number(cfg.flow.tolerance);
  line += " seed=" + std::to_string(cfg.seed);
  return line + "\n";
}

std::ofstream open_csv(const ExperimentReport& report, const std::string& name)
{
  const std::filesystem::path dir(report.config.output_dir);
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary);  // LF line endings everywhere
  out << "# becfem experiment report\n" << config_echo(report.config);
  return out;
}

std::string order_cell(const std::optional<double>& v)
{
  return v ? format_number(*v) : std::string();
}

void write_energy_table(const ExperimentReport& report)
{
  std::ofstream out = open_csv(report, "table_energy.csv");
  out << "N,energy,energy_error,energy_order,eigenvalue,eigenvalue_error,eigenvalue_order\n";
  for (const auto& run : report.runs)
  {
    out << "# element: " << element_name(run.element) << "\n";
    const ErrorRecord* prev = nullptr;
    for (const auto& row : run.rows)
    {
      if (!row.converged)
      {
        out << "# N=" << row.level << ": solver did not converge\n";
        out << row.level << ",,,,,,\n";
        prev = nullptr;
        continue;
      }
      std::optional<double> eorder, lorder;
      if (prev)
      {
        eorder = eoc(prev->energy_error, row.energy_error);
        lorder = eoc(prev->eigenvalue_error, row.eigenvalue_error);
      }
      out << row.level << ',' << format_number(row.energy) << ','
          << format_scientific(row.energy_error) << ',' << order_cell(eorder) << ','
          << format_number(row.eigenvalue) << ',' << format_scientific(row.eigenvalue_error)
          << ',' << order_cell(lorder) << "\n";
      prev = &row;
    }
  }
}

void write_error_table(const ExperimentReport& report)
{
  std::ofstream out = open_csv(report, "table_errors.csv");
  out << "# reference: " << element_name(report.config.reference_element) << " N="
      << report.config.reference_level << " energy=" << format_number(report.reference_energy)
      << " eigenvalue=" << format_number(report.reference_eigenvalue)
      << " mixed_derivative_l2=" << format_number(report.reference_mixed_derivative_norm)
      << "\n";
  out << "N,DOFs,cpu_s,l2_error,l2_order,h1_error,h1_order\n";
  for (const auto& run : report.runs)
  {
    out << "# element: " << element_name(run.element) << "\n";
    const ErrorRecord* prev = nullptr;
    for (const auto& row : run.rows)
    {
      if (!row.converged)
      {
        out << "# N=" << row.level << ": solver did not converge\n";
        out << row.level << ',' << row.dofs << ",,,,,\n";
        prev = nullptr;
        continue;
      }
      std::optional<double> l2order, h1order;
      if (prev)
      {
        l2order = eoc(prev->l2_error, row.l2_error);
        h1order = eoc(prev->h1_error, row.h1_error);
      }
      out << row.level << ',' << row.dofs << ',' << format_number(row.cpu_seconds) << ','
          << format_scientific(row.l2_error) << ',' << order_cell(l2order) << ','
          << format_scientific(row.h1_error) << ',' << order_cell(h1order) << "\n";
      prev = &row;
    }
  }
}

void write_convergence(const ExperimentReport& report)
{
  std::ofstream out = open_csv(report, "convergence.csv");
  out << "element,N,iteration,energy,eigenvalue,residual\n";
  for (const auto& run : report.runs)
  {
    for (std::size_t k = 0; k < run.rows.size(); ++k)
    {
      const auto& traj = run.trajectories[k];
      for (std::size_t it = 0; it < traj.size(); ++it)
        out << element_name(run.element) << ',' << run.rows[k].level << ',' << it << ','
            << format_number(traj[it].energy) << ',' << format_number(traj[it].eigenvalue)
            << ',' << format_scientific(traj[it].residual) << "\n";
    }
  }
}

void write_fields(const ExperimentReport& report)
{
  const ExperimentConfig& cfg = report.config;
  for (std::size_t li = 0; li < cfg.levels.size(); ++li)
  {
    std::ofstream out = open_csv(report, "field_N" + std::to_string(cfg.levels[li]) + ".csv");
    out << "cell,x,y,u\n";
    for (const auto& run : report.runs)
    {
      out << "# element: " << element_name(run.element) << "\n";
      if (li >= run.states.size() || run.states[li].coeffs.empty())
        continue;
      const auto [nx, ny] = cfg.grid_for(cfg.levels[li]);
      const FeSpace space(build_mesh(cfg.effective_domain(), nx, ny), run.element, 5);
      // Four corners then the center of every cell; the corner traces show
      // the inter-element jumps of the nonconforming solution.
      static constexpr std::array<std::array<double, 2>, 5> sample_points{
          {{-1.0, -1.0}, {1.0, -1.0}, {-1.0, 1.0}, {1.0, 1.0}, {0.0, 0.0}}};
      for (Index c = 0; c < space.mesh().cell_count(); ++c)
      {
        const EvalResult vals = eval_field(space, run.states[li], c, sample_points);
        for (std::size_t p = 0; p < sample_points.size(); ++p)
        {
          const auto xy = space.mesh().map_to_physical(c, sample_points[p][0], sample_points[p][1]);
          out << c << ',' << format_number(xy[0]) << ',' << format_number(xy[1]) << ','
              << format_number(vals.values[p]) << "\n";
        }
      }
    }
  }
}

void write_lower_bound(const ExperimentReport& report)
{
  const bool any = std::any_of(report.runs.begin(), report.runs.end(),
                               [](const RunResult& r) { return r.has_lower_bound; });
  if (!any)
    return;
  std::ofstream out = open_csv(report, "lowerbound.csv");
  out << "element,N,energy,reference_energy,below,margin\n";
  for (const auto& run : report.runs)
  {
    if (!run.has_lower_bound)
      continue;
    std::size_t k = 0;
    for (const auto& row : run.rows)
    {
      if (!row.converged)
        continue;
      out << element_name(run.element) << ',' << row.level << ',' << format_number(row.energy)
          << ',' << format_number(report.reference_energy) << ','
          << (run.lower_bound.below[k] ? 1 : 0) << ','
          << format_scientific(run.lower_bound.margins[k]) << "\n";
      ++k;
    }
    out << "# monotone_nondecreasing: " << (run.lower_bound.monotone_nondecreasing ? 1 : 0)
        << "\n";
    out << "# lower_bound_threshold_index: " << run.lower_bound.threshold_index << "\n";
  }
}

}  // namespace

void write_report(const ExperimentReport& report)
{
  write_energy_table(report);
  if (report.has_reference)
    write_error_table(report);
  write_convergence(report);
  write_fields(report);
  write_lower_bound(report);
}

}  // namespace becfem
