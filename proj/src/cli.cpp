#include "etspectra/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "etspectra/analytic_bounds.hpp"
#include "etspectra/envelope_solver.hpp"
#include "etspectra/error.hpp"
#include "etspectra/fgh.hpp"
#include "etspectra/variational.hpp"
#include "etspectra/wavefunction.hpp"

namespace etspectra::cli {

namespace {

constexpr std::pair<Command, std::string_view> kCommands[] = {
    {Command::Spectrum, "spectrum"}, {Command::Wavefunction, "wavefunction"}, {Command::Envelope, "envelope"},
    {Command::SweepD, "sweep-d"},    {Command::Compare, "compare"},           {Command::Convergence, "convergence"},
};

[[noreturn]] void usage(const std::string& detail) { throw Error(ErrorKind::UsageError, detail); }

Command parse_command(std::string_view word) {
  for (const auto& [command, name] : kCommands)
    if (name == word) return command;
  usage("unknown command '" + std::string(word) + "'");
}

double parse_number(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    usage("cannot read " + what + " from '" + text + "'");
  }
}

int parse_integer(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    usage("cannot read " + what + " from '" + text + "'");
  }
}

std::pair<double, double> parse_range(const std::string& text, const std::string& what, bool allow_point = false) {
  const auto sep = text.find("..");
  if (sep == std::string::npos) usage(what + " must look like a..b");
  const double lo = parse_number(text.substr(0, sep), what);
  const double hi = parse_number(text.substr(sep + 2), what);
  if (!(hi > lo || (allow_point && hi == lo))) usage(what + " must satisfy a < b");
  return {lo, hi};
}

// "a..b" or "i,j,k"
std::vector<int> parse_levels(const std::string& text) {
  if (text.empty()) usage("empty level list");
  std::vector<int> levels;
  if (const auto sep = text.find(".."); sep != std::string::npos) {
    const int lo = parse_integer(text.substr(0, sep), "levels");
    const int hi = parse_integer(text.substr(sep + 2), "levels");
    if (hi < lo) usage("level range must be ascending");
    for (int n = lo; n <= hi; ++n) levels.push_back(n);
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) levels.push_back(parse_integer(item, "levels"));
  }
  if (levels.empty()) usage("empty level list");
  for (int n : levels)
    if (n < 0) usage("levels must be non-negative");
  return levels;
}

std::string exact_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string levels_text(const std::vector<int>& levels) {
  bool contiguous = levels.size() > 1;
  for (std::size_t i = 1; i < levels.size(); ++i) contiguous = contiguous && levels[i] == levels[i - 1] + 1;
  if (contiguous) return std::to_string(levels.front()) + ".." + std::to_string(levels.back());
  std::string text;
  for (std::size_t i = 0; i < levels.size(); ++i) text += (i ? "," : "") + std::to_string(levels[i]);
  return text;
}

std::vector<int> default_levels(Command command) {
  switch (command) {
    case Command::Spectrum: return {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    case Command::Wavefunction: return {0, 1};
    case Command::Envelope: return {0, 1, 2, 3};
    case Command::SweepD: return {0, 1};
    case Command::Compare: return {0, 1, 2};
    case Command::Convergence: return {0, 1, 2, 3, 4};
  }
  return {0};
}

int max_level(const std::vector<int>& levels) { return *std::max_element(levels.begin(), levels.end()); }

double round12(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return std::strtod(buf, nullptr);
}

nlohmann::json grid_json(const GridSpec& spec) {
  nlohmann::json j;
  j["n_points"] = spec.n_points;
  j["x_max"] = round12(spec.x_max);
  j["domain"] = std::string(to_string(spec.domain));
  j["map_beta"] = round12(spec.map_beta);
  j["map_width"] = round12(spec.map_width);
  return j;
}

GridSpec grid_for(const RunConfig& config, const HamiltonianModel& model, int n_levels) {
  GridSpec spec = default_grid(model, n_levels);
  if (config.x_max) spec.x_max = *config.x_max;
  if (config.grid_points) spec.n_points = *config.grid_points;
  spec.validate();
  return spec;
}

// Reference grid energies with an error certificate. Full-line grids converge spectrally, so
// the base grid is reported against its refinement; half-line grids are extrapolated.
struct Reference {
  std::vector<double> energies;
  std::vector<double> estimates;
};

Reference reference_levels(const HamiltonianModel& model, const GridSpec& spec, int n_levels) {
  if (spec.domain == DomainKind::HalfLine) {
    auto ex = fgh_extrapolate(model, spec, n_levels);
    return {std::move(ex.energies), std::move(ex.estimates)};
  }
  auto res = fgh_solve_certified(model, spec, n_levels);
  return {std::move(res.eigenvalues), std::move(res.convergence_estimate)};
}

nlohmann::json rounded(const std::vector<double>& values) {
  nlohmann::json j = nlohmann::json::array();
  for (double v : values) j.push_back(round12(v));
  return j;
}

HamiltonianModel model_of(const RunConfig& config) { return make_model(config.model, config.parameters); }

Table spectrum(const RunConfig& config) {
  const auto model = model_of(config);
  const int n_levels = max_level(config.levels) + 1;
  const auto spec = grid_for(config, model, n_levels);
  const auto ref = reference_levels(model, spec, n_levels);
  const bool soft = model.kind == ModelKind::SoftCoulomb || model.kind == ModelKind::PureCoulomb;
  const bool has_ho = model.kind == ModelKind::SoftCoulomb || model.kind == ModelKind::HarmonicApprox;
  const auto character = model.supports_et ? std::string(to_string(classify_bound(model))) : std::string("unknown");

  Table t;
  t.columns = {"n", "e_et", "e_fgh", "e_coulomb", "e_ho", "character"};
  std::vector<double> estimates;
  for (int n : config.levels) {
    std::vector<Cell> row{(long long)n};
    row.push_back(model.supports_et ? Cell{solve_level(model, n).energy} : Cell{});
    row.push_back(ref.energies[n]);
    row.push_back(soft && coulomb_lower_applies(n) ? Cell{coulomb_lower_for_level(n)} : Cell{});
    row.push_back(has_ho ? Cell{harmonic_upper(n, model.parameter("D"))} : Cell{});
    row.push_back(character);
    t.rows.push_back(std::move(row));
    estimates.push_back(ref.estimates[n]);
  }
  t.metadata["grid"] = grid_json(spec);
  t.metadata["fgh_error_estimates"] = rounded(estimates);
  return t;
}

std::pair<double, double> default_window(const std::vector<EtSolution>& sols, double span_per_scale, bool use_x0) {
  double reach = 0.0;
  for (const auto& s : sols) reach = std::max(reach, use_x0 ? span_per_scale * s.x0 : span_per_scale / s.lambda());
  if (sols.front().domain == DomainKind::HalfLine) return {0.0, reach};
  return {-reach, reach};
}

std::vector<double> sample_points(std::pair<double, double> window, int samples) {
  if (samples < 2) usage("need at least two samples");
  std::vector<double> x(samples);
  for (int i = 0; i < samples; ++i)
    x[i] = window.first + (window.second - window.first) * double(i) / double(samples - 1);
  return x;
}

std::vector<EtSolution> solve_levels(const HamiltonianModel& model, const std::vector<int>& levels) {
  std::vector<EtSolution> sols;
  for (int n : levels) sols.push_back(solve_level(model, n));
  return sols;
}

Table wavefunction(const RunConfig& config) {
  const auto model = model_of(config);
  const auto sols = solve_levels(model, config.levels);
  const auto window = config.window.value_or(default_window(sols, 8.0, false));
  if (model.domain() == DomainKind::HalfLine && window.first < 0.0)
    throw Error(ErrorKind::DomainViolation, "half-line window starts below zero");
  const auto xs = sample_points(window, config.samples);

  GridSpec spec = grid_for(config, model, max_level(config.levels) + 1);
  if (!config.x_max) spec.x_max = std::max(spec.x_max, 1.5 * std::max(std::abs(window.first), std::abs(window.second)));
  const auto grid = fgh_solve(model, spec, max_level(config.levels) + 1);

  Table t;
  t.columns = {"n", "x", "psi_et", "psi_fgh"};
  nlohmann::json overlaps = nlohmann::json::array();
  for (const auto& sol : sols) {
    const double overlap = grid.overlap(sol.n, [&](double x) { return et_wavefunction(sol, x); });
    const double sign = overlap < 0.0 ? -1.0 : 1.0;
    overlaps.push_back(round12(std::abs(overlap)));
    for (double x : xs)
      t.rows.push_back({(long long)sol.n, x, et_wavefunction(sol, x), sign * grid.interpolate(sol.n, x)});
  }
  t.metadata["grid"] = grid_json(spec);
  t.metadata["overlaps"] = overlaps;
  return t;
}

Table envelope(const RunConfig& config) {
  const auto model = model_of(config);
  const auto sols = solve_levels(model, config.levels);
  auto window = config.window.value_or(default_window(sols, 2.0, true));
  if (model.domain() == DomainKind::HalfLine && !config.window) window.first = window.second / config.samples;
  const auto xs = sample_points(window, config.samples);

  Table t;
  t.columns = {"n", "x", "v", "v_env"};
  nlohmann::json tangency = nlohmann::json::array();
  for (const auto& sol : sols) {
    const auto env = build_envelopes(model, sol);
    tangency.push_back({{"n", sol.n}, {"x0", round12(sol.x0)}});
    for (double x : xs) t.rows.push_back({(long long)sol.n, x, model.potential.value(x), env.potential(x)});
  }
  t.metadata["tangent_points"] = tangency;
  return t;
}

std::vector<double> d_samples(const RunConfig& config) {
  const auto [lo, hi] = config.d_range;
  if (!(lo > 0.0)) throw Error(ErrorKind::NonPositiveBias, "D range must be positive");
  if (config.d_count < 1) usage("d-count must be positive");
  if (config.d_count == 1 || lo == hi) return {lo};
  std::vector<double> ds(config.d_count);
  for (int i = 0; i < config.d_count; ++i) {
    const double f = double(i) / (config.d_count - 1);
    ds[i] = config.log_spacing ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f;
  }
  return ds;
}

Table sweep_d(const RunConfig& config) {
  if (config.model != "soft-coulomb") usage("sweep-d runs on the soft-coulomb model");
  for (int n : config.levels)
    if (n > 1) throw Error(ErrorKind::UnsupportedLevel, "sweep-d compares levels 0 and 1 only");
  const auto ds = d_samples(config);
  const int n_levels = max_level(config.levels) + 1;

  Table t;
  t.columns = {"n", "d", "e_fgh", "e_var", "e_et"};
  nlohmann::json grids = nlohmann::json::array();
  std::vector<std::vector<Cell>> rows;
  for (double d : ds) {
    const auto model = make_soft_coulomb(d);
    const auto spec = grid_for(config, model, n_levels);
    const auto ref = reference_levels(model, spec, n_levels);
    grids.push_back(grid_json(spec));
    for (int n : config.levels)
      rows.push_back({(long long)n, d, ref.energies[n], variational_energy(model, n).energy, solve_level(model, n).energy});
  }
  // Group by level, then D.
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return std::get<long long>(a[0]) < std::get<long long>(b[0]); });
  t.rows = std::move(rows);
  t.metadata["grids"] = grids;
  return t;
}

Table compare(const RunConfig& config) {
  if (config.model != "hulthen") usage("compare runs on the hulthen model");
  const auto model = model_of(config);
  const double k = model.parameter("k");
  const double a = model.parameter("a");
  const int n_levels = max_level(config.levels) + 1;
  const auto spec = grid_for(config, model, n_levels);
  const auto ref = reference_levels(model, spec, n_levels);

  Table t;
  t.columns = {"n", "e_lower", "e_exact", "e_fgh", "e_upper", "e_et"};
  for (int n : config.levels) {
    const auto bracket = hulthen_bracket(n, k, a);
    t.rows.push_back({(long long)n, bracket.lower, bracket.exact, ref.energies[n], bracket.upper,
                      solve_level(model, n).energy});
  }
  t.metadata["grid"] = grid_json(spec);
  t.metadata["fgh_error_estimates"] = rounded(ref.estimates);
  return t;
}

Table convergence(const RunConfig& config) {
  const auto model = model_of(config);
  const int n_levels = max_level(config.levels) + 1;
  const auto steps = convergence_sweep(model, grid_for(config, model, n_levels), n_levels);

  Table t;
  t.columns = {"step", "n_points", "x_max", "n", "energy", "delta"};
  for (std::size_t s = 0; s < steps.size(); ++s) {
    for (int n : config.levels) {
      t.rows.push_back({(long long)s, (long long)steps[s].spec.n_points, steps[s].spec.x_max, (long long)n,
                        steps[s].eigenvalues[n], s == 0 ? Cell{} : Cell{steps[s].deltas[n]}});
    }
  }
  return t;
}

nlohmann::json cell_json(const Cell& cell) {
  if (std::holds_alternative<long long>(cell)) return std::get<long long>(cell);
  if (std::holds_alternative<double>(cell)) return round12(std::get<double>(cell));
  if (std::holds_alternative<std::string>(cell)) return std::get<std::string>(cell);
  return nullptr;
}

}  // namespace

std::string_view to_string(Command command) {
  for (const auto& [c, name] : kCommands)
    if (c == command) return name;
  return "spectrum";
}

RunConfig parse_run_config(std::span<const std::string> args) {
  if (args.empty()) usage("missing command; expected one of spectrum, wavefunction, envelope, sweep-d, compare, convergence");
  RunConfig config;
  config.command = parse_command(args.front());

  CLI::App app{"et-spectra"};
  std::vector<std::string> params;
  std::optional<std::string> levels, window, d_range;
  std::string format = "csv";
  std::string spacing = "log";
  app.add_option("--model", config.model)->required();
  app.add_option("-P,--param", params);
  app.add_option("--levels", levels);
  app.add_option("--format", format);
  app.add_option("--out", config.out);
  app.add_option("--grid-points", config.grid_points);
  app.add_option("--x-max", config.x_max);
  app.add_option("--window", window);
  app.add_option("--samples", config.samples);
  app.add_option("--d-range", d_range);
  app.add_option("--d-count", config.d_count);
  app.add_option("--spacing", spacing);

  std::vector<std::string> rest(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    usage(e.what());
  }

  for (const auto& p : params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) usage("parameter must look like key=value, got '" + p + "'");
    config.parameters[p.substr(0, eq)] = parse_number(p.substr(eq + 1), "parameter " + p.substr(0, eq));
  }
  config.levels = levels ? parse_levels(*levels) : default_levels(config.command);
  if (format == "csv")
    config.format = OutputFormat::Csv;
  else if (format == "json")
    config.format = OutputFormat::Json;
  else
    usage("format must be csv or json");
  if (window) config.window = parse_range(*window, "window");
  if (d_range) config.d_range = parse_range(*d_range, "d-range", true);
  if (spacing != "log" && spacing != "linear") usage("spacing must be log or linear");
  config.log_spacing = spacing == "log";
  if (config.samples < 2) usage("samples must be at least 2");
  return config;
}

std::vector<std::string> canonical_args(const RunConfig& c) {
  std::vector<std::string> args{std::string(to_string(c.command)), "--model", c.model};
  for (const auto& [key, value] : c.parameters) {
    args.push_back("-P");
    args.push_back(key + "=" + exact_number(value));
  }
  args.insert(args.end(), {"--levels", levels_text(c.levels)});
  args.insert(args.end(), {"--format", c.format == OutputFormat::Csv ? "csv" : "json"});
  if (!c.out.empty()) args.insert(args.end(), {"--out", c.out});
  if (c.grid_points) args.insert(args.end(), {"--grid-points", std::to_string(*c.grid_points)});
  if (c.x_max) args.insert(args.end(), {"--x-max", exact_number(*c.x_max)});
  if (c.window) args.insert(args.end(), {"--window", exact_number(c.window->first) + ".." + exact_number(c.window->second)});
  args.insert(args.end(), {"--samples", std::to_string(c.samples)});
  args.insert(args.end(), {"--d-range", exact_number(c.d_range.first) + ".." + exact_number(c.d_range.second)});
  args.insert(args.end(), {"--d-count", std::to_string(c.d_count)});
  args.insert(args.end(), {"--spacing", c.log_spacing ? "log" : "linear"});
  return args;
}

Table run_command(const RunConfig& config) {
  switch (config.command) {
    case Command::Spectrum: return spectrum(config);
    case Command::Wavefunction: return wavefunction(config);
    case Command::Envelope: return envelope(config);
    case Command::SweepD: return sweep_d(config);
    case Command::Compare: return compare(config);
    case Command::Convergence: return convergence(config);
  }
  usage("unknown command");
}

std::string format_cell(const Cell& cell) {
  if (std::holds_alternative<long long>(cell)) return std::to_string(std::get<long long>(cell));
  if (std::holds_alternative<std::string>(cell)) return std::get<std::string>(cell);
  if (std::holds_alternative<double>(cell)) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", std::get<double>(cell));
    return buf;
  }
  return "";
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
    out << '\n';
  }
}

void write_json(const Table& table, const RunConfig& config, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["command"] = std::string(to_string(config.command));
  doc["model"] = config.model;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [key, value] : config.parameters) params[key] = value;
  doc["parameters"] = params;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  meta["tolerance"] = kDefaultTolerance;
  meta["levels"] = config.levels;
  for (const auto& [key, value] : table.metadata.items()) meta[key] = value;
  doc["metadata"] = meta;
  doc["columns"] = table.columns;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& cell : row) r.push_back(cell_json(cell));
    rows.push_back(std::move(r));
  }
  doc["rows"] = rows;
  out << doc.dump(2) << '\n';
}

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  try {
    const auto config = parse_run_config(args);
    const auto table = run_command(config);
    std::ofstream file;
    std::ostream* sink = &out;
    if (!config.out.empty()) {
      file.open(config.out);
      if (!file) throw Error(ErrorKind::IoError, "cannot open " + config.out);
      sink = &file;
    }
    if (config.format == OutputFormat::Csv)
      write_csv(table, *sink);
    else
      write_json(table, config, *sink);
    if (!*sink) throw Error(ErrorKind::IoError, "write failed");
    return 0;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return is_numerical(e.kind()) ? 3 : 2;
  }
}

}  // namespace etspectra::cli
