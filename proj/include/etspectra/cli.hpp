#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "etspectra/core.hpp"

namespace etspectra::cli {

enum class Command { Spectrum, Wavefunction, Envelope, SweepD, Compare, Convergence };
enum class OutputFormat { Csv, Json };

std::string_view to_string(Command command);

struct RunConfig {
  Command command = Command::Spectrum;
  std::string model;
  ParameterMap parameters;
  std::vector<int> levels;
  OutputFormat format = OutputFormat::Csv;
  std::string out;  // empty: standard output
  std::optional<int> grid_points;
  std::optional<double> x_max;
  std::optional<std::pair<double, double>> window;
  int samples = 401;
  std::pair<double, double> d_range{0.25, 4.0};
  int d_count = 16;
  bool log_spacing = true;

  bool operator==(const RunConfig&) const = default;
};

// args excludes the program name: <command> [options...]
RunConfig parse_run_config(std::span<const std::string> args);

// Canonical argument list; parse_run_config(canonical_args(c)) == c.
std::vector<std::string> canonical_args(const RunConfig& config);

using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  nlohmann::json metadata = nlohmann::json::object();
};

Table run_command(const RunConfig& config);

// 12 significant digits; blank for monostate.
std::string format_cell(const Cell& cell);

void write_csv(const Table& table, std::ostream& out);
void write_json(const Table& table, const RunConfig& config, std::ostream& out);

// Full driver: parse, run, write. Returns the process exit code (0, 2 validation, 3 numerical).
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace etspectra::cli
