#pragma once

#include "shallowwell/potential.hpp"
#include "shallowwell/quadrature.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace shallowwell::cli {

enum class Format { Text, Csv, Json };

struct GridSpec {
  double L{0.0};
  int P{0};
  int q{0};
};

/// Parsed run configuration. Top-level keys precede the [potential]
/// section:
///
///   order = 6                 2..6
///   grid = L,P,q              default: support radius + 5, 128, 8
///   format = text|csv|json
///   out = PATH
///   s_min = 0.1  s_max = 3  steps = 30     sweep for compare and pade
///   pade_m = 3  pade_n = 3
///   depth = D                 asymptote coefficient, default shape(0)
///   tol = 1e-12               shooting tolerance
///   betas = 0.02,0.01,0.005   greens-check ladder
///
///   [potential]
///   kind = gaussian | square_well | poschl_teller | tabulated
///   strength = 1
///   halfwidth = 1             square_well
///   file = PATH               tabulated; relative to the config file
struct RunConfig {
  std::string kind{"gaussian"};
  double strength{1.0};
  double halfwidth{1.0};
  std::filesystem::path file;

  int order{6};
  std::optional<GridSpec> grid;
  std::optional<Format> format;
  std::optional<std::filesystem::path> out;
  double s_min{0.1};
  double s_max{3.0};
  int steps{30};
  int pade_m{3};
  int pade_n{3};
  std::optional<double> depth;
  double tol{1e-12};
  std::vector<double> betas{0.02, 0.01, 0.005};
};

/// Throws Error(ConfigError) on syntax errors, unknown sections or keys and
/// out-of-range values. Relative file paths resolve against base_dir.
RunConfig parse_config(std::string_view text,
                       const std::filesystem::path &base_dir = {});
RunConfig load_config(const std::filesystem::path &path);

/// Checks numeric ranges; called by parse_config and again after command
/// line overrides.
void validate(const RunConfig &cfg);

/// "x V" columns, '#' comments. Throws ConfigError.
Potential load_tabulated(const std::filesystem::path &path);

GridSpec parse_grid(std::string_view text);
Format parse_format(std::string_view text);

Potential make_potential(const RunConfig &cfg);
QuadratureGrid make_grid(const RunConfig &cfg, const Potential &p);

/// Missing cells carry no value.
using Cell = std::optional<std::variant<double, long, std::string>>;

struct Table {
  std::string name;
  std::vector<std::string> columns; // "name [unit]"
  std::vector<std::vector<Cell>> rows;
};

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<Table> tables;
  int exit_code{0};
};

Report cmd_series(const RunConfig &cfg);
Report cmd_compare(const RunConfig &cfg);
Report cmd_pade(const RunConfig &cfg);
Report cmd_solve(const RunConfig &cfg);
Report cmd_greens_check(const RunConfig &cfg);

/// Floating values use 9 significant digits in every format.
std::string format_number(double v);
std::string render(const Report &r, Format f);

/// Entry point of the shallowwell executable. Exit codes: 0 success,
/// 2 configuration error, 3 numeric failure.
int run(int argc, char **argv, std::ostream &out, std::ostream &err);

} // namespace shallowwell::cli
