#include "shallowwell/cli.hpp"

#include "shallowwell/error.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>

namespace shallowwell::cli {

namespace {

constexpr int exit_config = 2;
constexpr int exit_numeric = 3;

void apply_thread_cap() {
  const char *env = std::getenv("SHALLOWWELL_THREADS");
  if (!env || !*env)
    return;
  const std::string_view v(env);
  int n = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
  if (ec != std::errc() || ptr != v.data() + v.size() || n < 1)
    throw Error(ErrorCode::ConfigError,
                "SHALLOWWELL_THREADS must be a positive integer");
  omp_set_num_threads(n);
}

} // namespace

int run(int argc, char **argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Weak-coupling bound state of a shallow 1D well"};
  app.require_subcommand(1);
  app.fallthrough(); // global options may follow the subcommand

  std::string config_path, out_path, format_text, grid_text;
  int order = 0;
  app.add_option("--config", config_path, "run configuration file");
  app.add_option("--out", out_path, "write the report to PATH");
  app.add_option("--format", format_text, "text, csv or json");
  app.add_option("--order", order, "series order 2..6");
  app.add_option("--grid", grid_text, "quadrature override L,P,q");

  const std::map<std::string, std::function<Report(const RunConfig &)>>
      commands{{"series", cmd_series},
               {"compare", cmd_compare},
               {"pade", cmd_pade},
               {"solve", cmd_solve},
               {"greens-check", cmd_greens_check}};
  const std::map<std::string, std::string> help{
      {"series", "perturbation coefficients c_1..c_n"},
      {"compare", "series, Pade, variational and shooting over an s sweep"},
      {"pade", "asymptote-constrained Pade approximant"},
      {"solve", "shooting bound state at the configured strength"},
      {"greens-check", "finite-beta fourth-order residuals"}};
  for (const auto &[name, fn] : commands)
    app.add_subcommand(name, help.at(name));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "shallowwell: " << e.what() << '\n';
    return exit_config;
  }

  try {
    apply_thread_cap();
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    if (!format_text.empty())
      cfg.format = parse_format(format_text);
    if (!out_path.empty())
      cfg.out = out_path;
    if (app.count("--order"))
      cfg.order = order;
    if (!grid_text.empty())
      cfg.grid = parse_grid(grid_text);
    validate(cfg);

    const std::string name = app.get_subcommands().front()->get_name();
    const Report report = commands.at(name)(cfg);
    const std::string text = render(report, cfg.format.value_or(Format::Text));
    if (cfg.out) {
      std::ofstream file(*cfg.out, std::ios::binary);
      if (!(file << text))
        throw Error(ErrorCode::ConfigError,
                    "cannot write '" + cfg.out->string() + "'");
    } else {
      out << text;
    }
    return report.exit_code;
  } catch (const Error &e) {
    err << "shallowwell: " << e.what() << '\n';
    return e.code() == ErrorCode::ConfigError ? exit_config : exit_numeric;
  } catch (const std::exception &e) {
    err << "shallowwell: " << e.what() << '\n';
    return exit_numeric;
  }
}

} // namespace shallowwell::cli
