#include "shallowwell/cli.hpp"

#include "shallowwell/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace shallowwell::cli {

namespace {

[[noreturn]] void config_error(const std::string &what) {
  throw Error(ErrorCode::ConfigError, what);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string &key, const std::string &v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out))
    config_error("'" + key + "' expects a number, got '" + v + "'");
  return out;
}

int to_int(const std::string &key, const std::string &v) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    config_error("'" + key + "' expects an integer, got '" + v + "'");
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    out.push_back(trim(s.substr(pos, next == std::string_view::npos
                                         ? std::string_view::npos
                                         : next - pos)));
    if (next == std::string_view::npos)
      return out;
    pos = next + 1;
  }
}

} // namespace

GridSpec parse_grid(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3)
    config_error("grid expects L,P,q, got '" + std::string(text) + "'");
  GridSpec g{to_double("grid", parts[0]), to_int("grid", parts[1]),
             to_int("grid", parts[2])};
  if (!(g.L > 0.0) || g.P < 1 || g.q < 1 || g.q > 16)
    config_error("grid needs L > 0, P >= 1 and 1 <= q <= 16");
  return g;
}

Format parse_format(std::string_view text) {
  if (text == "text")
    return Format::Text;
  if (text == "csv")
    return Format::Csv;
  if (text == "json")
    return Format::Json;
  config_error("format must be text, csv or json, got '" + std::string(text) +
               "'");
}

void validate(const RunConfig &cfg) {
  if (cfg.kind != "gaussian" && cfg.kind != "square_well" &&
      cfg.kind != "poschl_teller" && cfg.kind != "tabulated")
    config_error("unknown potential kind '" + cfg.kind + "'");
  if (cfg.kind == "tabulated" && cfg.file.empty())
    config_error("tabulated potential needs 'file'");
  if (!(cfg.strength >= 0.0))
    config_error("strength must be nonnegative");
  if (!(cfg.halfwidth > 0.0))
    config_error("halfwidth must be positive");
  if (cfg.order < 2 || cfg.order > 6)
    config_error("order must lie in [2, 6]");
  if (!(cfg.s_min > 0.0) || !(cfg.s_min < cfg.s_max))
    config_error("sweep needs 0 < s_min < s_max");
  if (cfg.steps < 2)
    config_error("sweep needs steps >= 2");
  if (cfg.pade_m < 0 || cfg.pade_n < 0 || cfg.pade_m + cfg.pade_n > 6)
    config_error("pade_m + pade_n must lie in [0, 6]");
  if (cfg.depth && !(*cfg.depth >= 0.0))
    config_error("depth must be nonnegative");
  if (!(cfg.tol >= 1e-12 && cfg.tol < 1.0))
    config_error("tol must lie in [1e-12, 1)");
  if (cfg.betas.empty())
    config_error("betas must not be empty");
  for (double b : cfg.betas)
    if (!(b >= 1e-4 && b <= 0.1))
      config_error("betas must lie in [1e-4, 0.1]");
}

RunConfig parse_config(std::string_view text,
                       const std::filesystem::path &base_dir) {
  RunConfig cfg;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  std::map<std::string, int> seen;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(raw.substr(0, hash));
    if (line.empty())
      continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']')
        config_error(where + "malformed section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (section != "potential")
        config_error(where + "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      config_error(where + "expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty() || value.empty())
      config_error(where + "empty key or value");
    const std::string qualified = section.empty() ? key : section + "." + key;
    if (seen[qualified]++)
      config_error(where + "duplicate key '" + qualified + "'");

    if (section == "potential") {
      if (key == "kind")
        cfg.kind = value;
      else if (key == "strength")
        cfg.strength = to_double(key, value);
      else if (key == "halfwidth")
        cfg.halfwidth = to_double(key, value);
      else if (key == "file") {
        const std::filesystem::path p(value);
        cfg.file = p.is_absolute() ? p : base_dir / p;
      } else
        config_error(where + "unknown key '" + qualified + "'");
      continue;
    }
    if (key == "order")
      cfg.order = to_int(key, value);
    else if (key == "grid")
      cfg.grid = parse_grid(value);
    else if (key == "format")
      cfg.format = parse_format(value);
    else if (key == "out")
      cfg.out = value;
    else if (key == "s_min")
      cfg.s_min = to_double(key, value);
    else if (key == "s_max")
      cfg.s_max = to_double(key, value);
    else if (key == "steps")
      cfg.steps = to_int(key, value);
    else if (key == "pade_m")
      cfg.pade_m = to_int(key, value);
    else if (key == "pade_n")
      cfg.pade_n = to_int(key, value);
    else if (key == "depth")
      cfg.depth = to_double(key, value);
    else if (key == "tol")
      cfg.tol = to_double(key, value);
    else if (key == "betas") {
      cfg.betas.clear();
      for (const auto &b : split(value, ','))
        cfg.betas.push_back(to_double(key, b));
    } else
      config_error(where + "unknown key '" + key + "'");
  }
  if (!seen.count("potential.kind"))
    config_error("missing [potential] kind");
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    config_error("cannot read config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

Potential load_tabulated(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    config_error("cannot read potential file '" + path.string() + "'");
  std::vector<double> xs, vs;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty())
      continue;
    std::istringstream ls(line);
    double x = 0.0, v = 0.0;
    std::string extra;
    if (!(ls >> x >> v) || (ls >> extra))
      config_error(path.string() + ":" + std::to_string(lineno) +
                   ": expected two columns 'x V'");
    xs.push_back(x);
    vs.push_back(v);
  }
  try {
    return Potential::tabulated(std::move(xs), std::move(vs));
  } catch (const Error &e) {
    config_error(path.string() + ": " + e.what());
  }
}

Potential make_potential(const RunConfig &cfg) {
  try {
    if (cfg.kind == "gaussian")
      return Potential::gaussian(cfg.strength);
    if (cfg.kind == "square_well")
      return Potential::square_well(cfg.strength, cfg.halfwidth);
    if (cfg.kind == "poschl_teller")
      return Potential::poschl_teller(cfg.strength);
  } catch (const Error &e) {
    config_error(e.what());
  }
  if (cfg.kind == "tabulated") {
    const Potential p = load_tabulated(cfg.file);
    return cfg.strength == 1.0 ? p : p.with_strength(cfg.strength);
  }
  config_error("unknown potential kind '" + cfg.kind + "'");
}

QuadratureGrid make_grid(const RunConfig &cfg, const Potential &p) {
  if (!cfg.grid)
    return default_grid(p);
  return build_grid(cfg.grid->L, cfg.grid->P, cfg.grid->q, p.breakpoints());
}

} // namespace shallowwell::cli
