#include "shallowwell/cli.hpp"
#include "shallowwell/error.hpp"

#include <catch_amalgamated.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace shallowwell;
using namespace shallowwell::cli;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code{0};
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "shallowwell");
  std::vector<char *> argv;
  for (auto &a : args)
    argv.push_back(a.data());
  std::ostringstream out, err;
  Outcome o;
  o.code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "shallowwell_cli_tests";
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const std::string &name, const std::string &text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

std::vector<std::vector<std::string>> parse_csv(const std::string &text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty())
      break; // first table only
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ','))
      cells.push_back(cell);
    if (!line.empty() && line.back() == ',')
      cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

ErrorCode code_of(auto &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::NoConvergence;
}

void check_units(const std::string &csv) {
  std::istringstream in(csv);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) {
      header = true;
      continue;
    }
    if (header) {
      std::stringstream ls(line);
      std::string col;
      while (std::getline(ls, col, ',')) {
        INFO(col);
        CHECK(col.find(" [") != std::string::npos);
        CHECK(col.back() == ']');
      }
      header = false;
    }
  }
}

} // namespace

TEST_CASE("config parsing", "[cli]") {
  const RunConfig cfg = parse_config("# run\n"
                                     "order = 5\n"
                                     "grid = 12, 64, 6\n"
                                     "format = csv\n"
                                     "betas = 0.04, 0.02\n"
                                     "\n"
                                     "[potential]\n"
                                     "kind = square_well  # comment\n"
                                     "strength = 2.5\n"
                                     "halfwidth = 0.5\n");
  CHECK(cfg.order == 5);
  REQUIRE(cfg.grid);
  CHECK(cfg.grid->L == 12.0);
  CHECK(cfg.grid->P == 64);
  CHECK(cfg.grid->q == 6);
  CHECK(cfg.format == Format::Csv);
  CHECK(cfg.betas == std::vector<double>{0.04, 0.02});
  CHECK(cfg.kind == "square_well");
  CHECK(cfg.strength == 2.5);
  CHECK(cfg.halfwidth == 0.5);

  const RunConfig tab =
      parse_config("[potential]\nkind = tabulated\nfile = well.dat\n", "/data");
  CHECK(tab.file == fs::path("/data/well.dat"));
}

TEST_CASE("config errors", "[cli]") {
  const char *bad[] = {
      "[potential]\nkind = gaussian\ncolour = red\n", // unknown key
      "colour = red\n[potential]\nkind = gaussian\n", // unknown top key
      "[solver]\n",                                   // unknown section
      "order = 6\n",                                  // no potential
      "[potential]\nkind = gaussian\nkind = gaussian\n",
      "order = six\n[potential]\nkind = gaussian\n",
      "order = 7\n[potential]\nkind = gaussian\n",
      "grid = 10,64\n[potential]\nkind = gaussian\n",
      "grid = 10,64,20\n[potential]\nkind = gaussian\n",
      "s_min = 2\ns_max = 1\n[potential]\nkind = gaussian\n",
      "steps = 1\n[potential]\nkind = gaussian\n",
      "pade_m = 4\npade_n = 4\n[potential]\nkind = gaussian\n",
      "betas = 0.5\n[potential]\nkind = gaussian\n",
      "tol = 1e-15\n[potential]\nkind = gaussian\n",
      "format = xml\n[potential]\nkind = gaussian\n",
      "[potential]\nkind = harmonic\n",
      "[potential]\nkind = tabulated\n",
      "[potential]\nkind = gaussian\nstrength = -1\n",
      "[potential]\nkind gaussian\n",
      "[potential\nkind = gaussian\n",
  };
  for (const char *text : bad) {
    INFO(text);
    CHECK(code_of([&] { parse_config(text); }) == ErrorCode::ConfigError);
  }
}

TEST_CASE("tabulated files", "[cli]") {
  const fs::path good = write_file("good.dat", "# x V\n-1 0\n0 -1.5\n\n1 0\n");
  const Potential p = load_tabulated(good);
  CHECK(p(0.0) == -1.5);
  CHECK(p(0.5) == -0.75);
  const fs::path three = write_file("three.dat", "-1 0 7\n0 -1\n");
  CHECK(code_of([&] { load_tabulated(three); }) == ErrorCode::ConfigError);
  const fs::path positive = write_file("positive.dat", "-1 0\n0 1\n");
  CHECK(code_of([&] { load_tabulated(positive); }) == ErrorCode::ConfigError);
  CHECK(code_of([] { load_tabulated(scratch() / "missing.dat"); }) ==
        ErrorCode::ConfigError);
}

TEST_CASE("numbers use nine significant digits", "[cli]") {
  CHECK(format_number(-0.785398163397448) == "-0.785398163");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.5e-12) == "1.5e-12");
  CHECK(format_number(123456789012.0) == "1.23456789e+11");
}

TEST_CASE("exit codes", "[cli]") {
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"series", "--bogus"}).code == 2);
  CHECK(invoke({"series", "--order", "9"}).code == 2);
  CHECK(invoke({"series", "--grid", "1,2"}).code == 2);
  CHECK(invoke({"series", "--format", "xml"}).code == 2);
  CHECK(invoke({"series", "--config", (scratch() / "none.cfg").string()})
            .code == 2);

  const fs::path zero = write_file("zero.dat", "-2 0\n0 0\n2 0\n");
  const fs::path cfg = write_file(
      "zero.cfg", "steps = 2\n[potential]\nkind = tabulated\nfile = " +
                      zero.filename().string() + "\n");
  const Outcome solve = invoke({"solve", "--config", cfg.string()});
  CHECK(solve.code == 3);
  CHECK_THAT(solve.err, ContainsSubstring("BracketFailure"));
  CHECK(invoke({"compare", "--config", cfg.string()}).code == 3);

  ::setenv("SHALLOWWELL_THREADS", "zero", 1);
  CHECK(invoke({"solve"}).code == 2);
  ::setenv("SHALLOWWELL_THREADS", "2", 1);
  CHECK(invoke({"solve"}).code == 0);
  ::unsetenv("SHALLOWWELL_THREADS");
}

TEST_CASE("series on the Gaussian", "[cli]") {
  const Outcome o = invoke({"series", "--format", "csv"});
  REQUIRE(o.code == 0);
  check_units(o.out);
  const auto rows = parse_csv(o.out);
  REQUIRE(rows.size() == 7);
  CHECK(rows[0][0] == "n [-]");
  const double expect[] = {0.0, -0.785398, 1.11072, -1.89534, 3.56727,
                           -7.1374};
  for (int n = 1; n <= 6; ++n) {
    const double c = std::stod(rows[n][1]);
    if (n == 1)
      CHECK(c == 0.0);
    else
      CHECK_THAT(c, WithinRel(expect[n - 1], n == 6 ? 2e-3 : 1e-5));
  }
}

TEST_CASE("series on the square well prints exact fractions", "[cli]") {
  const fs::path cfg =
      write_file("sw.cfg", "[potential]\nkind = square_well\nhalfwidth = 1\n");
  const Outcome o = invoke({"series", "--config", cfg.string()});
  REQUIRE(o.code == 0);
  for (const char *q : {"4/3", "-92/45", "1072/315", "-84752/14175"})
    CHECK_THAT(o.out, ContainsSubstring(q));
  CHECK_THAT(o.out, ContainsSubstring("-2.04444444"));
}

TEST_CASE("series of a zero tabulated potential", "[cli]") {
  const fs::path zero = write_file("zero2.dat", "# flat\n-3 0\n0 0\n3 0\n");
  const fs::path cfg = write_file(
      "zero2.cfg", "[potential]\nkind = tabulated\nfile = zero2.dat\n");
  const Outcome o =
      invoke({"series", "--config", cfg.string(), "--format", "csv"});
  REQUIRE(o.code == 0);
  const auto rows = parse_csv(o.out);
  for (std::size_t n = 1; n < rows.size(); ++n)
    CHECK(rows[n][1] == "0");
}

TEST_CASE("json output parses", "[cli]") {
  const Outcome o = invoke({"series", "--format", "json", "--order", "4"});
  REQUIRE(o.code == 0);
  const auto doc = nlohmann::json::parse(o.out);
  CHECK(doc["command"] == "series");
  CHECK(doc["tables"][0]["rows"].size() == 4);
  CHECK_THAT(doc["tables"][0]["rows"][3][1].get<double>(),
             WithinRel(-1.89534, 1e-5));
  CHECK(doc["tables"][0]["rows"][3][3].is_null());
}

TEST_CASE("compare is deterministic and ordered", "[cli]") {
  const fs::path cfg = write_file(
      "sweep.cfg",
      "s_min = 0.1\ns_max = 1.5\nsteps = 4\n[potential]\nkind = gaussian\n");
  const fs::path out1 = scratch() / "a.csv";
  const fs::path out2 = scratch() / "b.csv";
  REQUIRE(invoke({"compare", "--config", cfg.string(), "--format", "csv",
                  "--out", out1.string()})
              .code == 0);
  ::setenv("SHALLOWWELL_THREADS", "3", 1);
  REQUIRE(invoke({"compare", "--config", cfg.string(), "--format", "csv",
                  "--out", out2.string()})
              .code == 0);
  ::unsetenv("SHALLOWWELL_THREADS");
  auto slurp = [](const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  const std::string a = slurp(out1);
  CHECK(a == slurp(out2));
  check_units(a);
  const auto rows = parse_csv(a);
  REQUIRE(rows.size() == 5);
  double prev_s = 0.0, prev_e = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double s = std::stod(rows[i][0]);
    const double shoot = std::stod(rows[i][5]);
    CHECK(s > prev_s);
    CHECK(shoot < prev_e);
    CHECK(std::stod(rows[i][3]) >= shoot);
    CHECK(std::stod(rows[i][4]) >= shoot);
    CHECK(rows[i][6].empty());
    prev_s = s;
    prev_e = shoot;
  }
}

TEST_CASE("pade prints the approximant", "[cli]") {
  const Outcome o = invoke({"pade", "--format", "csv"});
  REQUIRE(o.code == 0);
  check_units(o.out);
  const auto rows = parse_csv(o.out);
  REQUIRE(rows.size() == 5);
  const double q[] = {1.0, 3.38542, 2.80348, 0.336931};
  for (int k = 0; k <= 3; ++k)
    CHECK_THAT(std::stod(rows[k + 1][2]), WithinRel(q[k], 1e-3));
}

TEST_CASE("solve on Poschl-Teller", "[cli]") {
  const fs::path cfg = write_file(
      "pt.cfg", "[potential]\nkind = poschl_teller\nstrength = 2\n");
  const Outcome o =
      invoke({"solve", "--config", cfg.string(), "--format", "csv"});
  REQUIRE(o.code == 0);
  check_units(o.out);
  const auto rows = parse_csv(o.out);
  REQUIRE(rows.size() == 2);
  CHECK_THAT(std::stod(rows[1][1]), WithinAbs(-1.0, 1e-8));
  CHECK_THAT(std::stod(rows[1][7]), WithinAbs(-1.0, 1e-15));
}

TEST_CASE("greens-check residuals shrink linearly", "[cli]") {
  const Outcome o = invoke({"greens-check", "--format", "csv"});
  REQUIRE(o.code == 0);
  check_units(o.out);
  const auto rows = parse_csv(o.out);
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 2; i < rows.size(); ++i) {
    const double r = std::stod(rows[i][2]) / std::stod(rows[i - 1][2]);
    CHECK_THAT(r, WithinAbs(0.5, 0.02));
  }
  const Outcome text = invoke({"greens-check"});
  CHECK_THAT(text.out, ContainsSubstring("# divergent_block_symmetrized: 0"));
}
