#include "shallowwell/cluster_term.hpp"
#include "shallowwell/error.hpp"
#include "shallowwell/factor_graph.hpp"
#include "shallowwell/perturbation.hpp"
#include "shallowwell/rational.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

using namespace shallowwell;
using Catch::Matchers::WithinRel;

namespace {

ErrorCode code_of(auto &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::ConfigError;
}

} // namespace

TEST_CASE("rationals stay reduced", "[terms]") {
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational(0, 5) == Rational(0));
  CHECK((Rational(1, 6) + Rational(1, 3)) == Rational(1, 2));
  CHECK((Rational(-3, 4) * Rational(8, 9)) == Rational(-2, 3));
  CHECK(Rational(-84752, 14175).to_string() == "-84752/14175");
  CHECK(Rational(7).to_string() == "7");
  CHECK(Rational::parse("-92/45") == Rational(-92, 45));
  CHECK(Rational::parse("+3") == Rational(3));
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/"), std::invalid_argument);
}

TEST_CASE("path components are found in path order", "[terms]") {
  FactorGraphTerm t;
  t.sites.resize(5);
  t.links = {{2, 1, 1}, {3, 2, 1}, {0, 4, 2}};
  const auto comps = path_components(t);
  REQUIRE(comps.size() == 2);
  bool saw_path3 = false;
  for (const auto &c : comps) {
    if (c.size() == 3) {
      saw_path3 = true;
      const bool forward = c == std::vector<int>{1, 2, 3};
      const bool backward = c == std::vector<int>{3, 2, 1};
      CHECK((forward || backward));
    }
  }
  CHECK(saw_path3);
}

TEST_CASE("cycles, branches and large powers are rejected", "[terms]") {
  const QuadratureGrid g = build_grid(6.0, 16, 8);
  const Potential p = Potential::gaussian(1.0);
  const GridFunction mu = sample(g, p);

  FactorGraphTerm cycle;
  cycle.sites.resize(3);
  cycle.links = {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}};
  CHECK(code_of([&] { evaluate_graph(cycle, g, mu); }) ==
        ErrorCode::NonPathComponent);

  FactorGraphTerm branch;
  branch.sites.resize(4);
  branch.links = {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}};
  CHECK(code_of([&] { evaluate_graph(branch, g, mu); }) ==
        ErrorCode::NonPathComponent);

  FactorGraphTerm high;
  high.sites.resize(2);
  high.links = {{0, 1, 4}};
  CHECK(code_of([&] { evaluate_graph(high, g, mu); }) ==
        ErrorCode::UnsupportedChain);

  ClusterTerm bad;
  bad.coefficient = Rational(1);
  bad.site_count = 3;
  bad.site_powers = {0, 0, 0};
  bad.links = {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}};
  CHECK(code_of([&] { evaluate_term(bad, p, g); }) ==
        ErrorCode::NonPathComponent);
}

TEST_CASE("shipped tables validate and round-trip through dump",
          "[terms]") {
  for (int n = 2; n <= 6; ++n) {
    const TermTable &t = term_table(n);
    CHECK(t.order == n);
    CHECK(t.degree == n - 2);
    CHECK_NOTHROW(validate(t));
    const TermTable back = parse_table(dump(t));
    REQUIRE(back.terms.size() == t.terms.size());
    for (std::size_t i = 0; i < t.terms.size(); ++i) {
      CHECK(back.terms[i].coefficient == t.terms[i].coefficient);
      CHECK(back.terms[i].site_powers == t.terms[i].site_powers);
      CHECK(back.terms[i].links == t.terms[i].links);
    }
  }
  CHECK(term_table(4).terms.size() == 3);
  CHECK(term_table(5).terms.size() == 5);
  CHECK(term_table(6).terms.size() == 46);
  CHECK(code_of([] { term_table(7); }) == ErrorCode::UnsupportedChain);
  CHECK(code_of([] { term_table(1); }) == ErrorCode::UnsupportedChain);
}

TEST_CASE("the dump format is line oriented", "[terms]") {
  const TermTable &t = term_table(4);
  CHECK(dump(t) == "# order 4 degree 2\n"
                   "-1/16 | 0 0 0 0 | 3-4^2\n"
                   "-1/8 | 0 0 0 0 | 2-3^1 3-4^1\n"
                   "-1/16 | 0 0 0 0 | 1-2^1 3-4^1\n");
  const TermTable parsed = parse_table("# order 3 degree 1\n"
                                       "# a comment\n"
                                       "-1/4 | 0 0 0 | 2-3^1\n");
  REQUIRE(parsed.terms.size() == 1);
  CHECK(parsed.terms[0].links == std::vector<AbsLink>{{1, 2, 1}});
}

TEST_CASE("malformed tables are rejected", "[terms]") {
  const char *bad[] = {
      "-1/4 | 0 0 0 | 2-3^1\n",                      // no header
      "# order 3 degree 1\n-1/4 | 0 0 | 2-3^1\n",    // site count
      "# order 3 degree 1\n-1/4 | 0 0 0 | 2-4^1\n",  // endpoint
      "# order 3 degree 1\n-1/4 | 1 0 0 | 2-3^1\n",  // degree
      "# order 3 degree 1\n0 | 0 0 0 | 2-3^1\n",     // zero coefficient
      "# order 3 degree 1\n-1/4 | 0 0 0 | 2-3^x\n",  // syntax
      "# order 4 degree 2\n1 | 0 0 0 0 | 1-2^1 1-3^1\n"
      "1 | 0 0 0 0 | 1-2^0 2-3^1 3-1^1\n",           // cycle
  };
  for (const char *text : bad) {
    INFO(text);
    CHECK(code_of([&] { parse_table(text); }) == ErrorCode::InvalidTermTable);
  }
}

TEST_CASE("the sixth-order table is the expansion of its source rows",
          "[terms]") {
  const TermTable expanded = expand_source(sixth_order_source(), 6, 4);
  const TermTable &shipped = term_table(6);
  CHECK(dump(expanded) == dump(shipped));
  // every term carries the squared moment or a chain, never a bare constant
  for (const auto &t : shipped.terms)
    CHECK(t.degree() == 4);
}

TEST_CASE("a single-link term equals the chain", "[terms]") {
  const Potential p = Potential::gaussian(1.0);
  const QuadratureGrid g = default_grid(p);
  ClusterTerm t;
  t.coefficient = Rational(1);
  t.site_count = 2;
  t.site_powers = {0, 0};
  t.links = {{0, 1, 1}};
  CHECK_THAT(evaluate_term(t, p, g), WithinRel(chain(p, g, {1}), 1e-14));
  t.site_powers = {1, 1};
  t.links.clear();
  CHECK(std::abs(evaluate_term(t, p, g)) < 1e-12);
}
