#include "shallowwell/cluster_term.hpp"

#include "shallowwell/error.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace shallowwell {

namespace {

constexpr std::string_view second_order_text = R"(# order 2 degree 0
-1/4 | 0 0 |
)";

constexpr std::string_view third_order_text = R"(# order 3 degree 1
-1/4 | 0 0 0 | 2-3^1
)";

constexpr std::string_view fourth_order_text = R"(# order 4 degree 2
-1/16 | 0 0 0 0 | 3-4^2
-1/8 | 0 0 0 0 | 2-3^1 3-4^1
-1/16 | 0 0 0 0 | 1-2^1 3-4^1
)";

constexpr std::string_view fifth_order_text = R"(# order 5 degree 3
-1/96 | 0 0 0 0 0 | 4-5^3
-1/16 | 0 0 0 0 0 | 3-4^1 4-5^2
-1/16 | 0 0 0 0 0 | 2-3^1 3-4^1 4-5^1
-1/16 | 0 0 0 0 0 | 2-3^1 4-5^2
-1/16 | 0 0 0 0 0 | 1-2^1 3-4^1 4-5^1
)";

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void bad_table(const std::string &what) {
  throw Error(ErrorCode::InvalidTermTable, what);
}

ClusterTerm parse_term(const std::string &line) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    const auto bar = line.find('|', pos);
    parts.push_back(trim(std::string_view(line).substr(
        pos, bar == std::string::npos ? std::string::npos : bar - pos)));
    if (bar == std::string::npos)
      break;
    pos = bar + 1;
  }
  if (parts.size() != 3)
    bad_table("expected 'coefficient | powers | links' in '" + line + "'");

  ClusterTerm t;
  try {
    t.coefficient = Rational::parse(parts[0]);
  } catch (const std::invalid_argument &e) {
    bad_table(std::string("bad coefficient: ") + e.what());
  }
  std::istringstream powers(parts[1]);
  int pw = 0;
  while (powers >> pw)
    t.site_powers.push_back(pw);
  if (!powers.eof())
    bad_table("bad site powers in '" + line + "'");
  t.site_count = static_cast<int>(t.site_powers.size());

  std::istringstream links(parts[2]);
  std::string tok;
  while (links >> tok) {
    AbsLink l;
    char dash = 0;
    char caret = 0;
    std::istringstream ls(tok);
    if (!(ls >> l.a >> dash >> l.b >> caret >> l.power) || dash != '-' ||
        caret != '^')
      bad_table("bad link '" + tok + "'");
    l.a -= 1;
    l.b -= 1;
    t.links.push_back(l);
  }
  return t;
}

TermTable load(std::string_view text) { return parse_table(text); }

using Monomial = std::array<int, 6>;

// Multiply a polynomial by (x_i - x_j) or x_i; sites 1-based.
std::map<Monomial, Rational> multiply(const std::map<Monomial, Rational> &poly,
                                      SourceFactor f) {
  std::map<Monomial, Rational> out;
  auto add = [&](Monomial m, Rational c) {
    auto [it, inserted] = out.try_emplace(m, c);
    if (!inserted)
      it->second = it->second + c;
  };
  for (const auto &[m, c] : poly) {
    Monomial a = m;
    a[f.i - 1] += 1;
    add(a, c);
    if (f.j != 0) {
      Monomial b = m;
      b[f.j - 1] += 1;
      add(b, -c);
    }
  }
  return out;
}

SourceRow row(Rational c, std::vector<SourceFactor> factors,
              std::vector<AbsLink> links) {
  return {c, std::move(factors), std::move(links)};
}

} // namespace

int ClusterTerm::degree() const {
  int d = 0;
  for (int p : site_powers)
    d += p;
  for (const auto &l : links)
    d += l.power;
  return d;
}

FactorGraphTerm ClusterTerm::to_graph() const {
  FactorGraphTerm g;
  g.coefficient = coefficient.value();
  for (int p : site_powers)
    g.sites.push_back({p, SiteExtra::None});
  for (const auto &l : links)
    g.links.push_back({l.a, l.b, l.power, false});
  return g;
}

void validate(const TermTable &table) {
  if (table.order < 2 || table.degree != table.order - 2)
    bad_table("table order/degree mismatch");
  for (const auto &t : table.terms) {
    const std::string where = " in term '" + dump(t) + "'";
    if (t.site_count != table.order ||
        static_cast<int>(t.site_powers.size()) != t.site_count)
      bad_table("site count differs from table order" + where);
    for (int p : t.site_powers)
      if (p < 0 || p > 4)
        bad_table("site power outside [0, 4]" + where);
    for (const auto &l : t.links) {
      if (l.a < 0 || l.b < 0 || l.a >= t.site_count || l.b >= t.site_count)
        bad_table("link endpoint out of range" + where);
      if (l.power < 0 || l.power > 3)
        bad_table("link power outside [0, 3]" + where);
    }
    if (t.degree() != table.degree)
      bad_table("term degree " + std::to_string(t.degree()) +
                " differs from table degree " + std::to_string(table.degree) +
                where);
    if (t.coefficient.is_zero())
      bad_table("zero coefficient" + where);
    try {
      path_components(t.to_graph());
    } catch (const Error &e) {
      bad_table(std::string(e.what()) + where);
    }
  }
}

std::string dump(const ClusterTerm &term) {
  std::ostringstream os;
  os << term.coefficient.to_string() << " |";
  for (int p : term.site_powers)
    os << ' ' << p;
  os << " |";
  for (const auto &l : term.links)
    os << ' ' << l.a + 1 << '-' << l.b + 1 << '^' << l.power;
  return os.str();
}

std::string dump(const TermTable &table) {
  std::ostringstream os;
  os << "# order " << table.order << " degree " << table.degree << '\n';
  for (const auto &t : table.terms)
    os << dump(t) << '\n';
  return os.str();
}

TermTable parse_table(std::string_view text) {
  TermTable table;
  bool have_header = false;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const std::string s = trim(line);
    if (s.empty())
      continue;
    if (s.front() == '#') {
      std::istringstream hs(s.substr(1));
      std::string k1, k2;
      int order = 0;
      int degree = 0;
      if (hs >> k1 >> order >> k2 >> degree && k1 == "order" &&
          k2 == "degree") {
        table.order = order;
        table.degree = degree;
        have_header = true;
      }
      continue;
    }
    table.terms.push_back(parse_term(s));
  }
  if (!have_header)
    bad_table("missing '# order <n> degree <d>' header");
  validate(table);
  return table;
}

const std::vector<SourceRow> &sixth_order_source() {
  static const std::vector<SourceRow> rows = [] {
    const auto x = [](int i) { return SourceFactor{i, 0}; };
    const auto d = [](int i, int j) { return SourceFactor{i, j}; };
    const std::vector<AbsLink> none;
    const std::vector<AbsLink> path3{{1, 2, 1}, {2, 3, 1}};
    const std::vector<AbsLink> pairs{{1, 2, 1}, {3, 4, 1}};
    return std::vector<SourceRow>{
        // four-site monomials; sites 5 and 6 carry the squared zeroth moment
        row({-1, 96}, {x(1), x(1), x(1), x(1)}, none),
        row({1, 24}, {x(2), x(1), x(1), x(1)}, none),
        row({-5, 64}, {x(2), x(2), x(1), x(1)}, none),
        row({3, 32}, {x(2), x(3), x(1), x(1)}, none),
        row({-3, 64}, {x(2), x(3), x(4), x(1)}, none),
        // polynomial times |x1-x2||x2-x3|
        row({-1, 48}, {d(1, 2), d(1, 2)}, path3),
        row({-1, 32}, {d(2, 3), d(1, 2)}, path3),
        row({-1, 32}, {d(3, 4), d(1, 2)}, path3),
        row({-1, 48}, {d(4, 5), d(1, 2)}, path3),
        row({-1, 96}, {d(5, 6), d(1, 2)}, path3),
        row({-1, 48}, {d(2, 3), d(2, 3)}, path3),
        row({-1, 32}, {d(3, 4), d(3, 4)}, path3),
        row({-1, 24}, {d(4, 5), d(4, 5)}, path3),
        row({-1, 32}, {d(5, 6), d(5, 6)}, path3),
        row({-1, 32}, {d(2, 3), d(3, 4)}, path3),
        row({-1, 48}, {d(2, 3), d(4, 5)}, path3),
        row({-1, 24}, {d(3, 4), d(4, 5)}, path3),
        row({-1, 96}, {d(2, 3), d(5, 6)}, path3),
        row({-1, 48}, {d(3, 4), d(5, 6)}, path3),
        row({-1, 24}, {d(4, 5), d(5, 6)}, path3),
        // polynomial times |x1-x2||x3-x4|
        row({-1, 32}, {d(1, 2), d(1, 2)}, pairs),
        row({-3, 64}, {d(2, 3), d(1, 2)}, pairs),
        row({-5, 128}, {d(3, 4), d(1, 2)}, pairs),
        row({-1, 32}, {d(4, 5), d(1, 2)}, pairs),
        row({-1, 64}, {d(5, 6), d(1, 2)}, pairs),
        row({-3, 64}, {d(2, 3), d(2, 3)}, pairs),
        row({-1, 16}, {d(3, 4), d(3, 4)}, pairs),
        row({-1, 16}, {d(4, 5), d(4, 5)}, pairs),
        row({-3, 64}, {d(5, 6), d(5, 6)}, pairs),
        row({-5, 64}, {d(2, 3), d(3, 4)}, pairs),
        row({-1, 16}, {d(2, 3), d(4, 5)}, pairs),
        row({-3, 32}, {d(3, 4), d(4, 5)}, pairs),
        row({-1, 32}, {d(2, 3), d(5, 6)}, pairs),
        row({-3, 64}, {d(3, 4), d(5, 6)}, pairs),
        row({-1, 16}, {d(4, 5), d(5, 6)}, pairs),
        // pure chains
        row({-1, 32}, {}, {{1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 5, 1}}),
        row({-1, 64}, {}, {{1, 2, 1}, {2, 3, 1}, {5, 6, 1}, {4, 5, 1}}),
        row({-1, 32}, {}, {{1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {5, 6, 1}}),
    };
  }();
  return rows;
}

TermTable expand_source(const std::vector<SourceRow> &rows, int sites,
                        int degree) {
  if (sites < 1 || sites > 6)
    bad_table("source expansion supports 1..6 sites");
  TermTable table;
  table.order = sites;
  table.degree = degree;
  // keyed on (powers, links) so identical monomials from different rows merge
  std::map<std::pair<Monomial, std::vector<std::array<int, 3>>>, std::size_t>
      index;
  for (const auto &r : rows) {
    std::map<Monomial, Rational> poly{{Monomial{}, r.coefficient}};
    for (const auto &f : r.factors) {
      if (f.i < 1 || f.i > sites || f.j < 0 || f.j > sites)
        bad_table("source factor site out of range");
      poly = multiply(poly, f);
    }
    std::vector<std::array<int, 3>> key_links;
    std::vector<AbsLink> links;
    for (const auto &l : r.links) {
      links.push_back({l.a - 1, l.b - 1, l.power});
      key_links.push_back({std::min(l.a, l.b), std::max(l.a, l.b), l.power});
    }
    std::sort(key_links.begin(), key_links.end());
    for (const auto &[m, c] : poly) {
      if (c.is_zero())
        continue;
      const auto key = std::make_pair(m, key_links);
      auto it = index.find(key);
      if (it != index.end()) {
        auto &term = table.terms[it->second];
        term.coefficient = term.coefficient + c;
        continue;
      }
      ClusterTerm t;
      t.coefficient = c;
      t.site_count = sites;
      t.site_powers.assign(m.begin(), m.begin() + sites);
      t.links = links;
      index.emplace(key, table.terms.size());
      table.terms.push_back(std::move(t));
    }
  }
  std::erase_if(table.terms,
                [](const ClusterTerm &t) { return t.coefficient.is_zero(); });
  validate(table);
  return table;
}

const TermTable &term_table(int order) {
  static const std::array<TermTable, 5> tables{
      load(second_order_text), load(third_order_text),
      load(fourth_order_text), load(fifth_order_text),
      expand_source(sixth_order_source(), 6, 4)};
  if (order < 2 || order > 6)
    throw Error(ErrorCode::UnsupportedChain,
                "no term table for order " + std::to_string(order));
  return tables[static_cast<std::size_t>(order - 2)];
}

} // namespace shallowwell
