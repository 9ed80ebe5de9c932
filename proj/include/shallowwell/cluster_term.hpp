#pragma once

#include "shallowwell/factor_graph.hpp"
#include "shallowwell/rational.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace shallowwell {

/// |x_a - x_b|^power between two sites (0-based).
struct AbsLink {
  int a{0};
  int b{0};
  int power{1};
  friend bool operator==(const AbsLink &, const AbsLink &) = default;
};

/// One additive piece of a correction E^(n):
///   coefficient * integral prod_i V(x_i) x_i^{p_i} prod_links |x_a - x_b|^k
/// over site_count integration variables.
struct ClusterTerm {
  Rational coefficient;
  int site_count{0};
  std::vector<int> site_powers;
  std::vector<AbsLink> links;

  /// Length dimension: sum of site powers plus link powers.
  int degree() const;
  FactorGraphTerm to_graph() const;
};

/// All terms of one correction order. Every term has `order` sites and
/// length dimension `degree` (= order - 2).
struct TermTable {
  int order{0};
  int degree{0};
  std::vector<ClusterTerm> terms;
};

/// Checks site counts, powers, link endpoints, degrees and that the links of
/// every term form disjoint simple paths. Throws InvalidTermTable.
void validate(const TermTable &table);

/// Text form, one term per line:
///
///   <coefficient> | <p_1> ... <p_n> | <a>-<b>^<k> ...
///
/// with 1-based site numbers, e.g. "-1/16 | 0 0 0 0 | 1-2^1 2-3^1".
/// The header line "# order <n> degree <d>" precedes the terms.
std::string dump(const TermTable &table);
std::string dump(const ClusterTerm &term);

/// Inverse of dump(); lines starting with '#' other than the header are
/// ignored. The result is validated. Throws InvalidTermTable.
TermTable parse_table(std::string_view text);

/// Shipped tables for E^(2) ... E^(6).
const TermTable &term_table(int order);

/// One row of the sixth-order source expression: coefficient times a product
/// of factors, each either x_i (j == 0) or (x_i - x_j), times |.| links.
/// Sites are 1-based here to match the source rows.
struct SourceFactor {
  int i{0};
  int j{0};
};

struct SourceRow {
  Rational coefficient;
  std::vector<SourceFactor> factors;
  std::vector<AbsLink> links; // 1-based
};

/// The sixth-order expression in source form: the four-site monomial block
/// times the squared zeroth moment, the two polynomial-times-|.||.| blocks
/// and the pure chain block.
const std::vector<SourceRow> &sixth_order_source();

/// Multiplies out the source rows into monomial cluster terms over `sites`
/// sites, merging terms with identical powers and links.
TermTable expand_source(const std::vector<SourceRow> &rows, int sites,
                        int degree);

} // namespace shallowwell
