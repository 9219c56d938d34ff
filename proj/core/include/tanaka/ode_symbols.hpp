#pragma once

#include <vector>

#include "tanaka/pseudo_product.hpp"

namespace tanaka {

// Tuple of positive integers compared componentwise; holds the orders of a
// system of equations and the orders of a preserved projection.
struct MultiIndex {
  std::vector<int> entries;
  bool operator==(const MultiIndex&) const = default;
};

// Skew arrangement of left-aligned rows of boxes: row i has kappa_i boxes and
// is shifted right by max(lambda) - lambda_i columns, so column c carries
// degree -c.  c_star is the leftmost column met by every row.
struct SkewTableau {
  MultiIndex kappa;
  MultiIndex lambda;
  std::vector<int> offsets;  // row i occupies columns offsets[i]+1 .. offsets[i]+kappa_i
  int c_star = 0;
  bool single_row = false;  // accepted, but outside the standing assumptions
};

// Requires componentwise 2 <= lambda <= kappa.
SkewTableau tableau(const MultiIndex& kappa, const MultiIndex& lambda);

// Canonical translate of lambda with smallest entry 2.  Translates of lambda
// produce the same tableau shape, hence the same symbol.
MultiIndex normalize_lambda(const MultiIndex& kappa, const MultiIndex& lambda);

// Graded algebra spanned by X of degree -1 and one chain of boxes per tableau
// row, with [X, e_{i,j}] = e_{i,j+1} and all other brackets zero; the box
// e_{i,j} carries the degree of its column.  The distinguished pair is
// e = <X> and f = the span of the boxes in columns up to c_star.
struct OdeSymbol {
  SymbolTriple triple;
  SkewTableau tab;
  std::size_t x_index = 0;
  std::vector<std::vector<std::size_t>> box_index;  // basis index of e_{i,j}
};

OdeSymbol symbol_from_tableau(const SkewTableau& t);

// dF^equation/dy^row_order = 0: the equation of a padded row cannot depend on
// the jet variables of the boxes standing above its padding.  The box at
// position p (1-based from the row's left end) of row r carries the variable
// y^r with subscript kappa_r - p.
struct VanishingCondition {
  std::size_t equation = 0;  // 1-based index of the padded row
  std::size_t row = 0;       // 1-based index of the row owning the variable
  int order = 0;             // subscript of the jet variable
};

std::vector<VanishingCondition> vanishing_conditions(const MultiIndex& kappa,
                                                     const MultiIndex& lambda);

// All canonical lambda with 2 <= lambda <= kappa, deduplicated under
// translation and sorted lexicographically.  Requires kappa >= 2.
std::vector<MultiIndex> enumerate_lambdas(const MultiIndex& kappa);

struct TableRow {
  MultiIndex lambda;
  OdeSymbol symbol;
  std::vector<int> projection_target;  // kappa - lambda, the preserved jet order
  FinitenessCertificate certificate;
};

struct TableReport {
  MultiIndex kappa;
  int max_degree = 0;
  std::vector<TableRow> rows;
};

// One row per canonical lambda, each carrying the symbol and its finiteness
// certificate.  Rows are independent; up to `jobs` of them run concurrently,
// and the output order is always the lambda enumeration order.
TableReport dimension_table(const MultiIndex& kappa, int max_degree, unsigned jobs = 1);

}  // namespace tanaka
