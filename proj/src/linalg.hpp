#pragma once

// Exact dense linear algebra used by the representation conversion and the
// integer hull. Internal to the library.

#include <optional>
#include <vector>

#include "mlrf/rational.hpp"

namespace mlrf::detail {

/// Generators of the cone { y | h . y <= 0 for all h in rows } in Q^dim.
struct ConeGenerators {
  std::vector<RatVec> lines;
  std::vector<RatVec> rays;
};

ConeGenerators cone_generators(const std::vector<RatVec> &rows, std::size_t dim);

/// Inverse of a square nonsingular matrix by Gauss-Jordan elimination.
RatMat inverse(const RatMat &m);

/// Indices of the first linearly independent vectors, in order, up to `limit`.
std::vector<std::size_t> independent_prefix(const std::vector<RatVec> &vs,
                                            std::size_t limit);

/// Integer column echelon form A U = L with U unimodular.
///
/// Rows of L with a pivot have positive entry L(i, pivot[i]) and zeros right
/// of it; pivot columns are 0..rank-1 in row order. Columns rank.. of L are zero.
struct ColumnEchelon {
  RatMat L;
  RatMat U;
  RatMat U_inv;
  std::size_t rank = 0;
  std::vector<std::optional<std::size_t>> pivot;
};

/// `a` must have integer entries.
ColumnEchelon column_echelon(const RatMat &a);

/// Scales `row` and `rhs` by the same positive factor so that the row is a
/// primitive integer vector. Zero rows are left alone.
void normalize_integer_row(RatVec &row, Rational &rhs);

} // namespace mlrf::detail
