#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mlrf/affine.hpp"
#include "mlrf/polyhedron.hpp"

namespace mlrf {

enum class Domain { Rational, Integer };

/// Single-path linear-constraint loop: while (B x <= b) do A (x; x') <= c.
struct SlcLoop {
  std::vector<std::string> var_names;
  /// Rows over the n unprimed variables.
  std::vector<Constraint> guard;
  /// Rows over (x, x'), 2n columns.
  std::vector<Constraint> update;
  Domain domain = Domain::Rational;

  std::size_t dim() const { return var_names.size(); }
};

enum class TupleKind { Mlrf, Nested, BmsLlrf, WeakBmsLlrf };

struct RankTuple {
  std::vector<AffineFunc> components;
  TupleKind kind = TupleKind::Mlrf;

  std::size_t depth() const { return components.size(); }
};

/// Parses the line-oriented loop format:
///
///     vars x y z
///     guard x >= -z
///     update x' = x + y
///
/// '#' starts a comment. An optional "domain int|rat" line sets the domain.
/// Throws ParseError.
SlcLoop parse_loop(std::string_view text);

/// Parses "component <affine>" lines over the given variable names.
RankTuple parse_tuple(std::string_view text,
                      const std::vector<std::string> &var_names,
                      TupleKind kind = TupleKind::Mlrf);

/// Parses a single affine expression over unprimed variables.
AffineFunc parse_affine(std::string_view text,
                        const std::vector<std::string> &var_names);

/// Guard rows padded with zeros on x', followed by the update rows.
Polyhedron transition_polyhedron(const SlcLoop &loop);

/// The polyhedron the analyses run on. Strict guard rows are tightened to
/// a . x <= ceil(b) - 1 (after integer scaling) for integer loops, and
/// replaced by their closure for rational loops.
Polyhedron analysis_polyhedron(const SlcLoop &loop);

struct MlrfCheck {
  bool valid = false;
  /// Certificates Delta f_i - 1 >= 0 on each residual, then f_d >= 0 on the
  /// last one.
  std::vector<FarkasCert> certs;
  /// 1-based component whose condition failed (0 when valid).
  std::size_t failed_index = 0;
  /// Residual polyhedron at the failing level.
  Polyhedron residual;
  /// Transition of `residual` violating the condition.
  RatVec witness;
};

/// Multiphase check with closed residuals R_1 = Q, R_{i+1} = R_i ∩ {f_i <= 0}:
/// Delta f_i >= 1 on every R_i and f_d >= 0 on R_d. Empty residuals end the
/// check early; the empty tuple is valid only on an empty Q.
MlrfCheck check_mlrf(const Polyhedron &q, const RankTuple &tuple);

/// The multiphase definition over integer transitions only. Works on integer
/// hulls: R_1 = conv(Q ∩ Z^2n), R_{i+1} = conv(R_i ∩ {f_i < 0} ∩ Z^2n), with the
/// same conditions as check_mlrf. Exact for integer points since the
/// conditions are linear. Certificates refer to the hulls.
MlrfCheck check_mlrf_int(const Polyhedron &q, const RankTuple &tuple,
                         const HullOptions &hull_options = {});

struct NestedCheck {
  bool valid = false;
  std::vector<FarkasCert> certs;
  /// 0: f_d >= 0 failed. i >= 1: (Delta f_i - 1) + f_{i-1} >= 0 failed.
  std::size_t failed_index = 0;
  RatVec witness;
};

/// Nested check: f_d >= 0 and (Delta f_i - 1) + f_{i-1} >= 0 with f_0 = 0.
NestedCheck check_nested(const Polyhedron &q, const RankTuple &tuple);

/// Pointwise reading of the multiphase definition at one transition (x, x').
/// Returns the 1-based ranking index, or 0 when unranked.
std::size_t mlrf_rank_index(const RankTuple &tuple, const RatVec &transition);

/// Pointwise reading of the lexicographic definition (Delta f_j >= 0 for
/// j < i, Delta f_i >= 1 or > 0 when weak, f_i >= 0). 0 when unranked.
std::size_t llrf_rank_index(const RankTuple &tuple, const RatVec &transition,
                            bool weak);

} // namespace mlrf
