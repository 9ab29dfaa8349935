#pragma once

#include "mlrf/loop.hpp"
#include "mlrf/polyhedron.hpp"

namespace mlrf {

struct LlrfCheck {
  bool valid = false;
  /// An unranked transition of Q when invalid.
  RatVec witness;
};

/// Lexicographic check by exact case splitting: the part of Q not ranked by
/// f_i splits into {Delta f_i >= 0, Delta f_i < 1} (weak: Delta f_i = 0) and
/// {Delta f_i >= 1 (weak: > 0), f_i < 0}, each handed to f_{i+1}; any point
/// with Delta f_i < 0 is unranked.
LlrfCheck check_bmsllrf(const Polyhedron &q, const RankTuple &tuple, bool weak);

/// Same case split over integer transitions: every region is tightened to
/// integer bounds and replaced by its integer hull before the emptiness test.
LlrfCheck check_bmsllrf_int(const Polyhedron &q, const RankTuple &tuple,
                            bool weak, const HullOptions &hull_options = {});

/// Multiphase tuple of depth <= d from a (weak) lexicographic one of depth d.
/// Throws PreconditionError when the input is not a valid (weak) tuple.
RankTuple llrf_to_mlrf(const Polyhedron &q, const RankTuple &tuple, bool weak);

} // namespace mlrf
