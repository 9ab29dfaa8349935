#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mlrf/loop.hpp"
#include "mlrf/polyhedron.hpp"

namespace mlrf {

struct NestedSynthesis {
  bool found = false;
  /// Set when Q is empty; the tuple is then empty.
  bool vacuous = false;
  RankTuple tuple;
  std::vector<FarkasCert> certs;
};

/// Nested ranking function of depth d for Q by a single feasibility LP
/// (affine Farkas encoding of f_d >= 0 and every (Delta f_i - 1) + f_{i-1} >= 0).
/// Found tuples are re-checked with check_nested before return.
NestedSynthesis synth_nested(const Polyhedron &q, std::size_t d);

struct SynthesisResult {
  bool found = false;
  bool vacuous = false;
  RankTuple tuple;
  std::size_t depth = 0;
  /// Largest depth tried.
  std::size_t max_depth = 0;
  Domain domain = Domain::Rational;
  bool hull_applied = false;
  HullInfo hull_info;
  /// The polyhedron the tuple was certified on (Q or its integer hull).
  Polyhedron polyhedron;
  std::vector<FarkasCert> certs;
};

/// Depth 1..dmax ascending on Q, or on its integer hull for integer loops.
SynthesisResult synth_mlrf(const SlcLoop &loop, std::size_t dmax,
                           const HullOptions &hull_options = {});

struct LrfResult {
  bool found = false;
  AffineFunc f;
  SynthesisResult detail;
};

/// Linear ranking function: synth_mlrf with dmax = 1.
LrfResult synth_lrf(const SlcLoop &loop, const HullOptions &hull_options = {});

/// Drops components (lowest index first, restarting after each removal) as
/// long as check_mlrf stays valid. Throws PreconditionError on an invalid
/// input tuple.
RankTuple reduce_irredundant(const Polyhedron &q, const RankTuple &tuple);

/// Nested ranking function of depth <= d from a multiphase one, following the
/// constructive proof: recurse on Q ∩ {f_1 <= 0}, then repair components
/// bottom-up with Motzkin multipliers of f_1.
RankTuple mlrf_to_nested(const Polyhedron &q, const RankTuple &tuple);

} // namespace mlrf
