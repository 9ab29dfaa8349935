#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

#include "mlrf/loop.hpp"

namespace mlrf {

/// x' = map(x) for a deterministic loop, one affine function per variable.
struct UpdateMap {
  std::vector<AffineFunc> next;
  /// Update rows without primed variables; they restrict when a step exists.
  std::vector<Constraint> side_conditions;

  RatVec apply(const RatVec &x) const;
};

/// Reads the update as a map: every primed variable needs exactly one upper
/// and one lower bound with the same right-hand side, and no other update
/// row may mention primed variables. Throws PreconditionError otherwise.
UpdateMap deterministic_update(const SlcLoop &loop);

enum class TraceOutcome { Terminated, MaxStepsReached };

struct Trace {
  std::vector<RatVec> states;
  std::size_t steps = 0;
  TraceOutcome outcome = TraceOutcome::Terminated;
};

constexpr std::size_t default_max_steps = 1000000;

/// Iterates while the guard holds. `record_states` = false keeps only the
/// first and last state (long runs).
Trace run_loop(const SlcLoop &loop, const RatVec &x0,
               std::size_t max_steps = default_max_steps,
               bool record_states = true);

struct TraceRanking {
  bool all_ranked = true;
  /// First unranked step when not all ranked.
  std::size_t unranked_at = 0;
  /// Ranking index (1-based) of every step.
  std::vector<std::size_t> phase;
  /// values[t][k] = f_k(x_t).
  std::vector<std::vector<Rational>> values;
};

/// Pointwise multiphase check along a recorded trace.
TraceRanking check_tuple_on_trace(const RankTuple &tuple, const Trace &trace);

/// CSV: one row per state, variable columns then f_k columns.
void write_trace_csv(std::ostream &out, const Trace &trace,
                     const std::vector<std::string> &var_names,
                     const RankTuple *tuple = nullptr);

} // namespace mlrf
