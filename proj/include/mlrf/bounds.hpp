#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mlrf/loop.hpp"
#include "mlrf/polyhedron.hpp"

namespace mlrf {

/// Linear iteration bound of a multiphase tuple: every run from x0 stops
/// within coefficient * M iterations, M = max(f_1(x0), ..., f_d(x0), 1).
struct BoundReport {
  /// Tuple the bound was computed for (after redundancy removal).
  RankTuple tuple;
  /// Multipliers for phases k = 2..d (entry k-2).
  std::vector<MuWitness> mu;
  std::vector<Rational> c;
  std::vector<Rational> d;
  Rational coefficient;
  std::string m_definition;
  std::optional<Rational> m_value;
  std::optional<Rational> numeric;
  std::optional<Integer> iterations;
};

/// mu_1..mu_{k-1} >= 0 with sum_j mu_j f_j + (Delta f_k - 1) >= 0 on Q and
/// mu_{k-1} > 0, found by maximizing mu_{k-1} under mu_{k-1} <= 1.
/// k is 1-based, 2 <= k <= depth. Throws PreconditionError if mu_{k-1} must
/// be 0 (the tuple is not irredundant).
MuWitness phase_multipliers(const Polyhedron &q, const RankTuple &tuple,
                            std::size_t k);

/// c_1 = d_1 = 1, c_k = (1 + mu) + (sum_j mu_j c_j) / (k - 1) + mu_{k-1} d_{k-1},
/// d_k = mu_{k-1} d_{k-1} / k with mu = sum_j mu_j. Coefficient
/// max_k max(1, c_k / d_k).
BoundReport iteration_bound(const Polyhedron &q, const RankTuple &tuple,
                            const std::optional<RatVec> &x0 = std::nullopt);

} // namespace mlrf
