#include "mlrf/llrf.hpp"

#include "mlrf/errors.hpp"

namespace mlrf {

namespace {

/// Integer mode when `hull` is set: each region is replaced by the integer
/// hull of its integer points before anything else.
bool unranked_from(const Polyhedron &region, const RankTuple &tuple,
                   std::size_t i, bool weak, const HullOptions *hull,
                   RatVec &witness) {
  const Polyhedron r =
      hull ? integer_hull(tighten_for_integers(region), *hull) : region;
  Feasibility feas = is_feasible(r);
  if (!feas)
    return false;
  if (i == tuple.depth()) {
    witness = feas.witness;
    return true;
  }
  const AffineFunc dec = delta(tuple.components[i]);
  const AffineFunc pre = on_pre_state(tuple.components[i]);

  Polyhedron increasing = r.with(negative_constraint(dec));
  if (hull)
    increasing = integer_hull(tighten_for_integers(increasing), *hull);
  if (Feasibility inc = is_feasible(increasing)) {
    witness = inc.witness;
    return true;
  }
  Polyhedron not_decreasing = r.with(nonneg_constraint(dec));
  if (weak)
    not_decreasing.add(nonpos_constraint(dec));
  else
    not_decreasing.add(negative_constraint(dec - Rational(1)));
  if (unranked_from(not_decreasing, tuple, i + 1, weak, hull, witness))
    return true;

  Polyhedron negative = r.with(weak ? positive_constraint(dec)
                                    : nonneg_constraint(dec - Rational(1)));
  negative.add(negative_constraint(pre));
  return unranked_from(negative, tuple, i + 1, weak, hull, witness);
}

void require_tuple_dim(const Polyhedron &q, const RankTuple &tuple) {
  for (const auto &f : tuple.components)
    if (2 * f.dim() != q.dim())
      throw DimensionError("tuple component dimension does not match the loop");
}

/// Smallest Delta f over q; requires a positive attained minimum.
Rational min_decrease(const Polyhedron &q, const AffineFunc &f) {
  OptimizeResult m = optimize(q, delta(f), OptimizeSense::Min);
  if (m.status != LpStatus::Optimal || m.value <= 0)
    throw InternalError("decrease of the last component has no positive minimum");
  return m.value;
}

std::vector<AffineFunc> convert(const Polyhedron &q, std::vector<AffineFunc> fs) {
  if (!is_feasible(q))
    return {};
  const std::size_t d = fs.size();
  if (d == 1) {
    Rational c = min_decrease(q, fs[0]);
    if (c < 1)
      fs[0] = (1 / c) * fs[0];
    return fs;
  }

  // g nonnegative on Q and decreasing wherever some f_i ranks.
  std::optional<AffineFunc> g;
  std::size_t drop = 0;
  for (std::size_t i = 0; i < d && !g; ++i) {
    if (implies_nonneg(q, on_pre_state(fs[i]))) {
      g = fs[i];
      drop = i;
    }
  }
  for (std::size_t j = d; j >= 1 && !g; --j) {
    std::vector<AffineFunc> pre;
    for (std::size_t i = 0; i < j; ++i)
      pre.push_back(on_pre_state(fs[i]));
    auto w = conic_combine_nonneg(q, pre);
    if (!w)
      continue;
    AffineFunc combined = fs[j - 1];
    for (std::size_t i = 0; i + 1 < j; ++i)
      combined = combined + w->mus[i] * fs[i];
    g = combined;
    drop = j - 1;
  }
  if (!g)
    throw InternalError("no nonnegative combination; input tuple is not valid");

  Polyhedron q1 = q;
  q1.add_nonpos(delta(*g));
  std::vector<AffineFunc> rest = fs;
  rest.erase(rest.begin() + std::ptrdiff_t(drop));
  std::vector<AffineFunc> tau = convert(q1, rest);

  // Lift: repair each g_j over Q^(j-1) with a multiple of g.
  std::vector<AffineFunc> out;
  Polyhedron qj = q;
  for (const AffineFunc &gj : tau) {
    if (!is_feasible(qj))
      break;
    AffineFunc cond = delta(gj) - Rational(1);
    AffineFunc lifted = gj;
    if (!implies_nonneg(qj, cond)) {
      auto w = motzkin_combine_strict(qj, {delta(*g)}, cond);
      if (!w)
        throw InternalError("no Motzkin multiplier while lifting");
      lifted = gj + w->mus[0] * *g;
    }
    out.push_back(lifted + Rational(1));
    qj.add_nonpos(on_pre_state(lifted) + Rational(1));
  }
  if (is_feasible(qj)) {
    AffineFunc last = *g;
    Rational c = min_decrease(qj, last);
    if (c < 1)
      last = (1 / c) * last;
    out.push_back(last);
  }
  return out;
}

} // namespace

LlrfCheck check_bmsllrf(const Polyhedron &q, const RankTuple &tuple, bool weak) {
  require_tuple_dim(q, tuple);
  LlrfCheck out;
  out.valid = !unranked_from(q, tuple, 0, weak, nullptr, out.witness);
  return out;
}

LlrfCheck check_bmsllrf_int(const Polyhedron &q, const RankTuple &tuple,
                            bool weak, const HullOptions &hull_options) {
  require_tuple_dim(q, tuple);
  LlrfCheck out;
  out.valid = !unranked_from(q, tuple, 0, weak, &hull_options, out.witness);
  return out;
}

RankTuple llrf_to_mlrf(const Polyhedron &q, const RankTuple &tuple, bool weak) {
  if (!check_bmsllrf(q, tuple, weak).valid)
    throw PreconditionError("input is not a valid lexicographic tuple");
  RankTuple out;
  out.kind = TupleKind::Mlrf;
  out.components = convert(q, tuple.components);
  if (!check_mlrf(q, out).valid)
    throw InternalError("converted tuple fails the multiphase check");
  return out;
}

} // namespace mlrf
