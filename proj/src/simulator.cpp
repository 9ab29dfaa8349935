#include "mlrf/simulator.hpp"

#include <optional>

#include "mlrf/errors.hpp"

namespace mlrf {

RatVec UpdateMap::apply(const RatVec &x) const {
  RatVec y(Eigen::Index(next.size()));
  for (std::size_t i = 0; i < next.size(); ++i)
    y[Eigen::Index(i)] = eval_affine(next[i], x);
  return y;
}

UpdateMap deterministic_update(const SlcLoop &loop) {
  const std::size_t n = loop.dim();
  std::vector<std::optional<AffineFunc>> upper(n), lower(n);
  UpdateMap map;
  for (const auto &row : loop.update) {
    if (row.relation != Relation::LessEq)
      throw PreconditionError("update contains a strict row");
    std::optional<std::size_t> var;
    for (std::size_t j = 0; j < n; ++j) {
      if (row.coeffs[Eigen::Index(n + j)] == 0)
        continue;
      if (var)
        throw PreconditionError("update row mentions two primed variables");
      var = j;
    }
    if (!var) {
      map.side_conditions.push_back(
          {RatVec(row.coeffs.head(Eigen::Index(n))), row.relation, row.rhs});
      continue;
    }
    // a x'_v + c . x <= b  gives  x'_v <= (b - c . x) / a  when a > 0.
    const Rational a = row.coeffs[Eigen::Index(n + *var)];
    AffineFunc bound(RatVec(-row.coeffs.head(Eigen::Index(n)) / abs(a)),
                     row.rhs / abs(a));
    auto &slot = a > 0 ? upper[*var] : lower[*var];
    if (a < 0)
      bound = -bound;
    if (slot)
      throw PreconditionError("variable " + loop.var_names[*var] +
                              "' is bounded more than once");
    slot = bound;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!upper[i] || !lower[i] || !(*upper[i] == *lower[i]))
      throw PreconditionError("update is not deterministic in " +
                              loop.var_names[i] + "'");
    map.next.push_back(*upper[i]);
  }
  return map;
}

namespace {

bool enabled(const SlcLoop &loop, const UpdateMap &map, const RatVec &x) {
  for (const auto &g : loop.guard)
    if (!g.satisfied_by(x))
      return false;
  for (const auto &s : map.side_conditions)
    if (!s.satisfied_by(x))
      return false;
  return true;
}

} // namespace

Trace run_loop(const SlcLoop &loop, const RatVec &x0, std::size_t max_steps,
               bool record_states) {
  if (std::size_t(x0.size()) != loop.dim())
    throw DimensionError("initial state has " + std::to_string(x0.size()) +
                         " values for a loop over " +
                         std::to_string(loop.dim()) + " variables");
  UpdateMap map = deterministic_update(loop);
  Trace trace;
  RatVec x = x0;
  trace.states.push_back(x);
  while (enabled(loop, map, x)) {
    if (trace.steps == max_steps) {
      trace.outcome = TraceOutcome::MaxStepsReached;
      break;
    }
    x = map.apply(x);
    ++trace.steps;
    if (record_states)
      trace.states.push_back(x);
  }
  if (!record_states && trace.steps > 0)
    trace.states.push_back(x);
  return trace;
}

TraceRanking check_tuple_on_trace(const RankTuple &tuple, const Trace &trace) {
  TraceRanking out;
  for (const auto &x : trace.states) {
    std::vector<Rational> row;
    for (const auto &f : tuple.components)
      row.push_back(eval_affine(f, x));
    out.values.push_back(std::move(row));
  }
  for (std::size_t t = 0; t + 1 < trace.states.size(); ++t) {
    const RatVec &x = trace.states[t];
    RatVec pair(2 * x.size());
    pair << x, trace.states[t + 1];
    std::size_t index = mlrf_rank_index(tuple, pair);
    out.phase.push_back(index);
    if (index == 0 && out.all_ranked) {
      out.all_ranked = false;
      out.unranked_at = t;
    }
  }
  return out;
}

void write_trace_csv(std::ostream &out, const Trace &trace,
                     const std::vector<std::string> &var_names,
                     const RankTuple *tuple) {
  const std::size_t depth = tuple ? tuple->depth() : 0;
  for (std::size_t i = 0; i < var_names.size(); ++i)
    out << (i ? "," : "") << var_names[i];
  for (std::size_t k = 1; k <= depth; ++k)
    out << ",f" << k;
  out << "\n";
  for (std::size_t t = 0; t < trace.states.size(); ++t) {
    const RatVec &x = trace.states[t];
    for (Eigen::Index i = 0; i < x.size(); ++i)
      out << (i ? "," : "") << to_string(x[i]);
    for (std::size_t k = 0; k < depth; ++k)
      out << "," << to_string(eval_affine(tuple->components[k], x));
    out << "\n";
  }
}

} // namespace mlrf
