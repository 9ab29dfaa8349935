#include "mlrf/synthesis.hpp"

#include "mlrf/errors.hpp"

namespace mlrf {

NestedSynthesis synth_nested(const Polyhedron &q, std::size_t d) {
  if (d == 0)
    throw PreconditionError("synth_nested needs depth >= 1");
  if (q.has_strict_rows())
    throw PreconditionError("synth_nested does not accept strict constraints");
  if (q.dim() % 2 != 0)
    throw DimensionError("transition polyhedron must have even dimension");
  NestedSynthesis out;
  if (!is_feasible(q)) {
    out.found = true;
    out.vacuous = true;
    return out;
  }
  const std::size_t n = q.dim() / 2;
  const std::size_t width = n + 1;
  LinearProgram lp(d * width);
  auto base = [&](std::size_t i) { return i * width; };

  // f_d(x) >= 0.
  {
    ParametricAffine g(2 * n);
    for (std::size_t j = 0; j < n; ++j)
      g.add_unknown(j, base(d - 1) + j, Rational(1));
    g.add_unknown(2 * n, base(d - 1) + n, Rational(1));
    add_farkas_condition(lp, q, g);
  }
  // (Delta f_i - 1) + f_{i-1} >= 0.
  for (std::size_t i = 0; i < d; ++i) {
    ParametricAffine g(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
      g.add_unknown(j, base(i) + j, Rational(1));
      g.add_unknown(n + j, base(i) + j, Rational(-1));
    }
    if (i > 0) {
      for (std::size_t j = 0; j < n; ++j)
        g.add_unknown(j, base(i - 1) + j, Rational(1));
      g.add_unknown(2 * n, base(i - 1) + n, Rational(1));
    }
    g.add_fixed(AffineFunc::constant_function(2 * n, Rational(-1)));
    add_farkas_condition(lp, q, g);
  }

  LpResult r = lp.feasible_point();
  if (r.status != LpStatus::Optimal)
    return out;
  out.tuple.kind = TupleKind::Nested;
  for (std::size_t i = 0; i < d; ++i) {
    AffineFunc f(n);
    for (std::size_t j = 0; j < n; ++j)
      f.coeffs[Eigen::Index(j)] = r.point[Eigen::Index(base(i) + j)];
    f.constant = r.point[Eigen::Index(base(i) + n)];
    out.tuple.components.push_back(f);
  }
  NestedCheck check = check_nested(q, out.tuple);
  if (!check.valid)
    throw InternalError("synthesized tuple fails the nested check");
  out.found = true;
  out.certs = std::move(check.certs);
  return out;
}

SynthesisResult synth_mlrf(const SlcLoop &loop, std::size_t dmax,
                           const HullOptions &hull_options) {
  if (dmax == 0)
    throw PreconditionError("maximum depth must be at least 1");
  SynthesisResult out;
  out.domain = loop.domain;
  out.polyhedron = analysis_polyhedron(loop);
  if (loop.domain == Domain::Integer) {
    out.polyhedron = integer_hull(out.polyhedron, hull_options, &out.hull_info);
    out.hull_applied = true;
  }
  for (std::size_t d = 1; d <= dmax; ++d) {
    out.max_depth = d;
    NestedSynthesis s = synth_nested(out.polyhedron, d);
    if (!s.found)
      continue;
    out.found = true;
    out.vacuous = s.vacuous;
    out.tuple = std::move(s.tuple);
    out.depth = out.tuple.depth();
    out.certs = std::move(s.certs);
    return out;
  }
  return out;
}

LrfResult synth_lrf(const SlcLoop &loop, const HullOptions &hull_options) {
  LrfResult out;
  out.detail = synth_mlrf(loop, 1, hull_options);
  out.found = out.detail.found;
  if (out.found)
    out.f = out.detail.tuple.depth() == 1
                ? out.detail.tuple.components[0]
                : AffineFunc(loop.dim());
  return out;
}

RankTuple reduce_irredundant(const Polyhedron &q, const RankTuple &tuple) {
  if (!check_mlrf(q, tuple).valid)
    throw PreconditionError("reduce_irredundant needs a valid multiphase tuple");
  RankTuple current = tuple;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < current.depth(); ++i) {
      RankTuple candidate = current;
      candidate.components.erase(candidate.components.begin() +
                                 std::ptrdiff_t(i));
      if (check_mlrf(q, candidate).valid) {
        current = std::move(candidate);
        changed = true;
        break;
      }
    }
  }
  return current;
}

namespace {

/// g + mu * f_1 with mu from a Motzkin witness, or g itself when g >= 0
/// already holds on Q. Returns mu (0 when unchanged).
Rational repair_with(const Polyhedron &q, const AffineFunc &f1_pre,
                     const AffineFunc &condition) {
  if (implies_nonneg(q, condition))
    return 0;
  auto w = motzkin_combine_strict(q, {f1_pre}, condition);
  if (!w)
    throw InternalError(
        "no Motzkin multiplier; input is not a valid irredundant multiphase tuple");
  return w->mus[0];
}

std::vector<AffineFunc> to_nested(const Polyhedron &q,
                                  std::vector<AffineFunc> fs) {
  if (fs.size() <= 1 || !is_feasible(q))
    return fs;
  const AffineFunc f1 = fs[0];
  const AffineFunc f1_pre = on_pre_state(f1);

  Polyhedron q1 = q;
  q1.add_nonpos(f1_pre);
  RankTuple tail;
  tail.components.assign(fs.begin() + 1, fs.end());
  tail = reduce_irredundant(q1, tail);
  std::vector<AffineFunc> h = to_nested(q1, tail.components);

  // f_1 redundant on Q: the tail alone ranks Q.
  RankTuple tail_only;
  tail_only.components = h;
  if (check_mlrf(q, tail_only).valid)
    return to_nested(q, reduce_irredundant(q, tail_only).components);
  if (h.empty())
    return {f1};

  // Bottom-up repair: h_k >= 0, then (Delta h_i - 1) + h_{i-1} >= 0.
  const std::size_t m = h.size();
  h[m - 1] = h[m - 1] + repair_with(q, f1_pre, on_pre_state(h[m - 1])) * f1;
  for (std::size_t i = m - 1; i >= 1; --i) {
    AffineFunc cond = delta(h[i]) - Rational(1) + on_pre_state(h[i - 1]);
    h[i - 1] = h[i - 1] + repair_with(q, f1_pre, cond) * f1;
  }
  Rational mu1 = repair_with(q, f1_pre, delta(h[0]) - Rational(1));
  if (mu1 == 0)
    return h;
  std::vector<AffineFunc> out{mu1 * f1};
  out.insert(out.end(), h.begin(), h.end());
  if (mu1 < 1)
    for (auto &f : out)
      f = (1 / mu1) * f;
  return out;
}

} // namespace

RankTuple mlrf_to_nested(const Polyhedron &q, const RankTuple &tuple) {
  RankTuple reduced = reduce_irredundant(q, tuple);
  RankTuple out;
  out.kind = TupleKind::Nested;
  out.components = to_nested(q, reduced.components);
  if (!check_nested(q, out).valid)
    throw InternalError("nested conversion failed verification");
  return out;
}

} // namespace mlrf
