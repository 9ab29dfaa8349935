#include "mlrf/bounds.hpp"

#include "mlrf/errors.hpp"
#include "mlrf/synthesis.hpp"

namespace mlrf {

MuWitness phase_multipliers(const Polyhedron &q, const RankTuple &tuple,
                            std::size_t k) {
  if (k < 2 || k > tuple.depth())
    throw PreconditionError("phase index out of range");
  if (!is_feasible(q))
    throw PreconditionError("phase multipliers need a nonempty polyhedron");
  const std::size_t n = q.dim() / 2;
  LinearProgram lp(0);
  const std::size_t first = lp.add_variables(k - 1, true);
  ParametricAffine g(2 * n);
  g.add_fixed(delta(tuple.components[k - 1]) - Rational(1));
  for (std::size_t j = 0; j + 1 < k; ++j)
    g.add_scaled(on_pre_state(tuple.components[j]), first + j);
  add_farkas_condition(lp, q, g);
  const std::size_t last = first + k - 2;
  lp.add_row(std::vector<std::pair<std::size_t, Rational>>{{last, Rational(1)}},
             RowSense::LessEq, Rational(1));
  RatVec objective = zeros(lp.num_vars());
  objective[Eigen::Index(last)] = 1;
  lp.set_objective(objective);
  LpResult r = lp.maximize();
  if (r.status != LpStatus::Optimal)
    throw PreconditionError("no phase multipliers: tuple is not a valid multiphase "
                            "ranking function");
  if (r.value == 0)
    throw PreconditionError("tuple not irredundant: component " +
                            std::to_string(k - 1) + " is redundant");

  MuWitness w;
  AffineFunc combined = delta(tuple.components[k - 1]) - Rational(1);
  for (std::size_t j = 0; j + 1 < k; ++j) {
    w.mus.push_back(r.point[Eigen::Index(first + j)]);
    combined = combined + w.mus.back() * on_pre_state(tuple.components[j]);
  }
  NonnegResult check = implies_nonneg(q, combined);
  if (!check)
    throw InternalError("phase multipliers do not re-verify");
  w.cert = check.cert;
  return w;
}

BoundReport iteration_bound(const Polyhedron &q, const RankTuple &tuple,
                            const std::optional<RatVec> &x0) {
  BoundReport report;
  report.tuple = reduce_irredundant(q, tuple);
  const std::size_t depth = report.tuple.depth();
  if (depth == 0)
    throw PreconditionError("iteration bound of an empty tuple");
  report.c.push_back(1);
  report.d.push_back(1);
  for (std::size_t k = 2; k <= depth; ++k) {
    MuWitness w = phase_multipliers(q, report.tuple, k);
    Rational mu = 0, weighted = 0;
    for (std::size_t j = 0; j + 1 < k; ++j) {
      mu += w.mus[j];
      weighted += w.mus[j] * report.c[j];
    }
    const Rational &mu_last = w.mus[k - 2];
    report.c.push_back((1 + mu) + weighted / Rational(k - 1) +
                       mu_last * report.d[k - 2]);
    report.d.push_back(mu_last * report.d[k - 2] / Rational(k));
    report.mu.push_back(std::move(w));
  }
  report.coefficient = 1;
  for (std::size_t k = 0; k < depth; ++k) {
    Rational ratio = report.c[k] / report.d[k];
    if (ratio > report.coefficient)
      report.coefficient = ratio;
  }
  report.m_definition = "max(";
  for (std::size_t k = 1; k <= depth; ++k)
    report.m_definition += "f_" + std::to_string(k) + "(x0),";
  report.m_definition += "1)";
  if (x0) {
    Rational m = 1;
    for (const auto &f : report.tuple.components) {
      Rational v = eval_affine(f, *x0);
      if (v > m)
        m = v;
    }
    report.m_value = m;
    report.numeric = report.coefficient * m;
    report.iterations = ceil(*report.numeric);
  }
  return report;
}

} // namespace mlrf
