#include <algorithm>

#include "linalg.hpp"
#include "mlrf/errors.hpp"
#include "mlrf/polyhedron.hpp"

namespace mlrf {

using detail::ColumnEchelon;
using detail::column_echelon;
using detail::cone_generators;
using detail::normalize_integer_row;

GeneratorRep generators(const Polyhedron &p) {
  if (p.has_strict_rows())
    throw PreconditionError("generators does not accept strict constraints");
  const std::size_t n = p.dim();
  // Homogenized cone { (x, t) | A x - b t <= 0, t >= 0 }.
  std::vector<RatVec> rows;
  RatVec t_nonneg = zeros(n + 1);
  t_nonneg[Eigen::Index(n)] = -1;
  rows.push_back(t_nonneg);
  for (const auto &row : p.rows()) {
    RatVec h = zeros(n + 1);
    h.head(Eigen::Index(n)) = row.coeffs;
    h[Eigen::Index(n)] = -row.rhs;
    rows.push_back(h);
  }
  detail::ConeGenerators cone = cone_generators(rows, n + 1);

  GeneratorRep g;
  for (const auto &r : cone.rays) {
    const Rational &t = r[Eigen::Index(n)];
    if (t > 0)
      g.vertices.push_back(r.head(Eigen::Index(n)) / t);
  }
  if (g.vertices.empty())
    return {};
  for (const auto &r : cone.rays)
    if (r[Eigen::Index(n)] == 0)
      g.rays.push_back(r.head(Eigen::Index(n)));
  for (const auto &l : cone.lines) {
    if (l[Eigen::Index(n)] != 0)
      throw InternalError("homogenized cone has a line leaving t = 0");
    g.rays.push_back(l.head(Eigen::Index(n)));
    g.rays.push_back(-l.head(Eigen::Index(n)));
  }
  return g;
}

Polyhedron from_generators(std::size_t dim, const GeneratorRep &g) {
  if (g.vertices.empty())
    return Polyhedron::empty(dim);
  // Valid inequalities (a, beta): a . v - beta <= 0, a . r <= 0.
  std::vector<RatVec> rows;
  for (const auto &v : g.vertices) {
    if (std::size_t(v.size()) != dim)
      throw DimensionError("vertex of the wrong dimension");
    RatVec h = zeros(dim + 1);
    h.head(Eigen::Index(dim)) = v;
    h[Eigen::Index(dim)] = -1;
    rows.push_back(h);
  }
  for (const auto &r : g.rays) {
    if (std::size_t(r.size()) != dim)
      throw DimensionError("ray of the wrong dimension");
    RatVec h = zeros(dim + 1);
    h.head(Eigen::Index(dim)) = r;
    rows.push_back(h);
  }
  detail::ConeGenerators dual = cone_generators(rows, dim + 1);
  Polyhedron p(dim);
  for (const auto &l : dual.lines) {
    RatVec a = l.head(Eigen::Index(dim));
    if (is_zero(a))
      continue;
    p.add({a, Relation::Equal, l[Eigen::Index(dim)]});
  }
  for (const auto &r : dual.rays) {
    RatVec a = r.head(Eigen::Index(dim));
    if (is_zero(a))
      continue;
    p.add({a, Relation::LessEq, r[Eigen::Index(dim)]});
  }
  return p;
}

namespace {

/// conv(Q ∩ Z^k) for a pointed Q = { y | C y <= d }. Returns nullopt when
/// there is no integer point.
std::optional<std::vector<Constraint>>
pointed_hull(std::vector<Constraint> rows, std::size_t k,
             const HullOptions &options, HullInfo &info) {
  std::vector<Constraint> tight;
  for (auto &row : rows) {
    if (is_zero(row.coeffs)) {
      if (row.rhs < 0)
        return std::nullopt;
      continue;
    }
    normalize_integer_row(row.coeffs, row.rhs);
    row.rhs = Rational(floor(row.rhs));
    tight.push_back(row);
  }
  rows = std::move(tight);

  for (;;) {
    Polyhedron q(k);
    q.add(rows);
    GeneratorRep g = generators(q);
    if (g.vertices.empty())
      return std::nullopt;
    const RatVec *fractional = nullptr;
    for (const auto &v : g.vertices) {
      if (!is_integral(v)) {
        fractional = &v;
        break;
      }
    }
    if (!fractional)
      return rows;
    ++info.rounds;
    const RatVec &v = *fractional;

    std::vector<RatVec> tight_rows;
    std::vector<std::size_t> tight_index;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Rational lhs = 0;
      for (Eigen::Index j = 0; j < v.size(); ++j)
        lhs += rows[i].coeffs[j] * v[j];
      if (lhs == rows[i].rhs) {
        tight_rows.push_back(rows[i].coeffs);
        tight_index.push_back(i);
      }
    }
    std::vector<std::size_t> basis = detail::independent_prefix(tight_rows, k);
    if (basis.size() != k)
      throw InternalError("vertex without a full-rank tight basis");
    const auto kk = Eigen::Index(k);
    RatMat a_b(kk, kk);
    RatVec b_b(kk);
    for (std::size_t r = 0; r < k; ++r) {
      a_b.row(Eigen::Index(r)) = tight_rows[basis[r]].transpose();
      b_b[Eigen::Index(r)] = rows[tight_index[basis[r]]].rhs;
    }
    RatMat inv = detail::inverse(a_b);

    std::size_t before = rows.size();
    for (Eigen::Index i = 0; i < kk; ++i) {
      if (is_integer(v[i]))
        continue;
      // Chvatal-Gomory cut from the fractional part of row i of the inverse.
      RatVec u(kk);
      for (Eigen::Index j = 0; j < kk; ++j)
        u[j] = fractional_part(inv(i, j));
      RatVec a = a_b.transpose() * u;
      Rational beta = u.dot(b_b);
      if (is_zero(a))
        continue;
      normalize_integer_row(a, beta);
      Constraint cut{a, Relation::LessEq, Rational(floor(beta))};
      bool duplicate = std::any_of(rows.begin(), rows.end(), [&](const auto &r) {
        return r.coeffs == cut.coeffs && r.rhs <= cut.rhs;
      });
      if (!duplicate)
        rows.push_back(std::move(cut));
    }
    if (rows.size() == before)
      throw InternalError("fractional vertex produced no new cut");
    info.cuts_added += rows.size() - before;
    if (info.cuts_added > options.max_cuts)
      throw HullLimitError("integer hull exceeded " +
                               std::to_string(options.max_cuts) + " cuts",
                           info.cuts_added);
  }
}

} // namespace

Polyhedron tighten_for_integers(const Polyhedron &p) {
  Polyhedron out(p.dim());
  for (Constraint c : p.rows()) {
    if (c.relation == Relation::Less) {
      c.relation = Relation::LessEq;
      Rational factor = is_zero(c.coeffs) ? Rational(1) : make_primitive(c.coeffs);
      c.rhs = Rational(ceil(c.rhs * factor) - 1);
    }
    out.add(c);
  }
  return out;
}

Polyhedron integer_hull(const Polyhedron &p, const HullOptions &options,
                        HullInfo *info_out) {
  if (p.has_strict_rows())
    throw PreconditionError("integer_hull does not accept strict constraints");
  HullInfo info;
  auto finish = [&](Polyhedron result) {
    if (info_out)
      *info_out = info;
    return result;
  };
  const std::size_t n = p.dim();
  if (!is_feasible(p))
    return finish(Polyhedron::empty(n));

  std::vector<std::size_t> eq_index = implicit_equalities(p);
  std::vector<bool> is_eq(p.num_rows(), false);
  for (std::size_t i : eq_index)
    is_eq[i] = true;

  // Equalities E x = e with integer rows.
  std::vector<Constraint> equalities;
  for (std::size_t i : eq_index) {
    Constraint c = p.row(i);
    normalize_integer_row(c.coeffs, c.rhs);
    c.relation = Relation::Equal;
    equalities.push_back(c);
  }
  RatMat E(Eigen::Index(equalities.size()), Eigen::Index(n));
  for (std::size_t r = 0; r < equalities.size(); ++r)
    E.row(Eigen::Index(r)) = equalities[r].coeffs.transpose();

  // x = x0 + V z over the integer solutions of E x = e.
  ColumnEchelon ech = column_echelon(E);
  const auto k = Eigen::Index(ech.rank);
  RatVec w = zeros(n);
  for (std::size_t r = 0; r < equalities.size(); ++r) {
    Rational acc = equalities[r].rhs;
    const auto i = Eigen::Index(r);
    if (!ech.pivot[r]) {
      for (Eigen::Index c = 0; c < k; ++c)
        acc -= ech.L(i, c) * w[c];
      if (acc != 0)
        throw InternalError("inconsistent implicit equalities");
      continue;
    }
    const auto pc = Eigen::Index(*ech.pivot[r]);
    for (Eigen::Index c = 0; c < pc; ++c)
      acc -= ech.L(i, c) * w[c];
    w[pc] = acc / ech.L(i, pc);
    if (!is_integer(w[pc]))
      return finish(Polyhedron::empty(n));
  }
  const Eigen::Index m = Eigen::Index(n) - k;
  RatVec x0 = ech.U.leftCols(k) * w.head(k);
  RatMat V = ech.U.rightCols(m);
  RatMat W = ech.U_inv.bottomRows(m);

  Polyhedron result(n);
  for (const auto &c : equalities)
    result.add(c);

  // Inequalities in z-space: (A V) z <= b - A x0.
  std::vector<Constraint> zrows;
  for (std::size_t i = 0; i < p.num_rows(); ++i) {
    if (is_eq[i])
      continue;
    const auto &row = p.row(i);
    RatVec a = V.transpose() * row.coeffs;
    Rational rhs = row.rhs - row.coeffs.dot(x0);
    normalize_integer_row(a, rhs);
    zrows.push_back({a, Relation::LessEq, rhs});
  }
  if (m == 0) {
    for (const auto &r : zrows)
      if (r.rhs < 0)
        return finish(Polyhedron::empty(n));
    return finish(remove_redundant(result));
  }

  // Split off the lineality space: (A V) U2 = [L2 | 0].
  RatMat A2(Eigen::Index(zrows.size()), m);
  for (std::size_t r = 0; r < zrows.size(); ++r)
    A2.row(Eigen::Index(r)) = zrows[r].coeffs.transpose();
  ColumnEchelon lin = column_echelon(A2);
  const auto k2 = Eigen::Index(lin.rank);
  std::vector<Constraint> yrows;
  for (std::size_t r = 0; r < zrows.size(); ++r)
    yrows.push_back({RatVec(lin.L.row(Eigen::Index(r)).head(k2).transpose()),
                     Relation::LessEq, zrows[r].rhs});

  auto hull_rows = pointed_hull(std::move(yrows), std::size_t(k2), options, info);
  if (!hull_rows)
    return finish(Polyhedron::empty(n));
  // y1 = (U2^-1)_head z, z = W x.
  RatMat to_x = lin.U_inv.topRows(k2) * W;
  for (const auto &row : *hull_rows) {
    RatVec a = to_x.transpose() * row.coeffs;
    // z = W (x - x0).
    Rational rhs = row.rhs + a.dot(x0);
    result.add({a, Relation::LessEq, rhs});
  }
  return finish(remove_redundant(result));
}

} // namespace mlrf
