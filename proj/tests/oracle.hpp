#pragma once

// Brute-force evaluation of the ranking definitions on small integer boxes,
// in machine integers and independent of the library's own pointwise helpers.

#include <cstdint>
#include <random>
#include <vector>

#include "mlrf/loop.hpp"
#include "mlrf/synthesis.hpp"

namespace oracle {

using i64 = std::int64_t;

/// a . x + c over a common denominator: the real value is (a . x + c) / den.
struct IntForm {
  std::vector<i64> a;
  i64 c = 0;
  i64 den = 1;
};

inline IntForm to_int_form(const mlrf::RatVec &coeffs, const mlrf::Rational &constant) {
  mlrf::Integer den = 1;
  auto lcm_with = [&](const mlrf::Rational &r) {
    mlrf::Integer q = denominator(r);
    den = den / gcd(den, q) * q;
  };
  for (Eigen::Index j = 0; j < coeffs.size(); ++j)
    lcm_with(coeffs[j]);
  lcm_with(constant);
  IntForm out;
  for (Eigen::Index j = 0; j < coeffs.size(); ++j)
    out.a.push_back(static_cast<i64>(mlrf::Integer(numerator(coeffs[j] * den))));
  out.c = static_cast<i64>(mlrf::Integer(numerator(constant * den)));
  out.den = static_cast<i64>(den);
  return out;
}

inline i64 eval(const IntForm &f, const std::vector<i64> &x) {
  i64 s = f.c;
  for (std::size_t j = 0; j < f.a.size(); ++j)
    s += f.a[j] * x[j];
  return s;
}

struct IntRow {
  IntForm lhs; // lhs <= 0, or < 0 when strict
  bool strict = false;
};

inline std::vector<IntRow> int_rows(const mlrf::Polyhedron &p) {
  std::vector<IntRow> rows;
  for (const auto &r : p.rows()) {
    IntRow row{to_int_form(r.coeffs, -r.rhs), r.relation == mlrf::Relation::Less};
    rows.push_back(row);
    if (r.relation == mlrf::Relation::Equal) {
      IntRow neg = row;
      for (auto &v : neg.lhs.a)
        v = -v;
      neg.lhs.c = -neg.lhs.c;
      rows.push_back(neg);
    }
  }
  return rows;
}

/// Pre-state values f(x) and decrease f(x) - f(x') for one component,
/// both scaled by the component's denominator.
struct Component {
  IntForm f;
};

inline std::vector<Component> components(const mlrf::RankTuple &t) {
  std::vector<Component> out;
  for (const auto &f : t.components)
    out.push_back({to_int_form(f.coeffs, f.constant)});
  return out;
}

inline i64 value(const Component &c, const std::vector<i64> &xx, std::size_t n) {
  std::vector<i64> x(xx.begin(), xx.begin() + std::ptrdiff_t(n));
  return eval(c.f, x);
}

inline i64 decrease(const Component &c, const std::vector<i64> &xx, std::size_t n) {
  i64 s = 0;
  for (std::size_t j = 0; j < n; ++j)
    s += c.f.a[j] * (xx[j] - xx[n + j]);
  return s;
}

/// Multiphase: some i with decrease_j >= 1 for j <= i, f_j < 0 for j < i, f_i >= 0.
inline bool mlrf_ranked(const std::vector<Component> &t, const std::vector<i64> &xx,
                        std::size_t n) {
  for (const auto &c : t) {
    if (decrease(c, xx, n) < c.f.den)
      return false;
    if (value(c, xx, n) >= 0)
      return true;
  }
  return false;
}

/// Lexicographic: some i with decrease_j >= 0 for j < i and f_i >= 0 with
/// decrease_i >= 1 (weak: > 0).
inline bool llrf_ranked(const std::vector<Component> &t, const std::vector<i64> &xx,
                        std::size_t n, bool weak) {
  for (const auto &c : t) {
    i64 dec = decrease(c, xx, n);
    bool decreasing = weak ? dec > 0 : dec >= c.f.den;
    if (decreasing && value(c, xx, n) >= 0)
      return true;
    if (dec < 0)
      return false;
  }
  return false;
}

struct BruteResult {
  std::size_t points = 0;
  bool mlrf = true;
  bool llrf = true;
  bool weak_llrf = true;
};

/// All integer points of q inside [-r, r]^dim.
inline BruteResult brute_force(const mlrf::Polyhedron &q, const mlrf::RankTuple &t,
                               i64 r) {
  const std::size_t dim = q.dim();
  const std::size_t n = dim / 2;
  const auto rows = int_rows(q);
  const auto comps = components(t);
  BruteResult out;
  std::vector<i64> xx(dim, -r);
  while (true) {
    bool member = true;
    for (const auto &row : rows) {
      i64 v = eval(row.lhs, xx);
      if (row.strict ? v >= 0 : v > 0) {
        member = false;
        break;
      }
    }
    if (member) {
      ++out.points;
      out.mlrf = out.mlrf && mlrf_ranked(comps, xx, n);
      out.llrf = out.llrf && llrf_ranked(comps, xx, n, false);
      out.weak_llrf = out.weak_llrf && llrf_ranked(comps, xx, n, true);
    }
    std::size_t k = 0;
    while (k < dim && xx[k] == r)
      xx[k++] = -r;
    if (k == dim)
      break;
    ++xx[k];
  }
  return out;
}

/// Random two-variable loop with coefficients in {-1, 0, 1}: 1-3 guard rows
/// and, per variable, either x' = a . x + c or a window x' in [e, e + w].
inline mlrf::SlcLoop random_loop(std::mt19937_64 &rng) {
  std::uniform_int_distribution<int> coef(-1, 1), cst(-3, 3), small(-2, 2),
      guards(1, 3), width(0, 2), coin(0, 9);
  mlrf::SlcLoop loop;
  loop.var_names = {"x", "y"};
  int g = guards(rng);
  for (int k = 0; k < g; ++k) {
    mlrf::RatVec a(2);
    do {
      a << coef(rng), coef(rng);
    } while (mlrf::is_zero(a));
    loop.guard.push_back({a, mlrf::Relation::LessEq, mlrf::Rational(cst(rng))});
  }
  for (Eigen::Index v = 0; v < 2; ++v) {
    mlrf::RatVec e = mlrf::zeros(4);
    e[0] = coef(rng);
    e[1] = coef(rng);
    e[2 + v] = -1;
    mlrf::Rational c(small(rng));
    // e . (x, x') + c = 0 means x'_v = a . x + c.
    if (coin(rng) < 7) {
      loop.update.push_back({e, mlrf::Relation::Equal, -c});
    } else {
      int w = width(rng);
      loop.update.push_back({e, mlrf::Relation::LessEq, -c});
      mlrf::RatVec neg = -e;
      loop.update.push_back({neg, mlrf::Relation::LessEq, c + w});
    }
  }
  return loop;
}

inline mlrf::RankTuple random_tuple(std::mt19937_64 &rng, std::size_t depth) {
  std::uniform_int_distribution<int> coef(-1, 1), cst(-3, 3);
  mlrf::RankTuple t;
  for (std::size_t i = 0; i < depth; ++i) {
    mlrf::AffineFunc f(2);
    f.coeffs << coef(rng), coef(rng);
    f.constant = cst(rng);
    t.components.push_back(f);
  }
  return t;
}

/// q ∩ [-r, r]^dim.
inline mlrf::Polyhedron boxed(const mlrf::Polyhedron &q, i64 r) {
  mlrf::Polyhedron out = q;
  for (std::size_t j = 0; j < q.dim(); ++j) {
    mlrf::RatVec e = mlrf::zeros(q.dim());
    e[Eigen::Index(j)] = 1;
    out.add({e, mlrf::Relation::LessEq, mlrf::Rational(r)});
    out.add({mlrf::RatVec(-e), mlrf::Relation::LessEq, mlrf::Rational(r)});
  }
  return out;
}

} // namespace oracle
