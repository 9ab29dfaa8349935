#include <gtest/gtest.h>

#include <random>

#include "mlrf/errors.hpp"
#include "mlrf/polyhedron.hpp"

using namespace mlrf;

namespace {

RatVec vec(std::initializer_list<Rational> xs) {
  RatVec v(Eigen::Index(xs.size()));
  Eigen::Index i = 0;
  for (const auto &x : xs)
    v[i++] = x;
  return v;
}

Constraint le(std::initializer_list<Rational> a, Rational b) {
  return {vec(a), Relation::LessEq, std::move(b)};
}

/// Integer points of p inside [-r, r]^dim.
std::vector<RatVec> lattice_points(const Polyhedron &p, int r) {
  std::vector<RatVec> out;
  const std::size_t n = p.dim();
  std::vector<int> x(n, -r);
  for (;;) {
    RatVec v = zeros(n);
    for (std::size_t i = 0; i < n; ++i)
      v[Eigen::Index(i)] = x[i];
    if (p.contains(v))
      out.push_back(v);
    std::size_t i = 0;
    while (i < n && x[i] == r)
      x[i++] = -r;
    if (i == n)
      break;
    ++x[i];
  }
  return out;
}

/// Oracle check of conv(P ∩ Z^n) for a polytope inside [-r, r]^n: the hull
/// keeps every lattice point, and each of its vertices is one of them.
void expect_integer_hull(const Polyhedron &p, const Polyhedron &hull, int r) {
  auto pts = lattice_points(p, r);
  for (const auto &pt : pts)
    EXPECT_TRUE(hull.contains(pt)) << to_string(pt);
  GeneratorRep g = generators(hull);
  EXPECT_EQ(g.vertices.empty(), pts.empty());
  EXPECT_TRUE(g.rays.empty());
  for (const auto &v : g.vertices) {
    EXPECT_TRUE(is_integral(v)) << to_string(v);
    EXPECT_TRUE(p.contains(v)) << to_string(v);
  }
}

} // namespace

TEST(IntegerHull, TriangleWithFractionalApex) {
  // x, y >= 0, 2x + 3y <= 4: apex (0, 4/3) is cut back to x + 2y <= 2.
  Polyhedron p(2);
  p.add(le({-1, 0}, 0));
  p.add(le({0, -1}, 0));
  p.add(le({2, 3}, 4));
  HullInfo info;
  Polyhedron h = integer_hull(p, {}, &info);
  EXPECT_GT(info.cuts_added, 0u);
  expect_integer_hull(p, h, 4);
  Polyhedron expect(2);
  expect.add(le({-1, 0}, 0));
  expect.add(le({0, -1}, 0));
  expect.add(le({1, 2}, 2));
  EXPECT_TRUE(same_set(h, expect));
}

TEST(IntegerHull, NoLatticePoint) {
  Polyhedron p(2);
  p.add(le({2, 0}, 1));
  p.add(le({-2, 0}, -1)); // x = 1/2
  EXPECT_FALSE(is_feasible(integer_hull(p)));
  Polyhedron q(2);
  q.add(le({3, 3}, 4));
  q.add(le({-3, -3}, -2)); // 2/3 <= x + y <= 4/3 has x + y = 1
  Polyhedron hq = integer_hull(q);
  EXPECT_TRUE(is_feasible(hq));
  EXPECT_TRUE(hq.contains(vec({5, -4})));
  EXPECT_FALSE(hq.contains(vec({Rational(1, 2), Rational(1, 3)})));
}

TEST(IntegerHull, EqualityLattice) {
  // 2x + 4y = 6 has integer solutions; 2x + 4y = 5 has none.
  Polyhedron p(2);
  p.add({vec({2, 4}), Relation::Equal, Rational(6)});
  p.add(le({-1, 0}, 0));
  p.add(le({0, -1}, 0));
  // Lattice points (3, 0) and (1, 1); the end (0, 3/2) is cut off.
  Polyhedron h = integer_hull(p);
  EXPECT_TRUE(same_set(h, p.with(le({-1, 0}, -1))));
  Polyhedron q(2);
  q.add({vec({2, 4}), Relation::Equal, Rational(5)});
  EXPECT_FALSE(is_feasible(integer_hull(q)));
}

TEST(IntegerHull, LinealityIsKept) {
  // Strip 0 <= 2x - 2y <= 1 along (1, 1): integer hull is x = y.
  Polyhedron p(2);
  p.add(le({2, -2}, 1));
  p.add(le({-2, 2}, 0));
  Polyhedron h = integer_hull(p);
  Polyhedron line(2);
  line.add({vec({1, -1}), Relation::Equal, Rational(0)});
  EXPECT_TRUE(same_set(h, line));
}

TEST(IntegerHull, AddedConstraintForGuardedLoop) {
  // x2 <= x1, x1 + x2 >= 1: rational x1 >= 1/2, integer x1 >= 1.
  Polyhedron p(3);
  p.add(le({-1, 1, 0}, 0));
  p.add(le({-1, -1, 0}, -1));
  p.add(le({0, 0, -1}, 0));
  Polyhedron h = integer_hull(p);
  auto added = added_constraints(p, h);
  ASSERT_EQ(added.size(), 1u);
  Polyhedron expect(3);
  expect.add(le({-1, 0, 0}, -1));
  EXPECT_TRUE(same_set(Polyhedron(3).add(added), expect));
}

TEST(IntegerHull, RandomPolytopesMatchEnumeration) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> coef(-5, 5), rhs(-4, 12);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t dim = 2 + std::size_t(trial % 2);
    Polyhedron p(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      RatVec e = zeros(dim);
      e[Eigen::Index(i)] = 2;
      p.add({e, Relation::LessEq, Rational(9)});
      p.add({RatVec(-e), Relation::LessEq, Rational(9)});
    }
    for (int k = 0; k < 3; ++k) {
      RatVec a = zeros(dim);
      for (std::size_t i = 0; i < dim; ++i)
        a[Eigen::Index(i)] = coef(rng);
      p.add({a, Relation::LessEq, Rational(rhs(rng), 2)});
    }
    Polyhedron h = integer_hull(p);
    SCOPED_TRACE("trial " + std::to_string(trial));
    expect_integer_hull(p, h, 5);
  }
}

TEST(IntegerHull, CutBudget) {
  Polyhedron p(2);
  p.add(le({-1, 0}, 0));
  p.add(le({0, -1}, 0));
  p.add(le({2, 3}, 4));
  EXPECT_THROW(integer_hull(p, HullOptions{0}), HullLimitError);
}
