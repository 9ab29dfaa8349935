#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "mlrf/errors.hpp"
#include "mlrf/synthesis.hpp"
#include "oracle.hpp"

using namespace mlrf;

namespace {

void expect_certified(const SynthesisResult &r) {
  ASSERT_TRUE(r.found);
  NestedCheck n = check_nested(r.polyhedron, r.tuple);
  EXPECT_TRUE(n.valid);
  EXPECT_TRUE(check_mlrf(r.polyhedron, r.tuple).valid);
  EXPECT_EQ(r.certs.size(), r.depth + 1);
  // Certificate 0 is f_d >= 0 on the analysed polyhedron.
  EXPECT_TRUE(verify_certificate(r.polyhedron, on_pre_state(r.tuple.components.back()),
                                 r.certs[0]));
}

} // namespace

TEST(Synthesis, L1NeedsThreePhases) {
  SlcLoop l = fixtures::loop("L1");
  SynthesisResult r = synth_mlrf(l, 5);
  expect_certified(r);
  EXPECT_EQ(r.depth, 3u);
  EXPECT_FALSE(r.hull_applied);
  // Ascending search: depths 1 and 2 were tried and failed.
  EXPECT_FALSE(synth_nested(r.polyhedron, 2).found);
  EXPECT_FALSE(synth_mlrf(l, 2).found);
}

TEST(Synthesis, L3RationalVersusInteger) {
  SlcLoop l = fixtures::loop("L3");
  SynthesisResult rat = synth_mlrf(l, 5);
  EXPECT_FALSE(rat.found);
  EXPECT_EQ(rat.max_depth, 5u);
  l.domain = Domain::Integer;
  SynthesisResult in = synth_mlrf(l, 5);
  expect_certified(in);
  EXPECT_EQ(in.depth, 1u);
  EXPECT_TRUE(in.hull_applied);
  RankTuple reference = fixtures::tuple("L3", l);
  EXPECT_TRUE(check_mlrf(in.polyhedron, reference).valid);
  // Over the rationals the same function does not rank (1/2, 1/2).
  EXPECT_FALSE(check_mlrf(transition_polyhedron(l), reference).valid);
}

TEST(Synthesis, L4RationalVersusInteger) {
  SlcLoop l = fixtures::loop("L4");
  EXPECT_FALSE(synth_mlrf(l, 5).found);
  l.domain = Domain::Integer;
  SynthesisResult in = synth_mlrf(l, 2);
  expect_certified(in);
  EXPECT_LE(in.depth, 2u);
  EXPECT_TRUE(check_mlrf(in.polyhedron, fixtures::tuple("L4", l)).valid);
}

TEST(Synthesis, L5DepthGrowsWithB) {
  for (int b = 1; b <= 3; ++b) {
    SlcLoop l = fixtures::loop("L5_B" + std::to_string(b));
    Polyhedron q = analysis_polyhedron(l);
    for (int d = 1; d <= b; ++d)
      EXPECT_FALSE(synth_nested(q, std::size_t(d)).found) << "B=" << b << " d=" << d;
    SynthesisResult r = synth_mlrf(l, std::size_t(b + 1));
    expect_certified(r);
    EXPECT_EQ(r.depth, std::size_t(b + 1));
  }
}

TEST(Synthesis, InfeasibleLoopIsVacuous) {
  SlcLoop l = parse_loop("vars x\nguard x >= 1\nguard x <= 0\nupdate x' = x\n");
  SynthesisResult r = synth_mlrf(l, 1);
  EXPECT_TRUE(r.found);
  EXPECT_TRUE(r.vacuous);
  EXPECT_EQ(r.depth, 0u);
  EXPECT_TRUE(check_mlrf(r.polyhedron, r.tuple).valid);
}

TEST(Synthesis, LrfOnly) {
  LrfResult r = synth_lrf(fixtures::loop("L6"));
  EXPECT_FALSE(r.found);
  SlcLoop down = parse_loop("vars x\nguard x >= 0\nupdate x' <= x - 1\n");
  LrfResult s = synth_lrf(down);
  ASSERT_TRUE(s.found);
  EXPECT_TRUE(check_mlrf(transition_polyhedron(down), s.detail.tuple).valid);
}

TEST(Synthesis, RejectsBadInput) {
  SlcLoop l = fixtures::loop("L6");
  EXPECT_THROW(synth_mlrf(l, 0), PreconditionError);
  EXPECT_THROW(synth_nested(Polyhedron(3), 1), DimensionError);
}

// Found at depth d stays found at d + 1, on fixtures and random loops.
TEST(Synthesis, MonotoneInDepth) {
  std::mt19937_64 rng(11);
  std::vector<Polyhedron> qs;
  for (const char *name : {"L1", "L2", "L6"})
    qs.push_back(analysis_polyhedron(fixtures::loop(name)));
  for (int k = 0; k < 40; ++k)
    qs.push_back(transition_polyhedron(oracle::random_loop(rng)));
  for (const auto &q : qs) {
    bool before = false;
    for (std::size_t d = 1; d <= 4; ++d) {
      bool now = synth_nested(q, d).found;
      if (before)
        EXPECT_TRUE(now) << q.dump();
      before = now;
    }
  }
}

// Exhaustive search over small integer LRFs: whenever one exists, depth-1
// synthesis must find one too.
TEST(Synthesis, CompleteAgainstLrfEnumeration) {
  std::mt19937_64 rng(5);
  std::size_t with_lrf = 0;
  for (int k = 0; k < 40; ++k) {
    Polyhedron q = transition_polyhedron(oracle::random_loop(rng));
    bool exists = false;
    for (int a = -2; a <= 2 && !exists; ++a)
      for (int b = -2; b <= 2 && !exists; ++b)
        for (int c = -3; c <= 3 && !exists; ++c) {
          RankTuple t;
          AffineFunc f(2);
          f.coeffs << a, b;
          f.constant = c;
          t.components.push_back(f);
          exists = check_mlrf(q, t).valid;
        }
    with_lrf += exists;
    if (exists)
      EXPECT_TRUE(synth_nested(q, 1).found) << q.dump();
  }
  EXPECT_GT(with_lrf, 3u);
}

TEST(Reduce, DropsRedundantComponents) {
  SlcLoop l = fixtures::loop("L6");
  Polyhedron q = transition_polyhedron(l);
  RankTuple t = fixtures::tuple("L6", l);
  RankTuple padded = t;
  padded.components.push_back(t.components[1]);
  RankTuple r = reduce_irredundant(q, padded);
  ASSERT_EQ(r.depth(), 2u);
  EXPECT_EQ(r.components[0], t.components[0]);
  EXPECT_EQ(r.components[1], t.components[1]);

  SlcLoop l1 = fixtures::loop("L1");
  RankTuple t1 = fixtures::tuple("L1", l1);
  EXPECT_EQ(reduce_irredundant(transition_polyhedron(l1), t1).depth(), 3u);
  std::swap(padded.components[0], padded.components[1]);
  EXPECT_THROW(reduce_irredundant(q, padded), PreconditionError);
}

TEST(ToNested, L1ReferenceTuple) {
  SlcLoop l = fixtures::loop("L1");
  Polyhedron q = transition_polyhedron(l);
  RankTuple t = fixtures::tuple("L1", l);
  RankTuple n = mlrf_to_nested(q, t);
  EXPECT_EQ(n.kind, TupleKind::Nested);
  EXPECT_LE(n.depth(), 3u);
  EXPECT_TRUE(check_nested(q, n).valid);
}

TEST(ToNested, AlreadyNestedOrTwoPhases) {
  SlcLoop l6 = fixtures::loop("L6");
  Polyhedron q6 = transition_polyhedron(l6);
  RankTuple n6 = mlrf_to_nested(q6, fixtures::tuple("L6", l6));
  EXPECT_EQ(n6.depth(), 2u);
  EXPECT_TRUE(check_nested(q6, n6).valid);

  SlcLoop l2 = fixtures::loop("L2");
  Polyhedron q2 = transition_polyhedron(l2);
  RankTuple n2 = mlrf_to_nested(q2, fixtures::tuple("L2_mlrf", l2));
  EXPECT_LE(n2.depth(), 2u);
  EXPECT_TRUE(check_nested(q2, n2).valid);
}

// Random multiphase tuples (found by filtering small integer candidates) all
// convert to nested ones of no greater depth.
TEST(ToNested, RandomTuples) {
  std::mt19937_64 rng(17);
  std::size_t converted = 0;
  for (int k = 0; k < 400 && converted < 25; ++k) {
    Polyhedron q = transition_polyhedron(oracle::random_loop(rng));
    if (!is_feasible(q))
      continue;
    RankTuple t = oracle::random_tuple(rng, 2 + std::size_t(k % 2));
    if (!check_mlrf(q, t).valid)
      continue;
    RankTuple n = mlrf_to_nested(q, t);
    EXPECT_LE(n.depth(), t.depth());
    EXPECT_TRUE(check_nested(q, n).valid) << q.dump();
    ++converted;
  }
  EXPECT_GE(converted, 10u);
}
