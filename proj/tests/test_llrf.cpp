#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "mlrf/errors.hpp"
#include "mlrf/llrf.hpp"
#include "mlrf/synthesis.hpp"
#include "oracle.hpp"

using namespace mlrf;

TEST(Bms, L2ReferenceTuple) {
  SlcLoop l = fixtures::loop("L2");
  Polyhedron q = transition_polyhedron(l);
  RankTuple t = fixtures::tuple("L2", l, TupleKind::BmsLlrf);
  EXPECT_TRUE(check_bmsllrf(q, t, false).valid);
  EXPECT_TRUE(check_bmsllrf(q, t, true).valid);
  MlrfCheck m = check_mlrf(q, t);
  EXPECT_FALSE(m.valid);
  EXPECT_TRUE(m.residual.contains(m.witness));
  EXPECT_TRUE(check_mlrf(q, fixtures::tuple("L2_mlrf", l)).valid);
}

TEST(Bms, WitnessIsUnranked) {
  SlcLoop l = fixtures::loop("L2");
  Polyhedron q = transition_polyhedron(l);
  RankTuple t = fixtures::tuple("L2", l);
  std::swap(t.components[0], t.components[1]);
  LlrfCheck c = check_bmsllrf(q, t, false);
  ASSERT_FALSE(c.valid);
  EXPECT_TRUE(q.contains(c.witness));
  EXPECT_EQ(llrf_rank_index(t, c.witness, false), 0u);
}

TEST(Bms, WeakAcceptsSlowDecrease) {
  // x decreases by 1/2 per step: a weak lexicographic function, not a strict one.
  SlcLoop l = parse_loop("vars x\nguard x >= 0\nupdate 2x' = 2x - 1\n");
  Polyhedron q = transition_polyhedron(l);
  RankTuple t = parse_tuple("component x\n", l.var_names);
  EXPECT_FALSE(check_bmsllrf(q, t, false).valid);
  EXPECT_TRUE(check_bmsllrf(q, t, true).valid);
  RankTuple m = llrf_to_mlrf(q, t, true);
  ASSERT_EQ(m.depth(), 1u);
  EXPECT_TRUE(check_mlrf(q, m).valid);
  EXPECT_EQ(m.components[0].coeffs[0], Rational(2));
}

TEST(Convert, L2ToMultiphase) {
  SlcLoop l = fixtures::loop("L2");
  Polyhedron q = transition_polyhedron(l);
  RankTuple t = fixtures::tuple("L2", l);
  for (bool weak : {false, true}) {
    RankTuple m = llrf_to_mlrf(q, t, weak);
    EXPECT_EQ(m.kind, TupleKind::Mlrf);
    EXPECT_LE(m.depth(), 2u);
    EXPECT_TRUE(check_mlrf(q, m).valid);
  }
}

TEST(Convert, RejectsInvalidInput) {
  SlcLoop l = fixtures::loop("L2");
  Polyhedron q = transition_polyhedron(l);
  RankTuple t = fixtures::tuple("L2", l);
  std::swap(t.components[0], t.components[1]);
  EXPECT_THROW(llrf_to_mlrf(q, t, false), PreconditionError);
}

TEST(Convert, EmptyLoop) {
  RankTuple t;
  t.components.push_back(AffineFunc(1));
  EXPECT_EQ(llrf_to_mlrf(Polyhedron::empty(2), t, false).depth(), 0u);
}

// Multiphase implies lexicographic; strict implies weak; every valid
// lexicographic tuple converts to a multiphase one of no greater depth.
TEST(Convert, RandomProperties) {
  std::mt19937_64 rng(23);
  std::size_t converted = 0, strict_only = 0;
  for (int k = 0; k < 600; ++k) {
    Polyhedron q = transition_polyhedron(oracle::random_loop(rng));
    if (!is_feasible(q))
      continue;
    RankTuple t = oracle::random_tuple(rng, 1 + std::size_t(k % 3));
    bool mlrf = check_mlrf(q, t).valid;
    bool strict = check_bmsllrf(q, t, false).valid;
    bool weak = check_bmsllrf(q, t, true).valid;
    if (mlrf)
      EXPECT_TRUE(strict);
    if (strict)
      EXPECT_TRUE(weak);
    if (!weak)
      continue;
    strict_only += strict;
    RankTuple m = llrf_to_mlrf(q, t, !strict);
    EXPECT_LE(m.depth(), t.depth());
    EXPECT_TRUE(check_mlrf(q, m).valid) << q.dump();
    ++converted;
  }
  EXPECT_GE(converted, 20u);
  EXPECT_GE(strict_only, 10u);
}

// A synthesized multiphase tuple survives the trip through the lexicographic
// checker and back.
TEST(Convert, RoundTripFromSynthesis) {
  for (const char *name : {"L1", "L6", "L5_B2"}) {
    SlcLoop l = fixtures::loop(name);
    SynthesisResult r = synth_mlrf(l, 4);
    ASSERT_TRUE(r.found) << name;
    EXPECT_TRUE(check_bmsllrf(r.polyhedron, r.tuple, false).valid) << name;
    RankTuple back = llrf_to_mlrf(r.polyhedron, r.tuple, false);
    EXPECT_LE(back.depth(), r.depth);
    EXPECT_TRUE(check_mlrf(r.polyhedron, back).valid) << name;
  }
}
