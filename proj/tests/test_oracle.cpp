#include <gtest/gtest.h>

#include <random>

#include "mlrf/llrf.hpp"
#include "oracle.hpp"

using namespace mlrf;

namespace {

constexpr oracle::i64 kBox = 5;

RankTuple tuple_for(const Polyhedron &q, std::mt19937_64 &rng, std::size_t k) {
  std::uniform_int_distribution<std::size_t> depth(1, 3);
  if (k % 2 == 0) {
    for (std::size_t d = 1; d <= 3; ++d) {
      NestedSynthesis s = synth_nested(q, d);
      if (s.found && !s.vacuous)
        return s.tuple;
    }
  }
  return oracle::random_tuple(rng, depth(rng));
}

} // namespace

TEST(Oracle, IntegerCheckersMatchBruteForce) {
  std::mt19937_64 rng(20240611);
  std::size_t valid_m = 0, valid_l = 0, valid_w = 0;
  for (std::size_t k = 0; k < 60; ++k) {
    SlcLoop loop = oracle::random_loop(rng);
    Polyhedron q = oracle::boxed(transition_polyhedron(loop), kBox);
    RankTuple t = tuple_for(q, rng, k);
    oracle::BruteResult brute = oracle::brute_force(q, t, kBox);

    SCOPED_TRACE(q.dump({"x", "y", "x'", "y'"}));
    EXPECT_EQ(check_mlrf_int(q, t).valid, brute.mlrf);
    EXPECT_EQ(check_bmsllrf_int(q, t, false).valid, brute.llrf);
    EXPECT_EQ(check_bmsllrf_int(q, t, true).valid, brute.weak_llrf);
    // The rational checkers quantify over more points.
    if (check_mlrf(q, t).valid)
      EXPECT_TRUE(brute.mlrf);
    if (check_bmsllrf(q, t, false).valid)
      EXPECT_TRUE(brute.llrf);
    valid_m += brute.mlrf;
    valid_l += brute.llrf;
    valid_w += brute.weak_llrf;
  }
  EXPECT_GT(valid_m, 5u);
  EXPECT_GT(valid_l, 5u);
  EXPECT_GT(valid_w, 5u);
}

TEST(Oracle, PointwiseHelpersMatchBruteForce) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 300; ++k) {
    RankTuple t = oracle::random_tuple(rng, 1 + std::size_t(k % 3));
    std::uniform_int_distribution<int> v(-4, 4);
    std::vector<oracle::i64> xx{v(rng), v(rng), v(rng), v(rng)};
    RatVec p(4);
    p << xx[0], xx[1], xx[2], xx[3];
    auto comps = oracle::components(t);
    EXPECT_EQ(mlrf_rank_index(t, p) != 0, oracle::mlrf_ranked(comps, xx, 2));
    EXPECT_EQ(llrf_rank_index(t, p, false) != 0,
              oracle::llrf_ranked(comps, xx, 2, false));
    EXPECT_EQ(llrf_rank_index(t, p, true) != 0,
              oracle::llrf_ranked(comps, xx, 2, true));
  }
}
