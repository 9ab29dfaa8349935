#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "mlrf/errors.hpp"
#include "mlrf/simulator.hpp"

using namespace mlrf;

namespace {

RatVec vec(std::initializer_list<long> xs) {
  RatVec v(Eigen::Index(xs.size()));
  Eigen::Index i = 0;
  for (long x : xs)
    v[i++] = x;
  return v;
}

} // namespace

TEST(Simulator, L6Trace) {
  SlcLoop l = fixtures::loop("L6");
  Trace tr = run_loop(l, vec({1, 3}));
  EXPECT_EQ(tr.outcome, TraceOutcome::Terminated);
  EXPECT_EQ(tr.steps, 8u);
  ASSERT_EQ(tr.states.size(), 9u);
  const long xs[] = {1, 4, 6, 7, 7, 6, 4, 1, -3};
  for (std::size_t t = 0; t < 9; ++t) {
    EXPECT_EQ(tr.states[t][0], Rational(xs[t]));
    EXPECT_EQ(tr.states[t][1], Rational(3 - long(t)));
  }
  RankTuple f = fixtures::tuple("L6", l);
  TraceRanking r = check_tuple_on_trace(f, tr);
  EXPECT_TRUE(r.all_ranked);
  EXPECT_EQ(r.phase, (std::vector<std::size_t>{1, 1, 1, 1, 1, 2, 2, 2}));
  EXPECT_EQ(r.values.size(), 9u);
  EXPECT_EQ(r.values[0][0], Rational(4));

  std::ostringstream csv;
  write_trace_csv(csv, tr, l.var_names, &f);
  std::string text = csv.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "x,y,f1,f2");
  EXPECT_NE(text.find("\n-3,-5,-4,-3\n"), std::string::npos);
}

TEST(Simulator, GuardFalseAtStart) {
  SlcLoop l = fixtures::loop("L1");
  Trace tr = run_loop(l, vec({0, 0, -1}));
  EXPECT_EQ(tr.steps, 0u);
  EXPECT_EQ(tr.states.size(), 1u);
}

TEST(Simulator, MaxSteps) {
  SlcLoop l = parse_loop("vars x\nguard x >= 0\nupdate x' = x + 1\n");
  Trace tr = run_loop(l, vec({0}), 100, false);
  EXPECT_EQ(tr.outcome, TraceOutcome::MaxStepsReached);
  EXPECT_EQ(tr.steps, 100u);
  EXPECT_EQ(tr.states.back()[0], Rational(100));
}

TEST(Simulator, RationalUpdates) {
  SlcLoop l = parse_loop("vars x\nguard x >= 1\nupdate 2x' = x\n");
  Trace tr = run_loop(l, vec({8}));
  EXPECT_EQ(tr.steps, 4u);
  EXPECT_EQ(tr.states.back()[0], Rational(1, 2));
}

TEST(Simulator, NondeterministicRejected) {
  SlcLoop l = parse_loop("vars x\nguard x >= 0\nupdate x' <= x - 1\n");
  EXPECT_THROW(deterministic_update(l), PreconditionError);
  EXPECT_THROW(run_loop(l, vec({3})), PreconditionError);
  SlcLoop two = parse_loop("vars x\nguard x >= 0\nupdate x' = x - 1\nupdate x' = 2 - x\n");
  EXPECT_THROW(deterministic_update(two), PreconditionError);
}

TEST(Simulator, SideConditionsStopTheLoop) {
  SlcLoop l = parse_loop("vars x\nguard x >= 0\nupdate x' = x + 1\nupdate x <= 4\n");
  UpdateMap m = deterministic_update(l);
  EXPECT_EQ(m.side_conditions.size(), 1u);
  Trace tr = run_loop(l, vec({0}));
  EXPECT_EQ(tr.steps, 5u);
}

TEST(Simulator, UnrankedStep) {
  SlcLoop l = fixtures::loop("L6");
  Trace tr = run_loop(l, vec({1, 3}));
  RankTuple t = parse_tuple("component -1\n", l.var_names);
  TraceRanking r = check_tuple_on_trace(t, tr);
  EXPECT_FALSE(r.all_ranked);
  EXPECT_EQ(r.unranked_at, 0u);
}
