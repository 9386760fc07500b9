#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "random.hpp"
#include "stopwright/error.hpp"
#include "stopwright/monte_carlo.hpp"

namespace stopwright {
namespace {

using testing::e1;
using testing::q;

constexpr double kTolerance = 0.02;

TEST(SampleStopTime, PureConsumesNothing) {
  const FilteredSpace s = e1();
  const PureStoppingTime sigma{{Time::at(1), Time::at(1), Time::at(2), Time::never()}};
  FixedUniform none({});
  EXPECT_EQ(sample_stop_time(sigma, s, 3, none), Time::never());
  EXPECT_EQ(sample_stop_time(sigma, s, 2, none), Time::at(2));
  EXPECT_EQ(none.consumed(), 0u);
}

TEST(SampleStopTime, RandomizedCumulativeRule) {
  const FilteredSpace s = e1();
  FixedUniform u({0.3});
  EXPECT_EQ(sample_stop_time(testing::r1(), s, 0, u), Time::at(1));
  EXPECT_EQ(u.consumed(), 1u);
  FixedUniform boundary({0.5});
  EXPECT_EQ(sample_stop_time(testing::r1(), s, 1, boundary), Time::at(1));
  FixedUniform past({0.75});
  EXPECT_EQ(sample_stop_time(testing::r1(), s, 1, past), Time::never());
}

TEST(SampleStopTime, BehaviorOneDrawPerPeriod) {
  const FilteredSpace s = e1();
  FixedUniform u({0.5, 0.2});
  EXPECT_EQ(sample_stop_time(testing::b1(), s, 2, u), Time::at(2));
  EXPECT_EQ(u.consumed(), 2u);
  FixedUniform early({0.1, 0.9});
  EXPECT_EQ(sample_stop_time(testing::b1(), s, 2, early), Time::at(1));
  EXPECT_EQ(early.consumed(), 1u);
  FixedUniform late({0.5, 0.9});
  EXPECT_EQ(sample_stop_time(testing::b1(), s, 2, late), Time::never());
}

TEST(SampleStopTime, MixedHalfOpenIntervals) {
  const FilteredSpace s = e1();
  FixedUniform at_quarter({0.25});
  EXPECT_EQ(sample_stop_time(testing::m1(), s, 2, at_quarter), Time::at(1));
  FixedUniform above({0.26});
  EXPECT_EQ(sample_stop_time(testing::m1(), s, 2, above), Time::at(2));
  FixedUniform top({1.0});
  EXPECT_EQ(sample_stop_time(testing::m1(), s, 1, top), Time::never());
}

TEST(SampleStopTime, InvalidInput) {
  const FilteredSpace s = e1();
  FixedUniform u({0.5});
  RandomizedStoppingTime bad = testing::r1();
  bad.rho_inf[0] = q("1");
  EXPECT_THROW(sample_stop_time(bad, s, 0, u), Error);
  EXPECT_THROW(sample_stop_time(testing::r1(), s, 7, u), Error);
}

TEST(EngineUniform, RangeAndDeterminism) {
  EngineUniform a(7, 3, 1);
  EngineUniform b(7, 3, 1);
  EngineUniform c(7, 3, 2);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const double x = a.next();
    EXPECT_GT(x, 0.0);
    EXPECT_LE(x, 1.0);
    EXPECT_EQ(x, b.next());
    differs = differs || x != c.next();
  }
  EXPECT_TRUE(differs);
}

TEST(Empirical, PureConcentratesOnStopCells) {
  const FilteredSpace s = e1();
  const PureStoppingTime sigma{{Time::at(1), Time::at(1), Time::at(2), Time::never()}};
  const auto d = empirical_detailed_distribution(sigma, s, {20000, 5, 1});
  std::uint64_t total = 0;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t slot = 0; slot < 3; ++slot) {
      if (slot != s.slot(sigma.stop[a])) {
        EXPECT_EQ(d.counts[a][slot], 0u);
      }
      total += d.counts[a][slot];
    }
  EXPECT_EQ(total, 20000u);
}

TEST(Empirical, FixturesWithinTolerance) {
  const FilteredSpace s = e1();
  for (const StoppingTime& st : {StoppingTime{testing::r1()}, StoppingTime{testing::b1()},
                                 StoppingTime{testing::m1()}}) {
    const auto d = empirical_detailed_distribution(st, s, {100000, 2024, 1});
    EXPECT_LE(max_abs_deviation(d, detailed_distribution(st, s)), kTolerance);
  }
}

TEST(Empirical, ZeroSamplesRejected) {
  try {
    empirical_detailed_distribution(testing::r1(), e1(), {0, 1, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidation);
  }
}

TEST(Empirical, SeedDeterminismAndWorkerInvariance) {
  const FilteredSpace s = e1();
  const auto a = empirical_detailed_distribution(testing::b1(), s, {30000, 99, 1});
  const auto b = empirical_detailed_distribution(testing::b1(), s, {30000, 99, 1});
  const auto c = empirical_detailed_distribution(testing::b1(), s, {30000, 99, 4});
  const auto d = empirical_detailed_distribution(testing::b1(), s, {30000, 100, 1});
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_EQ(a.frequencies, b.frequencies);
  EXPECT_EQ(a.counts, c.counts);
  EXPECT_NE(a.counts, d.counts);
}

TEST(EmpiricalGame, ConstantGameIsExact) {
  const FilteredSpace s = e1();
  const StoppingGame g = StoppingGame::constant(s, q("3/8"), q("-5"));
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto r = empirical_game_payoff(testing::r1(), testing::b1(), g, s,
                                         {5000, seed, 2});
    EXPECT_EQ(r.first, 0.375);
    EXPECT_EQ(r.second, -5.0);
  }
}

TEST(EmpiricalGame, HalfHazardsWithinTolerance) {
  const FilteredSpace s = testing::singleton();
  const StoppingGame g = testing::singleton_zero_sum("2", "0", "0", "1");
  const BehaviorStoppingTime half{{{q("1/2")}}};
  const GamePayoff exact = game_payoff(half, half, g, s);
  const auto r = empirical_game_payoff(half, half, g, s, {100000, 8, 1});
  EXPECT_NEAR(r.first, exact.first.to_double(), kTolerance);
  EXPECT_NEAR(r.second, exact.second.to_double(), kTolerance);
}

TEST(EmpiricalGame, PureProfileOnlyOutcomeNoise) {
  const FilteredSpace s = testing::singleton();
  const StoppingGame g = testing::singleton_zero_sum("2", "3", "5", "7");
  const auto r = empirical_game_payoff(PureStoppingTime{{Time::at(1)}},
                                       PureStoppingTime{{Time::never()}}, g, s,
                                       {1000, 4, 1});
  EXPECT_EQ(r.first, 3.0);
}

TEST(EmpiricalJoint, FactorizesWithinTolerance) {
  const FilteredSpace s = e1();
  const auto joint =
      empirical_joint_distribution(testing::r1(), testing::b1(), s, {100000, 12, 2});
  const auto exact = joint_detailed_distribution(testing::r1(), testing::b1(), s);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t s1 = 0; s1 < 3; ++s1)
      for (std::size_t s2 = 0; s2 < 3; ++s2)
        EXPECT_NEAR(static_cast<double>(joint.counts[a][s1][s2]) / 100000.0,
                    exact.mass[a][s1][s2].to_double(), kTolerance);
}

}  // namespace
}  // namespace stopwright
