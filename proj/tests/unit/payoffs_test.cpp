#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "random.hpp"
#include "stopwright/conversions.hpp"
#include "stopwright/error.hpp"

namespace stopwright {
namespace {

using testing::e1;
using testing::process;
using testing::q;

TEST(Payoff, R1AgainstStopAtTwo) {
  EXPECT_EQ(payoff(testing::r1(), testing::stop_at_two_problem(), e1()), q("3/8"));
  EXPECT_EQ(payoff(testing::b1(), testing::stop_at_two_problem(), e1()), q("3/8"));
  EXPECT_EQ(payoff(testing::m1(), testing::stop_at_two_problem(), e1()), q("3/8"));
}

TEST(Payoff, ConstantProcess) {
  const FilteredSpace s = e1();
  const StoppingProblem x{AdaptedProcess::constant(s, q("-7/2"))};
  for (const StoppingTime& st :
       {StoppingTime{testing::r1()}, StoppingTime{testing::b1()},
        StoppingTime{testing::m1()},
        StoppingTime{PureStoppingTime::constant(s, Time::never())}})
    EXPECT_EQ(payoff(st, x, s), q("-7/2"));
}

TEST(Payoff, PureIndicator) {
  const FilteredSpace s = e1();
  const StoppingProblem x{process({{"1", "0"}, {"0", "0", "0", "0"}}, {"0", "0", "0", "0"})};
  EXPECT_EQ(payoff(PureStoppingTime::constant(s, Time::at(1)), x, s), q("1/2"));
}

TEST(Payoff, SpaceMismatch) {
  const StoppingProblem x{AdaptedProcess::zero(testing::singleton())};
  try {
    payoff(testing::r1(), x, e1());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSpaceMismatch);
  }
}

TEST(Snell, ConstantProcessStopsImmediately) {
  const FilteredSpace s = e1();
  const SnellResult r = snell_value({AdaptedProcess::constant(s, q("3"))}, s);
  EXPECT_EQ(r.value, q("3"));
  EXPECT_EQ(r.argmax, PureStoppingTime::constant(s, Time::at(1)));
}

TEST(Snell, HandExampleValueOne) {
  const FilteredSpace s = e1();
  const StoppingProblem x{process({{"1", "0"}, {"0", "2", "1", "1"}}, {"0", "0", "0", "0"})};
  const SnellResult r = snell_value(x, s);
  EXPECT_EQ(r.value, q("1"));
  EXPECT_EQ(testing::brute_snell(x, s), q("1"));
  EXPECT_EQ(payoff(r.argmax, x, s), q("1"));
  // Ties go to stopping: A stops at 1.
  EXPECT_EQ(r.argmax.stop[0], Time::at(1));
  EXPECT_EQ(r.argmax.stop[2], Time::at(2));
  EXPECT_EQ(r.envelope[0], (BlockValues{q("1"), q("1")}));
}

TEST(Snell, NeverStopDominates) {
  const FilteredSpace s = e1();
  const StoppingProblem x{process({{"0", "0"}, {"0", "0", "0", "0"}}, {"5", "5", "5", "5"})};
  const SnellResult r = snell_value(x, s);
  EXPECT_EQ(r.value, q("5"));
  EXPECT_EQ(r.argmax, PureStoppingTime::constant(s, Time::never()));
}

TEST(Witness, Examples) {
  const FilteredSpace s = e1();
  const StoppingProblem w = witness_problem(Event::of(s, {0, 1}), Time::at(1), s);
  EXPECT_EQ(w.process.values[0], (BlockValues{q("1"), q("0")}));
  EXPECT_EQ(payoff(testing::r1(), w, s), q("1/4"));

  const StoppingProblem all = witness_problem(Event::all(s), Time::at(2), s);
  EXPECT_EQ(payoff(testing::r1(), all, s), q("3/8"));

  const StoppingProblem none = witness_problem(Event::none(s), Time::never(), s);
  EXPECT_EQ(payoff(testing::r1(), none, s), q("0"));
}

TEST(Distinguish, Examples) {
  const FilteredSpace s = e1();
  EXPECT_FALSE(distinguish(testing::r1(), testing::b1(), s).has_value());
  EXPECT_FALSE(distinguish(testing::r1(), testing::r1(), s).has_value());
  const auto d =
      distinguish(testing::r1(), PureStoppingTime::constant(s, Time::at(1)), s);
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(d->event, Event::of(s, {0}));
  EXPECT_EQ(d->time, Time::at(2));
  EXPECT_EQ(d->first_mass, q("1/8"));
  EXPECT_EQ(d->second_mass, q("0"));
  EXPECT_EQ(d->gap, q("1/8"));
}

TEST(EpsilonOptimal, Threshold) {
  const FilteredSpace s = e1();
  const StoppingProblem x = testing::stop_at_two_problem();
  EXPECT_EQ(snell_value(x, s).value, q("1"));
  EXPECT_FALSE(check_epsilon_optimal(testing::r1(), x, q("0"), s));
  EXPECT_FALSE(check_epsilon_optimal(testing::r1(), x, q("624/1000"), s));
  EXPECT_TRUE(check_epsilon_optimal(testing::r1(), x, q("5/8"), s));
  EXPECT_TRUE(check_epsilon_optimal(testing::r1(), x, q("1"), s));
  EXPECT_TRUE(check_epsilon_optimal(snell_value(x, s).argmax, x, q("0"), s));
  EXPECT_TRUE(check_epsilon_optimal(testing::b1(),
                                    StoppingProblem{AdaptedProcess::constant(s, q("2"))},
                                    q("0"), s));
}

TEST(EpsilonOptimal, NegativeEpsilonRejected) {
  const FilteredSpace s = e1();
  try {
    check_epsilon_optimal(testing::r1(), testing::stop_at_two_problem(), q("-1"), s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidation);
  }
}

TEST(PayoffProperties, BilinearityWitnessAndSnellBounds) {
  testing::Gen gen(41);
  for (int i = 0; i < 40; ++i) {
    const FilteredSpace s = gen.small_space();
    const StoppingProblem x = gen.problem(s);
    const SnellResult snell = snell_value(x, s);
    EXPECT_EQ(snell.value, testing::brute_snell(x, s));
    EXPECT_EQ(payoff(snell.argmax, x, s), snell.value);
    for (const auto& sigma : testing::all_pure(s))
      EXPECT_LE(payoff(sigma, x, s), snell.value);
    for (int k = 0; k < 8; ++k) {
      const StoppingTime st = gen.any(s);
      const StoppingMeasure nu = detailed_distribution(st, s);
      EXPECT_EQ(payoff(st, x, s), testing::oracle_payoff(nu.mass, x.process, s));
      EXPECT_LE(payoff(st, x, s), snell.value);
      const std::size_t atom = static_cast<std::size_t>(
          gen.integer(0, static_cast<int>(s.num_atoms()) - 1));
      Event a = Event::of(s, {atom});
      if (gen.coin()) a.insert(0);
      const std::size_t slot =
          static_cast<std::size_t>(gen.integer(0, s.horizon()));
      const Time t = s.time_of_slot(slot);
      Rational mass;
      for (std::size_t w : a.atoms()) mass += nu.mass[w][slot];
      EXPECT_EQ(payoff(st, witness_problem(a, t, s), s), mass);
    }
  }
}

TEST(PayoffProperties, EpsilonOptimalityTransfers) {
  testing::Gen gen(42);
  for (int i = 0; i < 40; ++i) {
    const FilteredSpace s = gen.space(3, 3);
    const StoppingProblem x = gen.problem(s);
    const StoppingTime st = gen.any(s);
    const Rational eps = gen.unit() * Rational(3);
    const bool ok = check_epsilon_optimal(st, x, eps, s);
    for (Representation t : {Representation::kRandomized, Representation::kBehavior,
                             Representation::kMixed})
      EXPECT_EQ(check_epsilon_optimal(convert(st, t, s), x, eps, s), ok);
  }
}

}  // namespace
}  // namespace stopwright
