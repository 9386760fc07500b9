#pragma once

#include <cstdint>
#include <random>

#include "stopwright/games.hpp"
#include "stopwright/payoffs.hpp"
#include "stopwright/space.hpp"
#include "stopwright/stopping_time.hpp"

namespace stopwright::testing {

// Seeded generator of random spaces, stopping times, problems and games.
// Probabilities use small denominators so exact arithmetic stays cheap.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi);
  bool coin(int num = 1, int den = 2);
  // k/d in [0,1] with d <= 6; the endpoints come up often.
  Rational unit();
  // Payoff value in [-5,5] with denominator <= 3.
  Rational value();

  FilteredSpace space(int max_depth = 4, int max_branch = 3);
  // A space with at most max_pure pure stopping times.
  FilteredSpace small_space(std::size_t max_pure = 25);

  PureStoppingTime pure(const FilteredSpace& space);
  RandomizedStoppingTime randomized(const FilteredSpace& space);
  BehaviorStoppingTime behavior(const FilteredSpace& space);
  MixedStoppingTime mixed(const FilteredSpace& space);
  StoppingTime of(Representation r, const FilteredSpace& space);
  StoppingTime any(const FilteredSpace& space);

  AdaptedProcess process(const FilteredSpace& space);
  StoppingProblem problem(const FilteredSpace& space) {
    return StoppingProblem{process(space)};
  }
  StoppingGame game(const FilteredSpace& space, bool zero_sum = false);

 private:
  std::mt19937_64 rng_;
};

}  // namespace stopwright::testing
