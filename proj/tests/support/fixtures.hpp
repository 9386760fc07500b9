#pragma once

#include <string>

#include "stopwright/games.hpp"
#include "stopwright/payoffs.hpp"
#include "stopwright/space.hpp"
#include "stopwright/stopping_time.hpp"

namespace stopwright::testing {

inline Rational q(const char* text) { return Rational::parse(text); }

// Four equally likely outcomes; F_1 = {A = {w1, w2}, B = {w3, w4}}, F_2 the
// singletons.
FilteredSpace e1();

// One outcome, one period.
FilteredSpace singleton();

// The randomized stopping time R1 on e1 and its behavior and mixed forms.
RandomizedStoppingTime r1();
BehaviorStoppingTime b1();
MixedStoppingTime m1();

// X_1 = 0, X_2 = 1, X_inf = 0 on e1.
StoppingProblem stop_at_two_problem();

// Per-atom process from explicit tables; levels[n-1] lists block values.
AdaptedProcess process(std::vector<std::vector<const char*>> levels,
                       std::vector<const char*> infinity);

// Singleton one-period zero-sum game with player 1 entries (s,s), (s,c),
// (c,s) at time 1 and (c,c) in the never slot.
StoppingGame singleton_zero_sum(const char* ss, const char* sc, const char* cs,
                                const char* cc);

std::string data_path(const std::string& name);

}  // namespace stopwright::testing
