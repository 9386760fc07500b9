#pragma once

#include <optional>
#include <vector>

#include "stopwright/space.hpp"
#include "stopwright/stopping_time.hpp"

namespace stopwright {

// Optimal stopping problem: stopping at n pays process(n), never stopping
// pays the infinity slot.
struct StoppingProblem {
  AdaptedProcess process;

  friend bool operator==(const StoppingProblem&,
                         const StoppingProblem&) = default;
};

// Throws Error(kSpaceMismatch) if the process tables do not fit the space.
void require_fits(const StoppingProblem& x, const FilteredSpace& space);

// Sum over (atom, n) of nu(atom, n) * X_n(atom).
Rational bilinear_payoff(const StoppingMeasure& nu, const StoppingProblem& x,
                         const FilteredSpace& space);

// Expected payoff evaluated with the representation's own formula, cross
// checked against bilinear_payoff of its detailed distribution; a mismatch
// throws Error(kConsistencyFailure).
Rational payoff(const StoppingTime& st, const StoppingProblem& x,
                const FilteredSpace& space);

struct SnellResult {
  Rational value;
  // Stops at the first n with X_n >= continuation value (earliest on ties).
  PureStoppingTime argmax;
  // envelope[n-1][block] = V_n on that F_n-atom.
  std::vector<BlockValues> envelope;
};

// Backward induction: V_T = max(X_T, X_inf), V_n = max(X_n, E[V_{n+1}|F_n]).
SnellResult snell_value(const StoppingProblem& x, const FilteredSpace& space);

// X_n = P(A | F_n) at the given time (F_T for never), zero elsewhere, so that
// payoff(st, witness) = nu_st(A x {n}).
StoppingProblem witness_problem(const Event& event, Time t,
                                const FilteredSpace& space);

struct Distinction {
  Event event;  // a single atom
  Time time;
  Rational first_mass;
  Rational second_mass;
  // payoff(first, witness) - payoff(second, witness) = first_mass - second_mass
  Rational gap;
};

// nullopt iff the two stopping times are equivalent; otherwise the first
// (atom, time) cell where their detailed distributions differ, scanning atoms
// in order and, within an atom, from never back to time 1.
std::optional<Distinction> distinguish(const StoppingTime& first,
                                       const StoppingTime& second,
                                       const FilteredSpace& space);

// payoff(st, X) >= snell_value(X).value - epsilon. Throws Error(kValidation)
// for negative epsilon.
bool check_epsilon_optimal(const StoppingTime& st, const StoppingProblem& x,
                           const Rational& epsilon, const FilteredSpace& space);

}  // namespace stopwright
