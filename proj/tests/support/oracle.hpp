#pragma once

#include <optional>
#include <vector>

#include "stopwright/games.hpp"
#include "stopwright/payoffs.hpp"
#include "stopwright/space.hpp"
#include "stopwright/stopping_time.hpp"

// Reference computations written directly from the definitions, sharing no
// code with the library beyond the space accessors.
namespace stopwright::testing {

// Detailed distribution straight from the per-type formulas.
MassTable oracle_mass(const StoppingTime& st, const FilteredSpace& space);

// Every pure stopping time on the space.
std::vector<PureStoppingTime> all_pure(const FilteredSpace& space);
std::size_t count_pure(const FilteredSpace& space);

// sum over (atom, time) of mass * X.
Rational oracle_payoff(const MassTable& mass, const AdaptedProcess& x,
                       const FilteredSpace& space);

// Maximum of the payoff over all pure stopping times.
Rational brute_snell(const StoppingProblem& x, const FilteredSpace& space);

struct OraclePayoffs {
  Rational first;
  Rational second;
};

// Game payoffs from the product of the two detailed distributions.
OraclePayoffs oracle_game_payoff(const StoppingTime& first,
                                 const StoppingTime& second,
                                 const StoppingGame& game,
                                 const FilteredSpace& space);

// Maximum of the responder's payoff over all pure stopping times.
Rational brute_best_response(const StoppingTime& other, const StoppingGame& game,
                             Player responder, const FilteredSpace& space);

// Value of a pure saddle of the 2x2 game [[a, b], [c, d]] (rows: player 1
// stop/continue, columns: player 2 stop/continue; player 1 maximizes).
std::optional<Rational> pure_saddle(const Rational& a, const Rational& b,
                                    const Rational& c, const Rational& d);

}  // namespace stopwright::testing
