#pragma once

#include <array>
#include <span>
#include <vector>

#include "stopwright/payoffs.hpp"
#include "stopwright/space.hpp"
#include "stopwright/stopping_time.hpp"

namespace stopwright {

enum class Player { kOne, kTwo };

inline Player opponent(Player p) {
  return p == Player::kOne ? Player::kTwo : Player::kOne;
}

// The set of players stopping at the termination time: {1}, {2} or {1,2}.
enum class Coalition { kFirst, kSecond, kBoth };

// If neither player ever stops the coalition is {1,2}.
Coalition coalition_of(Time first, Time second);

// Two-player stopping game: one payoff process per (player, coalition).
struct StoppingGame {
  std::array<AdaptedProcess, 6> payoffs;

  AdaptedProcess& payoff(Player j, Coalition c) {
    return payoffs[index(j, c)];
  }
  const AdaptedProcess& payoff(Player j, Coalition c) const {
    return payoffs[index(j, c)];
  }

  static StoppingGame constant(const FilteredSpace& space,
                               const Rational& first, const Rational& second);
  bool fits(const FilteredSpace& space) const;
  // X^{1,C} + X^{2,C} = 0 for every coalition, time and atom.
  bool is_zero_sum() const;

  friend bool operator==(const StoppingGame&, const StoppingGame&) = default;

 private:
  static std::size_t index(Player j, Coalition c) {
    return static_cast<std::size_t>(j) * 3 + static_cast<std::size_t>(c);
  }
};

// The same game with the players' roles exchanged.
StoppingGame swap_players(const StoppingGame& game);

// mass[atom][slot1][slot2]: joint law of (outcome, stop of 1, stop of 2)
// under independent randomization.
struct JointStoppingMeasure {
  std::vector<std::vector<std::vector<Rational>>> mass;

  StoppingMeasure marginal(Player j) const;
  friend bool operator==(const JointStoppingMeasure&,
                         const JointStoppingMeasure&) = default;
};

JointStoppingMeasure joint_detailed_distribution(const StoppingTime& first,
                                                 const StoppingTime& second,
                                                 const FilteredSpace& space);

struct GamePayoff {
  Rational first;
  Rational second;
  friend bool operator==(const GamePayoff&, const GamePayoff&) = default;
};

GamePayoff game_payoff(const StoppingTime& first, const StoppingTime& second,
                       const StoppingGame& game, const FilteredSpace& space);

// Returns equivalent(a, b). Each probe's joint distributions are compared as
// well; a probe result that disagrees throws Error(kConsistencyFailure).
bool game_equivalent(const StoppingTime& a, const StoppingTime& b,
                     const FilteredSpace& space,
                     std::span<const StoppingTime> probes);

// The single-player problem faced by `responder` when the other player uses
// `other`, with the other player's randomization averaged out:
// payoff(s, aux) equals the responder's game payoff against `other` for every
// stopping time s of any representation.
StoppingProblem auxiliary_problem(const StoppingTime& other,
                                  const StoppingGame& game, Player responder,
                                  const FilteredSpace& space);

struct BestResponse {
  Rational value;
  PureStoppingTime strategy;
};

BestResponse best_response_value(const StoppingTime& other,
                                 const StoppingGame& game, Player responder,
                                 const FilteredSpace& space);

// Exact solution of the 2x2 zero-sum game
//              2 stops   2 continues
//   1 stops  [ both      first_alone ]
//   1 cont.  [ second_alone  both_continue ]
// from player 1's (maximizer's) point of view. Pure saddle points are
// searched first, in the order (stop,stop), (stop,cont), (cont,stop),
// (cont,cont); otherwise the closed-form mixed solution is used.
struct StopMatrixSolution {
  Rational value;
  Rational first_stop;   // probability player 1 stops
  Rational second_stop;  // probability player 2 stops
  bool saddle = false;
};

StopMatrixSolution solve_stop_matrix(const Rational& both,
                                     const Rational& first_alone,
                                     const Rational& second_alone,
                                     const Rational& both_continue);

struct ZeroSumSolution {
  Rational value;
  BehaviorStoppingTime first;
  BehaviorStoppingTime second;
  std::vector<BlockValues> values;  // values[n-1][block], player 1's view
};

// Backward induction over the F_n-atoms, solving one stop/continue matrix
// game per atom. Throws Error(kNotZeroSum) for a nonzero-sum game.
ZeroSumSolution zero_sum_value(const StoppingGame& game,
                               const FilteredSpace& space);

// No unilateral deviation (to any stopping time of any representation)
// gains more than epsilon for either player.
bool check_epsilon_equilibrium(const StoppingTime& first,
                               const StoppingTime& second,
                               const StoppingGame& game,
                               const Rational& epsilon,
                               const FilteredSpace& space);

}  // namespace stopwright
