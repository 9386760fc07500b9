#include "stopwright/games.hpp"

#include "stopwright/conversions.hpp"
#include "stopwright/error.hpp"

namespace stopwright {

namespace {

constexpr std::array<Coalition, 3> kCoalitions{
    Coalition::kFirst, Coalition::kSecond, Coalition::kBoth};

Coalition alone(Player j) {
  return j == Player::kOne ? Coalition::kFirst : Coalition::kSecond;
}

void require_fits(const StoppingGame& game, const FilteredSpace& space) {
  if (!game.fits(space))
    throw Error(ErrorCode::kSpaceMismatch,
                "game payoff tables do not match the space");
}

}  // namespace

Coalition coalition_of(Time first, Time second) {
  if (first < second) return Coalition::kFirst;
  if (second < first) return Coalition::kSecond;
  return Coalition::kBoth;
}

StoppingGame StoppingGame::constant(const FilteredSpace& space,
                                    const Rational& first,
                                    const Rational& second) {
  StoppingGame g;
  for (Coalition c : kCoalitions) {
    g.payoff(Player::kOne, c) = AdaptedProcess::constant(space, first);
    g.payoff(Player::kTwo, c) = AdaptedProcess::constant(space, second);
  }
  return g;
}

bool StoppingGame::fits(const FilteredSpace& space) const {
  for (const auto& p : payoffs)
    if (!p.fits(space)) return false;
  return true;
}

bool StoppingGame::is_zero_sum() const {
  for (Coalition c : kCoalitions) {
    const auto& x1 = payoff(Player::kOne, c);
    const auto& x2 = payoff(Player::kTwo, c);
    if (x1.values.size() != x2.values.size() ||
        x1.infinity.size() != x2.infinity.size())
      return false;
    for (std::size_t s = 0; s < x1.values.size(); ++s) {
      if (x1.values[s].size() != x2.values[s].size()) return false;
      for (std::size_t b = 0; b < x1.values[s].size(); ++b)
        if (!(x1.values[s][b] + x2.values[s][b]).is_zero()) return false;
    }
    for (std::size_t a = 0; a < x1.infinity.size(); ++a)
      if (!(x1.infinity[a] + x2.infinity[a]).is_zero()) return false;
  }
  return true;
}

StoppingGame swap_players(const StoppingGame& game) {
  StoppingGame out;
  for (Player j : {Player::kOne, Player::kTwo}) {
    const Player k = opponent(j);
    out.payoff(j, alone(j)) = game.payoff(k, alone(k));
    out.payoff(j, alone(k)) = game.payoff(k, alone(j));
    out.payoff(j, Coalition::kBoth) = game.payoff(k, Coalition::kBoth);
  }
  return out;
}

StoppingMeasure JointStoppingMeasure::marginal(Player j) const {
  StoppingMeasure nu;
  for (const auto& plane : mass) {
    const std::size_t slots = plane.size();
    std::vector<Rational> row(slots);
    for (std::size_t s1 = 0; s1 < slots; ++s1)
      for (std::size_t s2 = 0; s2 < slots; ++s2)
        row[j == Player::kOne ? s1 : s2] += plane[s1][s2];
    nu.mass.push_back(std::move(row));
  }
  return nu;
}

JointStoppingMeasure joint_detailed_distribution(const StoppingTime& first,
                                                 const StoppingTime& second,
                                                 const FilteredSpace& space) {
  const StoppingMeasure nu1 = detailed_distribution(first, space);
  const StoppingMeasure nu2 = detailed_distribution(second, space);
  const std::size_t slots = space.num_slots();
  JointStoppingMeasure joint;
  joint.mass.resize(space.num_atoms());
  for (std::size_t a = 0; a < space.num_atoms(); ++a) {
    auto& plane = joint.mass[a];
    plane.assign(slots, std::vector<Rational>(slots));
    // p * d1 * d2 with d = nu / p
    for (std::size_t s1 = 0; s1 < slots; ++s1) {
      if (nu1.mass[a][s1].is_zero()) continue;
      for (std::size_t s2 = 0; s2 < slots; ++s2)
        plane[s1][s2] = nu1.mass[a][s1] * nu2.mass[a][s2] / space.prob(a);
    }
  }
  return joint;
}

GamePayoff game_payoff(const StoppingTime& first, const StoppingTime& second,
                       const StoppingGame& game, const FilteredSpace& space) {
  require_fits(game, space);
  const JointStoppingMeasure joint =
      joint_detailed_distribution(first, second, space);
  GamePayoff out;
  const std::size_t slots = space.num_slots();
  for (std::size_t a = 0; a < space.num_atoms(); ++a) {
    for (std::size_t s1 = 0; s1 < slots; ++s1) {
      for (std::size_t s2 = 0; s2 < slots; ++s2) {
        const Rational& m = joint.mass[a][s1][s2];
        if (m.is_zero()) continue;
        const Time t1 = space.time_of_slot(s1);
        const Time t2 = space.time_of_slot(s2);
        const Coalition c = coalition_of(t1, t2);
        const Time end = std::min(t1, t2);
        out.first += m * game.payoff(Player::kOne, c).at(space, end, a);
        out.second += m * game.payoff(Player::kTwo, c).at(space, end, a);
      }
    }
  }
  return out;
}

bool game_equivalent(const StoppingTime& a, const StoppingTime& b,
                     const FilteredSpace& space,
                     std::span<const StoppingTime> probes) {
  const bool exact = equivalent(a, b, space);
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const bool same = joint_detailed_distribution(a, probes[i], space) ==
                      joint_detailed_distribution(b, probes[i], space);
    if (same != exact)
      throw Error(ErrorCode::kConsistencyFailure,
                  "probe " + std::to_string(i) +
                      " disagrees with the detailed-distribution comparison");
  }
  return exact;
}

StoppingProblem auxiliary_problem(const StoppingTime& other,
                                  const StoppingGame& game, Player responder,
                                  const FilteredSpace& space) {
  require_fits(game, space);
  const auto hazard = std::get<BehaviorStoppingTime>(
      convert(other, Representation::kBehavior, space));
  const AdaptedProcess& mine_alone = game.payoff(responder, alone(responder));
  const AdaptedProcess& theirs_alone =
      game.payoff(responder, alone(opponent(responder)));
  const AdaptedProcess& both = game.payoff(responder, Coalition::kBoth);

  StoppingProblem aux{AdaptedProcess::zero(space)};
  // survive[a]: probability the other player has not stopped before n.
  // earned[a]: expected payoff already collected from the other player
  // stopping alone before n.
  AtomValues survive(space.num_atoms(), Rational(1));
  AtomValues earned(space.num_atoms());
  for (int n = 1; n <= space.horizon(); ++n) {
    const auto s = static_cast<std::size_t>(n - 1);
    for (std::size_t b = 0; b < space.num_blocks(n); ++b) {
      const auto atoms = space.block_atoms(n, b);
      const std::size_t rep = atoms.front();
      const Rational& q = hazard.beta[s][b];
      const Time t = Time::at(n);
      aux.process.values[s][b] =
          earned[rep] + survive[rep] * (q * both.at(space, t, rep) +
                                        (Rational(1) - q) *
                                            mine_alone.at(space, t, rep));
      const Rational collected =
          survive[rep] * q * theirs_alone.at(space, t, rep);
      for (std::size_t a : atoms) {
        earned[a] += collected;
        survive[a] *= Rational(1) - q;
      }
    }
  }
  for (std::size_t a = 0; a < space.num_atoms(); ++a)
    aux.process.infinity[a] = earned[a] + survive[a] * both.infinity[a];
  return aux;
}

BestResponse best_response_value(const StoppingTime& other,
                                 const StoppingGame& game, Player responder,
                                 const FilteredSpace& space) {
  SnellResult snell =
      snell_value(auxiliary_problem(other, game, responder, space), space);
  return {std::move(snell.value), std::move(snell.argmax)};
}

StopMatrixSolution solve_stop_matrix(const Rational& both,
                                     const Rational& first_alone,
                                     const Rational& second_alone,
                                     const Rational& both_continue) {
  const std::array<std::array<Rational, 2>, 2> m{
      {{both, first_alone}, {second_alone, both_continue}}};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Rational& v = m[i][j];
      const bool row_min = v <= m[i][1 - j];
      const bool col_max = v >= m[1 - i][j];
      if (row_min && col_max)
        return {v, Rational(i == 0 ? 1 : 0), Rational(j == 0 ? 1 : 0), true};
    }
  }
  // Without a saddle point the denominator cannot vanish.
  const Rational denom = both - first_alone - second_alone + both_continue;
  return {(both * both_continue - first_alone * second_alone) / denom,
          (both_continue - second_alone) / denom,
          (both_continue - first_alone) / denom, false};
}

ZeroSumSolution zero_sum_value(const StoppingGame& game,
                               const FilteredSpace& space) {
  require_fits(game, space);
  if (!game.is_zero_sum())
    throw Error(ErrorCode::kNotZeroSum,
                "X^{1,C} + X^{2,C} is not identically zero");
  const int horizon = space.horizon();
  const AdaptedProcess& both = game.payoff(Player::kOne, Coalition::kBoth);
  const AdaptedProcess& first = game.payoff(Player::kOne, Coalition::kFirst);
  const AdaptedProcess& second = game.payoff(Player::kOne, Coalition::kSecond);

  ZeroSumSolution sol;
  sol.values.resize(static_cast<std::size_t>(horizon));
  sol.first.beta.resize(static_cast<std::size_t>(horizon));
  sol.second.beta.resize(static_cast<std::size_t>(horizon));

  BlockValues continuation = both.infinity;
  for (int n = horizon; n >= 1; --n) {
    const auto s = static_cast<std::size_t>(n - 1);
    const std::size_t blocks = space.num_blocks(n);
    sol.values[s].resize(blocks);
    sol.first.beta[s].resize(blocks);
    sol.second.beta[s].resize(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
      const StopMatrixSolution cell =
          solve_stop_matrix(both.values[s][b], first.values[s][b],
                            second.values[s][b], continuation[b]);
      sol.values[s][b] = cell.value;
      sol.first.beta[s][b] = cell.first_stop;
      sol.second.beta[s][b] = cell.second_stop;
    }
    if (n > 1)
      continuation = conditional_expectation(space, sol.values[s], n, n - 1);
  }
  sol.value = expectation(space, space.lift(sol.values.front(), 1));
  return sol;
}

bool check_epsilon_equilibrium(const StoppingTime& first,
                               const StoppingTime& second,
                               const StoppingGame& game,
                               const Rational& epsilon,
                               const FilteredSpace& space) {
  if (epsilon.sign() < 0)
    throw Error(ErrorCode::kValidation, "epsilon must be nonnegative");
  const GamePayoff g = game_payoff(first, second, game, space);
  const Rational br1 =
      best_response_value(second, game, Player::kOne, space).value;
  const Rational br2 =
      best_response_value(first, game, Player::kTwo, space).value;
  return g.first >= br1 - epsilon && g.second >= br2 - epsilon;
}

}  // namespace stopwright
