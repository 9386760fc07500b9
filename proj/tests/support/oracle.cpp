#include "oracle.hpp"

#include <functional>

namespace stopwright::testing {

namespace {

std::size_t slot_of(const FilteredSpace& space, Time t) {
  return t.is_never() ? static_cast<std::size_t>(space.horizon())
                      : static_cast<std::size_t>(t.step() - 1);
}

const Rational& value_at(const AdaptedProcess& x, const FilteredSpace& space,
                         std::size_t s, std::size_t atom) {
  if (s == static_cast<std::size_t>(space.horizon())) return x.infinity[atom];
  const int n = static_cast<int>(s) + 1;
  return x.values[s][space.block_of(n, atom)];
}

}  // namespace

MassTable oracle_mass(const StoppingTime& st, const FilteredSpace& space) {
  const std::size_t slots = static_cast<std::size_t>(space.horizon()) + 1;
  const int horizon = space.horizon();
  MassTable mass(space.num_atoms(), std::vector<Rational>(slots));
  for (std::size_t a = 0; a < space.num_atoms(); ++a) {
    const Rational& p = space.prob(a);
    auto& row = mass[a];
    if (const auto* s = std::get_if<PureStoppingTime>(&st)) {
      row[slot_of(space, s->stop[a])] = p;
    } else if (const auto* s = std::get_if<RandomizedStoppingTime>(&st)) {
      for (int n = 1; n <= horizon; ++n)
        row[n - 1] = p * s->rho[n - 1][space.block_of(n, a)];
      row[horizon] = p * s->rho_inf[a];
    } else if (const auto* s = std::get_if<BehaviorStoppingTime>(&st)) {
      Rational survive(1);
      for (int n = 1; n <= horizon; ++n) {
        const Rational& beta = s->beta[n - 1][space.block_of(n, a)];
        row[n - 1] = p * survive * beta;
        survive *= Rational(1) - beta;
      }
      row[horizon] = p * survive;
    } else {
      const auto& m = std::get<MixedStoppingTime>(st);
      for (std::size_t k = 0; k < m.sections.size(); ++k) {
        const Rational width = m.breakpoints[k + 1] - m.breakpoints[k];
        row[slot_of(space, m.sections[k].stop[a])] += p * width;
      }
    }
  }
  return mass;
}

std::vector<PureStoppingTime> all_pure(const FilteredSpace& space) {
  // At each level, each block whose atoms are still running either stops or
  // continues.
  std::vector<PureStoppingTime> out;
  PureStoppingTime current = PureStoppingTime::constant(space, Time::never());
  std::function<void(int, std::size_t)> go = [&](int n, std::size_t b) {
    if (n > space.horizon()) {
      out.push_back(current);
      return;
    }
    if (b == space.num_blocks(n)) {
      go(n + 1, 0);
      return;
    }
    const auto atoms = space.block_atoms(n, b);
    if (!current.stop[atoms.front()].is_never()) {
      go(n, b + 1);
      return;
    }
    go(n, b + 1);
    for (std::size_t a : atoms) current.stop[a] = Time::at(n);
    go(n, b + 1);
    for (std::size_t a : atoms) current.stop[a] = Time::never();
  };
  go(1, 0);
  return out;
}

std::size_t count_pure(const FilteredSpace& space) {
  // c(node) = 1 + prod over children c(child); leaves count 2 (stop or not).
  const int horizon = space.horizon();
  std::vector<std::size_t> below(space.num_blocks(horizon), 2);
  for (int n = horizon - 1; n >= 1; --n) {
    std::vector<std::size_t> level(space.num_blocks(n), 1);
    for (std::size_t b = 0; b < below.size(); ++b)
      level[space.parent_block(n + 1, b)] *= below[b];
    for (auto& v : level) v += 1;
    below = std::move(level);
  }
  std::size_t total = 1;
  for (std::size_t v : below) total *= v;
  return total;
}

Rational oracle_payoff(const MassTable& mass, const AdaptedProcess& x,
                       const FilteredSpace& space) {
  Rational sum;
  for (std::size_t a = 0; a < mass.size(); ++a)
    for (std::size_t s = 0; s < mass[a].size(); ++s)
      sum += mass[a][s] * value_at(x, space, s, a);
  return sum;
}

Rational brute_snell(const StoppingProblem& x, const FilteredSpace& space) {
  std::optional<Rational> best;
  for (const auto& st : all_pure(space)) {
    const Rational v = oracle_payoff(oracle_mass(st, space), x.process, space);
    if (!best || v > *best) best = v;
  }
  return *best;
}

OraclePayoffs oracle_game_payoff(const StoppingTime& first,
                                 const StoppingTime& second,
                                 const StoppingGame& game,
                                 const FilteredSpace& space) {
  const MassTable m1 = oracle_mass(first, space);
  const MassTable m2 = oracle_mass(second, space);
  OraclePayoffs out;
  const std::size_t slots = m1.front().size();
  for (std::size_t a = 0; a < space.num_atoms(); ++a) {
    const Rational& p = space.prob(a);
    for (std::size_t s1 = 0; s1 < slots; ++s1) {
      for (std::size_t s2 = 0; s2 < slots; ++s2) {
        const Rational w = m1[a][s1] * m2[a][s2] / p;
        if (w.is_zero()) continue;
        Coalition c = Coalition::kBoth;
        if (s1 < s2) c = Coalition::kFirst;
        if (s2 < s1) c = Coalition::kSecond;
        const std::size_t end = std::min(s1, s2);
        out.first += w * value_at(game.payoff(Player::kOne, c), space, end, a);
        out.second += w * value_at(game.payoff(Player::kTwo, c), space, end, a);
      }
    }
  }
  return out;
}

Rational brute_best_response(const StoppingTime& other, const StoppingGame& game,
                             Player responder, const FilteredSpace& space) {
  std::optional<Rational> best;
  for (const auto& st : all_pure(space)) {
    const StoppingTime mine{st};
    const Rational v =
        responder == Player::kOne
            ? oracle_game_payoff(mine, other, game, space).first
            : oracle_game_payoff(other, mine, game, space).second;
    if (!best || v > *best) best = v;
  }
  return *best;
}

std::optional<Rational> pure_saddle(const Rational& a, const Rational& b,
                                    const Rational& c, const Rational& d) {
  const Rational m[2][2] = {{a, b}, {c, d}};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const bool row_min = m[i][j] <= m[i][1 - j];
      const bool col_max = m[i][j] >= m[1 - i][j];
      if (row_min && col_max) return m[i][j];
    }
  }
  return std::nullopt;
}

}  // namespace stopwright::testing
