#include "stopwright/payoffs.hpp"

#include "stopwright/error.hpp"

namespace stopwright {

namespace {

Rational pure_payoff(const PureStoppingTime& s, const StoppingProblem& x,
                     const FilteredSpace& space) {
  Rational sum;
  for (std::size_t a = 0; a < space.num_atoms(); ++a)
    sum += space.prob(a) * x.process.at(space, s.stop[a], a);
  return sum;
}

Rational formula_payoff(const StoppingTime& st, const StoppingProblem& x,
                        const FilteredSpace& space) {
  const int horizon = space.horizon();
  if (const auto* s = std::get_if<PureStoppingTime>(&st))
    return pure_payoff(*s, x, space);

  if (const auto* s = std::get_if<RandomizedStoppingTime>(&st)) {
    AtomValues f(space.num_atoms());
    for (std::size_t a = 0; a < space.num_atoms(); ++a) {
      for (int n = 1; n <= horizon; ++n)
        f[a] += s->rho[static_cast<std::size_t>(n - 1)][space.block_of(n, a)] *
                x.process.at(space, Time::at(n), a);
      f[a] += s->rho_inf[a] * x.process.infinity[a];
    }
    return expectation(space, f);
  }

  if (const auto* s = std::get_if<BehaviorStoppingTime>(&st)) {
    AtomValues f(space.num_atoms());
    for (std::size_t a = 0; a < space.num_atoms(); ++a) {
      Rational survive(1);
      for (int n = 1; n <= horizon; ++n) {
        const Rational& b =
            s->beta[static_cast<std::size_t>(n - 1)][space.block_of(n, a)];
        f[a] += survive * b * x.process.at(space, Time::at(n), a);
        survive *= Rational(1) - b;
      }
      f[a] += survive * x.process.infinity[a];
    }
    return expectation(space, f);
  }

  const auto& mu = std::get<MixedStoppingTime>(st);
  Rational sum;
  for (std::size_t k = 0; k < mu.sections.size(); ++k)
    sum += (mu.breakpoints[k + 1] - mu.breakpoints[k]) *
           pure_payoff(mu.sections[k], x, space);
  return sum;
}

}  // namespace

void require_fits(const StoppingProblem& x, const FilteredSpace& space) {
  if (!x.process.fits(space))
    throw Error(ErrorCode::kSpaceMismatch,
                "stopping problem tables do not match the space");
}

Rational bilinear_payoff(const StoppingMeasure& nu, const StoppingProblem& x,
                         const FilteredSpace& space) {
  require_fits(x, space);
  Rational sum;
  for (std::size_t a = 0; a < space.num_atoms(); ++a)
    for (std::size_t s = 0; s < space.num_slots(); ++s)
      sum += nu.mass[a][s] * x.process.at(space, space.time_of_slot(s), a);
  return sum;
}

Rational payoff(const StoppingTime& st, const StoppingProblem& x,
                const FilteredSpace& space) {
  require_fits(x, space);
  const StoppingMeasure nu = detailed_distribution(st, space);
  const Rational direct = formula_payoff(st, x, space);
  const Rational via_measure = bilinear_payoff(nu, x, space);
  if (direct != via_measure)
    throw Error(ErrorCode::kConsistencyFailure,
                "payoff formula " + direct.str() +
                    " disagrees with detailed-distribution payoff " +
                    via_measure.str());
  return direct;
}

SnellResult snell_value(const StoppingProblem& x, const FilteredSpace& space) {
  require_fits(x, space);
  const int horizon = space.horizon();
  SnellResult result;
  result.envelope.resize(static_cast<std::size_t>(horizon));
  std::vector<std::vector<bool>> stop_now(static_cast<std::size_t>(horizon));

  // At T the continuation is the never-stop payoff, per atom.
  BlockValues continuation = x.process.infinity;
  for (int n = horizon; n >= 1; --n) {
    const auto s = static_cast<std::size_t>(n - 1);
    const BlockValues& now = x.process.values[s];
    auto& v = result.envelope[s];
    v.resize(now.size());
    stop_now[s].resize(now.size());
    for (std::size_t b = 0; b < now.size(); ++b) {
      stop_now[s][b] = now[b] >= continuation[b];
      v[b] = stop_now[s][b] ? now[b] : continuation[b];
    }
    if (n > 1) continuation = conditional_expectation(space, v, n, n - 1);
  }

  result.value = expectation(space, space.lift(result.envelope.front(), 1));
  result.argmax = PureStoppingTime::constant(space, Time::never());
  for (std::size_t a = 0; a < space.num_atoms(); ++a) {
    for (int n = 1; n <= horizon; ++n) {
      if (stop_now[static_cast<std::size_t>(n - 1)][space.block_of(n, a)]) {
        result.argmax.stop[a] = Time::at(n);
        break;
      }
    }
  }
  return result;
}

StoppingProblem witness_problem(const Event& event, Time t,
                                const FilteredSpace& space) {
  if (event.size() != space.num_atoms())
    throw Error(ErrorCode::kSpaceMismatch, "event does not match the space");
  if (!space.is_valid_time(t))
    throw Error(ErrorCode::kValidation, "time " + t.str() + " out of range");
  StoppingProblem w{AdaptedProcess::zero(space)};
  const AtomValues indicator = event.indicator();
  if (t.is_never()) {
    w.process.infinity = indicator;
  } else {
    w.process.values[static_cast<std::size_t>(t.step() - 1)] =
        conditional_expectation(space, indicator, t.step());
  }
  return w;
}

std::optional<Distinction> distinguish(const StoppingTime& first,
                                       const StoppingTime& second,
                                       const FilteredSpace& space) {
  const StoppingMeasure a = detailed_distribution(first, space);
  const StoppingMeasure b = detailed_distribution(second, space);
  for (std::size_t atom = 0; atom < space.num_atoms(); ++atom) {
    for (std::size_t s = space.num_slots(); s-- > 0;) {
      if (a.mass[atom][s] == b.mass[atom][s]) continue;
      Distinction d{Event::of(space, {atom}), space.time_of_slot(s),
                    a.mass[atom][s], b.mass[atom][s], Rational(0)};
      const StoppingProblem w = witness_problem(d.event, d.time, space);
      d.gap = payoff(first, w, space) - payoff(second, w, space);
      if (d.gap != d.first_mass - d.second_mass)
        throw Error(ErrorCode::kConsistencyFailure,
                    "witness payoff gap differs from the mass gap");
      return d;
    }
  }
  return std::nullopt;
}

bool check_epsilon_optimal(const StoppingTime& st, const StoppingProblem& x,
                           const Rational& epsilon,
                           const FilteredSpace& space) {
  if (epsilon.sign() < 0)
    throw Error(ErrorCode::kValidation, "epsilon must be nonnegative");
  return payoff(st, x, space) >= snell_value(x, space).value - epsilon;
}

}  // namespace stopwright
