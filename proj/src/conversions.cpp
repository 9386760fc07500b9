#include "stopwright/conversions.hpp"

#include <algorithm>

#include "stopwright/error.hpp"

namespace stopwright {

namespace {

// Sum of rho_1..rho_{n-1} on the F_n-atom containing `atom`; constant on
// that atom because each rho_j is F_j-measurable.
Rational prefix_mass(const RandomizedStoppingTime& rho,
                     const FilteredSpace& space, int n, std::size_t atom) {
  Rational sum;
  for (int j = 1; j < n; ++j)
    sum += rho.rho[static_cast<std::size_t>(j - 1)][space.block_of(j, atom)];
  return sum;
}

bool shape_ok(const MassTable& mass, const FilteredSpace& space) {
  if (mass.size() != space.num_atoms()) return false;
  return std::all_of(mass.begin(), mass.end(), [&](const auto& row) {
    return row.size() == space.num_slots();
  });
}

}  // namespace

RandomizedStoppingTime repair_to_randomized(const MassTable& mass,
                                            const FilteredSpace& space) {
  if (!shape_ok(mass, space))
    throw Error(ErrorCode::kNotAStoppingMeasure,
                "mass table shape does not match the space");
  RandomizedStoppingTime out;
  out.rho.resize(static_cast<std::size_t>(space.horizon()));
  AtomValues used(space.num_atoms());  // clipped mass consumed so far
  for (int n = 1; n <= space.horizon(); ++n) {
    const auto s = static_cast<std::size_t>(n - 1);
    auto& level = out.rho[s];
    level.resize(space.num_blocks(n));
    for (std::size_t b = 0; b < space.num_blocks(n); ++b) {
      const auto atoms = space.block_atoms(n, b);
      const std::size_t rep = atoms.front();
      const Rational d = mass[rep][s] / space.prob(rep);
      for (std::size_t a : atoms) {
        if (mass[a][s] / space.prob(a) != d)
          throw Error(ErrorCode::kNotAStoppingMeasure,
                      "density at n=" + std::to_string(n) +
                          " is not constant on F_" + std::to_string(n) +
                          "-atom '" + space.block_id(n, b) + "'");
      }
      level[b] = max(Rational(0), min(d, Rational(1) - used[rep]));
      for (std::size_t a : atoms) used[a] += level[b];
    }
  }
  out.rho_inf.resize(space.num_atoms());
  for (std::size_t a = 0; a < space.num_atoms(); ++a)
    out.rho_inf[a] = Rational(1) - used[a];
  return out;
}

RandomizedStoppingTime measure_to_randomized(const StoppingMeasure& nu,
                                             const FilteredSpace& space) {
  if (!is_stopping_measure(nu.mass, space))
    throw Error(ErrorCode::kNotAStoppingMeasure,
                "mass table fails the projection or adaptedness condition");
  RandomizedStoppingTime rho;
  for (int n = 1; n <= space.horizon(); ++n) {
    BlockValues level(space.num_blocks(n));
    for (std::size_t b = 0; b < level.size(); ++b) {
      const std::size_t rep = space.block_atoms(n, b).front();
      level[b] = nu.at(space, rep, Time::at(n)) / space.prob(rep);
    }
    rho.rho.push_back(std::move(level));
  }
  rho.rho_inf = density(nu, space, Time::never());

  // On an exact stopping measure the clipping repair has nothing to do.
  if (repair_to_randomized(nu.mass, space) != rho)
    throw Error(ErrorCode::kConsistencyFailure,
                "clipping repair altered an exact stopping measure");
  return rho;
}

BehaviorStoppingTime randomized_to_behavior(const RandomizedStoppingTime& rho,
                                            const FilteredSpace& space) {
  require_valid(rho, space);
  BehaviorStoppingTime beta;
  for (int n = 1; n <= space.horizon(); ++n) {
    const auto s = static_cast<std::size_t>(n - 1);
    BlockValues level(space.num_blocks(n));
    for (std::size_t b = 0; b < level.size(); ++b) {
      const std::size_t rep = space.block_atoms(n, b).front();
      const Rational survivors = Rational(1) - prefix_mass(rho, space, n, rep);
      level[b] = survivors.is_zero() ? Rational(0) : rho.rho[s][b] / survivors;
    }
    beta.beta.push_back(std::move(level));
  }
  return beta;
}

RandomizedStoppingTime behavior_to_randomized(const BehaviorStoppingTime& beta,
                                              const FilteredSpace& space) {
  require_valid(beta, space);
  RandomizedStoppingTime rho;
  AtomValues survive(space.num_atoms(), Rational(1));
  for (int n = 1; n <= space.horizon(); ++n) {
    const auto s = static_cast<std::size_t>(n - 1);
    BlockValues level(space.num_blocks(n));
    for (std::size_t b = 0; b < level.size(); ++b) {
      const auto atoms = space.block_atoms(n, b);
      level[b] = survive[atoms.front()] * beta.beta[s][b];
      for (std::size_t a : atoms) survive[a] *= Rational(1) - beta.beta[s][b];
    }
    rho.rho.push_back(std::move(level));
  }
  rho.rho_inf = std::move(survive);
  return rho;
}

MixedStoppingTime randomized_to_mixed(const RandomizedStoppingTime& rho,
                                      const FilteredSpace& space) {
  require_valid(rho, space);
  const int horizon = space.horizon();

  // cumulative[a][n-1] = rho_1(a) + ... + rho_n(a)
  std::vector<AtomValues> cumulative(space.num_atoms());
  std::vector<Rational> points{Rational(0), Rational(1)};
  for (std::size_t a = 0; a < space.num_atoms(); ++a) {
    Rational c;
    for (int n = 1; n <= horizon; ++n) {
      c += rho.rho[static_cast<std::size_t>(n - 1)][space.block_of(n, a)];
      cumulative[a].push_back(c);
      points.push_back(c);
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  MixedStoppingTime mu;
  mu.breakpoints = points;
  for (std::size_t k = 1; k < points.size(); ++k) {
    // No cumulative sum lies strictly inside (r_{k-1}, r_k], so evaluating
    // at the right endpoint decides the whole interval.
    const Rational& r = points[k];
    PureStoppingTime section{std::vector<Time>(space.num_atoms(), Time::never())};
    for (std::size_t a = 0; a < space.num_atoms(); ++a) {
      for (int n = 1; n <= horizon; ++n) {
        if (r <= cumulative[a][static_cast<std::size_t>(n - 1)]) {
          section.stop[a] = Time::at(n);
          break;
        }
      }
    }
    mu.sections.push_back(std::move(section));
  }
  return mu;
}

StoppingMeasure mixed_to_measure(const MixedStoppingTime& mu,
                                 const FilteredSpace& space) {
  require_valid(mu, space);
  // density_n(w) = Lebesgue measure of {r : section(r, w) = n}
  MassTable dens(space.num_atoms(), std::vector<Rational>(space.num_slots()));
  for (std::size_t k = 0; k < mu.sections.size(); ++k) {
    const Rational width = mu.breakpoints[k + 1] - mu.breakpoints[k];
    for (std::size_t a = 0; a < space.num_atoms(); ++a)
      dens[a][space.slot(mu.sections[k].stop[a])] += width;
  }
  StoppingMeasure nu{std::move(dens)};
  for (std::size_t a = 0; a < space.num_atoms(); ++a)
    for (auto& m : nu.mass[a]) m *= space.prob(a);
  return nu;
}

StoppingTime convert(const StoppingTime& st, Representation target,
                     const FilteredSpace& space) {
  const StoppingMeasure nu = detailed_distribution(st, space);
  RandomizedStoppingTime rho = measure_to_randomized(nu, space);
  switch (target) {
    case Representation::kRandomized:
      return rho;
    case Representation::kBehavior:
      return randomized_to_behavior(rho, space);
    case Representation::kMixed:
      return randomized_to_mixed(rho, space);
    case Representation::kPure: {
      MixedStoppingTime mu = randomized_to_mixed(rho, space);
      if (mu.sections.size() != 1)
        throw Error(ErrorCode::kValidation,
                    "stopping time is genuinely randomized; no pure equivalent");
      return mu.sections.front();
    }
  }
  throw Error(ErrorCode::kValidation, "unknown target representation");
}

}  // namespace stopwright
