#include "stopwright/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "stopwright/error.hpp"

namespace stopwright {

namespace {

std::uint32_t lo32(std::uint64_t x) { return static_cast<std::uint32_t>(x); }
std::uint32_t hi32(std::uint64_t x) {
  return static_cast<std::uint32_t>(x >> 32);
}

// Stopping time preprocessed into per-atom tables for repeated draws.
class PreparedSampler {
 public:
  PreparedSampler(const StoppingTime& st, const FilteredSpace& space)
      : kind_(representation_of(st)) {
    require_valid(st, space);
    const int horizon = space.horizon();
    switch (kind_) {
      case Representation::kPure:
        pure_ = std::get<PureStoppingTime>(st).stop;
        break;
      case Representation::kRandomized: {
        const auto& rho = std::get<RandomizedStoppingTime>(st).rho;
        per_atom_.resize(space.num_atoms());
        for (std::size_t a = 0; a < space.num_atoms(); ++a) {
          Rational c;
          for (int n = 1; n <= horizon; ++n) {
            c += rho[static_cast<std::size_t>(n - 1)][space.block_of(n, a)];
            per_atom_[a].push_back(c);
          }
        }
        break;
      }
      case Representation::kBehavior: {
        const auto& beta = std::get<BehaviorStoppingTime>(st).beta;
        per_atom_.resize(space.num_atoms());
        for (std::size_t a = 0; a < space.num_atoms(); ++a)
          for (int n = 1; n <= horizon; ++n)
            per_atom_[a].push_back(
                beta[static_cast<std::size_t>(n - 1)][space.block_of(n, a)]);
        break;
      }
      case Representation::kMixed:
        mixed_ = std::get<MixedStoppingTime>(st);
        break;
    }
  }

  Time draw(std::size_t atom, UniformSource& uniforms) const {
    switch (kind_) {
      case Representation::kPure:
        return pure_[atom];
      case Representation::kRandomized: {
        const Rational r = Rational::from_double(uniforms.next());
        const auto& cum = per_atom_[atom];
        for (std::size_t i = 0; i < cum.size(); ++i)
          if (cum[i] >= r) return Time::at(static_cast<int>(i) + 1);
        return Time::never();
      }
      case Representation::kBehavior: {
        const auto& hazard = per_atom_[atom];
        for (std::size_t i = 0; i < hazard.size(); ++i)
          if (Rational::from_double(uniforms.next()) <= hazard[i])
            return Time::at(static_cast<int>(i) + 1);
        return Time::never();
      }
      case Representation::kMixed: {
        const Rational r = Rational::from_double(uniforms.next());
        const auto& bp = mixed_.breakpoints;
        // first k >= 1 with r <= bp[k]; r in (0,1] so one exists
        const auto it = std::lower_bound(bp.begin() + 1, bp.end(), r);
        return mixed_.sections[static_cast<std::size_t>(it - bp.begin() - 1)]
            .stop[atom];
      }
    }
    return Time::never();
  }

 private:
  Representation kind_;
  std::vector<Time> pure_;
  std::vector<std::vector<Rational>> per_atom_;
  MixedStoppingTime mixed_;
};

class OutcomeSampler {
 public:
  explicit OutcomeSampler(const FilteredSpace& space) {
    Rational c;
    for (std::size_t a = 0; a < space.num_atoms(); ++a) {
      c += space.prob(a);
      cumulative_.push_back(c);
    }
  }
  std::size_t draw(UniformSource& uniforms) const {
    const Rational u = Rational::from_double(uniforms.next());
    const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
    return static_cast<std::size_t>(it - cumulative_.begin());
  }

 private:
  std::vector<Rational> cumulative_;
};

void require_samples(const SamplingOptions& options) {
  if (options.samples == 0)
    throw Error(ErrorCode::kValidation, "sample count must be positive");
}

// Runs body(chunk, count, worker) over all chunks; chunk c goes to worker
// c % workers.
void for_each_chunk(
    const SamplingOptions& options,
    const std::function<void(std::uint64_t, std::size_t, unsigned)>& body) {
  const std::size_t chunks = (options.samples + kChunkSize - 1) / kChunkSize;
  const unsigned workers = std::max(1u, options.workers);
  auto run = [&](unsigned w) {
    for (std::size_t c = w; c < chunks; c += workers) {
      const std::size_t count =
          std::min(kChunkSize, options.samples - c * kChunkSize);
      body(c, count, w);
    }
  };
  if (workers == 1) {
    run(0);
    return;
  }
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
  for (auto& t : threads) t.join();
}

}  // namespace

EngineUniform::EngineUniform(std::uint64_t seed, std::uint64_t chunk,
                             std::uint32_t stream) {
  std::seed_seq seq{lo32(seed), hi32(seed), lo32(chunk), hi32(chunk), stream};
  engine_.seed(seq);
}

double EngineUniform::next() {
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double FixedUniform::next() {
  if (pos_ >= draws_.size()) throw std::out_of_range("no more fixed draws");
  return draws_[pos_++];
}

Time sample_stop_time(const StoppingTime& st, const FilteredSpace& space,
                      std::size_t atom, UniformSource& uniforms) {
  if (atom >= space.num_atoms())
    throw Error(ErrorCode::kValidation, "atom index out of range");
  return PreparedSampler(st, space).draw(atom, uniforms);
}

EmpiricalDistribution empirical_detailed_distribution(
    const StoppingTime& st, const FilteredSpace& space,
    const SamplingOptions& options) {
  require_samples(options);
  const PreparedSampler sampler(st, space);
  const OutcomeSampler outcomes(space);
  const std::size_t slots = space.num_slots();
  using Counts = std::vector<std::vector<std::uint64_t>>;
  std::vector<Counts> partial(
      std::max(1u, options.workers),
      Counts(space.num_atoms(), std::vector<std::uint64_t>(slots)));

  for_each_chunk(options, [&](std::uint64_t chunk, std::size_t count,
                              unsigned worker) {
    EngineUniform omega(options.seed, chunk, 0);
    EngineUniform mine(options.seed, chunk, 1);
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t a = outcomes.draw(omega);
      ++partial[worker][a][space.slot(sampler.draw(a, mine))];
    }
  });

  EmpiricalDistribution out;
  out.samples = options.samples;
  out.counts = Counts(space.num_atoms(), std::vector<std::uint64_t>(slots));
  out.frequencies.assign(space.num_atoms(), std::vector<double>(slots));
  for (const auto& p : partial)
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t s = 0; s < slots; ++s) out.counts[a][s] += p[a][s];
  for (std::size_t a = 0; a < out.counts.size(); ++a)
    for (std::size_t s = 0; s < slots; ++s)
      out.frequencies[a][s] = static_cast<double>(out.counts[a][s]) /
                              static_cast<double>(out.samples);
  return out;
}

EmpiricalJoint empirical_joint_distribution(const StoppingTime& first,
                                            const StoppingTime& second,
                                            const FilteredSpace& space,
                                            const SamplingOptions& options) {
  require_samples(options);
  const PreparedSampler one(first, space);
  const PreparedSampler two(second, space);
  const OutcomeSampler outcomes(space);
  const std::size_t slots = space.num_slots();
  using Counts = std::vector<std::vector<std::vector<std::uint64_t>>>;
  const Counts zero(space.num_atoms(),
                    std::vector<std::vector<std::uint64_t>>(
                        slots, std::vector<std::uint64_t>(slots)));
  std::vector<Counts> partial(std::max(1u, options.workers), zero);

  for_each_chunk(options, [&](std::uint64_t chunk, std::size_t count,
                              unsigned worker) {
    EngineUniform omega(options.seed, chunk, 0);
    EngineUniform u1(options.seed, chunk, 1);
    EngineUniform u2(options.seed, chunk, 2);
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t a = outcomes.draw(omega);
      const Time t1 = one.draw(a, u1);
      const Time t2 = two.draw(a, u2);
      ++partial[worker][a][space.slot(t1)][space.slot(t2)];
    }
  });

  EmpiricalJoint out{options.samples, zero};
  for (const auto& p : partial)
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t s1 = 0; s1 < slots; ++s1)
        for (std::size_t s2 = 0; s2 < slots; ++s2)
          out.counts[a][s1][s2] += p[a][s1][s2];
  return out;
}

EmpiricalGamePayoff empirical_game_payoff(const StoppingTime& first,
                                          const StoppingTime& second,
                                          const StoppingGame& game,
                                          const FilteredSpace& space,
                                          const SamplingOptions& options) {
  if (!game.fits(space))
    throw Error(ErrorCode::kSpaceMismatch,
                "game payoff tables do not match the space");
  const EmpiricalJoint joint =
      empirical_joint_distribution(first, second, space, options);
  const std::size_t slots = space.num_slots();
  Rational sum1, sum2;
  for (std::size_t a = 0; a < space.num_atoms(); ++a) {
    for (std::size_t s1 = 0; s1 < slots; ++s1) {
      for (std::size_t s2 = 0; s2 < slots; ++s2) {
        const std::uint64_t k = joint.counts[a][s1][s2];
        if (k == 0) continue;
        const Time t1 = space.time_of_slot(s1);
        const Time t2 = space.time_of_slot(s2);
        const Coalition c = coalition_of(t1, t2);
        const Time end = std::min(t1, t2);
        const Rational weight(static_cast<long>(k));
        sum1 += weight * game.payoff(Player::kOne, c).at(space, end, a);
        sum2 += weight * game.payoff(Player::kTwo, c).at(space, end, a);
      }
    }
  }
  const Rational n(static_cast<long>(joint.samples));
  return {(sum1 / n).to_double(), (sum2 / n).to_double(), joint.samples};
}

double max_abs_deviation(const EmpiricalDistribution& empirical,
                         const StoppingMeasure& exact) {
  double worst = 0;
  for (std::size_t a = 0; a < exact.mass.size(); ++a)
    for (std::size_t s = 0; s < exact.mass[a].size(); ++s)
      worst = std::max(worst, std::abs(empirical.frequencies[a][s] -
                                       exact.mass[a][s].to_double()));
  return worst;
}

}  // namespace stopwright
