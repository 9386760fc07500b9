#pragma once

// Monte-Carlo execution of stopping times from explicit external uniform
// randomness, used to cross-check the exact layer.
//
// Random streams. Uniforms are drawn in (0,1] as ((x >> 11) + 1) * 2^-53
// from std::mt19937_64 outputs x. Samples are processed in chunks of
// kChunkSize; chunk c uses three independent engines (stream 0: outcome,
// stream 1: player one, stream 2: player two), each seeded with
//   std::seed_seq{lo32(seed), hi32(seed), lo32(c), hi32(c), stream}.
// Both the engine and std::seed_seq are fully specified by the C++ standard,
// so streams are reproducible across platforms, and results do not depend on
// how chunks are spread over workers.

#include <cstdint>
#include <random>
#include <vector>

#include "stopwright/games.hpp"
#include "stopwright/space.hpp"
#include "stopwright/stopping_time.hpp"

namespace stopwright {

inline constexpr std::size_t kChunkSize = 4096;

class UniformSource {
 public:
  virtual ~UniformSource() = default;
  // Next draw in (0,1].
  virtual double next() = 0;
};

class EngineUniform final : public UniformSource {
 public:
  EngineUniform(std::uint64_t seed, std::uint64_t chunk, std::uint32_t stream);
  double next() override;

 private:
  std::mt19937_64 engine_;
};

// Replays a fixed list of draws; throws std::out_of_range when exhausted.
class FixedUniform final : public UniformSource {
 public:
  explicit FixedUniform(std::vector<double> draws) : draws_(std::move(draws)) {}
  double next() override;
  std::size_t consumed() const { return pos_; }

 private:
  std::vector<double> draws_;
  std::size_t pos_ = 0;
};

// Realized stop index on `atom`: pure uses no draws; randomized and mixed use
// one draw r (first n with rho_1+...+rho_n >= r, resp. the section whose
// interval holds r); behavior draws r_n each period and stops at the first n
// with r_n <= beta_n.
Time sample_stop_time(const StoppingTime& st, const FilteredSpace& space,
                      std::size_t atom, UniformSource& uniforms);

struct SamplingOptions {
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

struct EmpiricalDistribution {
  std::size_t samples = 0;
  std::vector<std::vector<std::uint64_t>> counts;  // [atom][slot]
  std::vector<std::vector<double>> frequencies;    // counts / samples
};

// Throws Error(kValidation) for zero samples or an invalid stopping time.
EmpiricalDistribution empirical_detailed_distribution(
    const StoppingTime& st, const FilteredSpace& space,
    const SamplingOptions& options);

struct EmpiricalJoint {
  std::size_t samples = 0;
  std::vector<std::vector<std::vector<std::uint64_t>>> counts;  // [atom][s1][s2]
};

EmpiricalJoint empirical_joint_distribution(const StoppingTime& first,
                                            const StoppingTime& second,
                                            const FilteredSpace& space,
                                            const SamplingOptions& options);

struct EmpiricalGamePayoff {
  double first = 0;
  double second = 0;
  std::size_t samples = 0;
};

// Mean realized payoffs. The mean is formed exactly from the cell counts
// before rounding to double, so a constant game reproduces its constant.
EmpiricalGamePayoff empirical_game_payoff(const StoppingTime& first,
                                          const StoppingTime& second,
                                          const StoppingGame& game,
                                          const FilteredSpace& space,
                                          const SamplingOptions& options);

// max over cells of |frequency - exact mass|.
double max_abs_deviation(const EmpiricalDistribution& empirical,
                         const StoppingMeasure& exact);

}  // namespace stopwright
