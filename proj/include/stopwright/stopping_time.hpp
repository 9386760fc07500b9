#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stopwright/rational.hpp"
#include "stopwright/space.hpp"

namespace stopwright {

// A (nonrandom) stopping time: a stop index per atom, with {stop = n} a union
// of F_n-atoms.
struct PureStoppingTime {
  std::vector<Time> stop;  // per atom

  static PureStoppingTime constant(const FilteredSpace& space, Time t) {
    return {std::vector<Time>(space.num_atoms(), t)};
  }
  friend bool operator==(const PureStoppingTime&,
                         const PureStoppingTime&) = default;
};

// Stop-probability masses: rho[n-1][block] is the probability of stopping at
// n on that F_n-atom, rho_inf[atom] the probability of never stopping.
struct RandomizedStoppingTime {
  std::vector<BlockValues> rho;
  AtomValues rho_inf;

  friend bool operator==(const RandomizedStoppingTime&,
                         const RandomizedStoppingTime&) = default;
};

// Conditional stop probabilities (hazard rates): beta[n-1][block] is the
// probability of stopping at n given no stop before n.
struct BehaviorStoppingTime {
  std::vector<BlockValues> beta;

  friend bool operator==(const BehaviorStoppingTime&,
                         const BehaviorStoppingTime&) = default;
};

// Mixture of pure stopping times driven by a uniform draw r in (0,1]:
// sections[k] is used for r in (breakpoints[k], breakpoints[k+1]].
// breakpoints run strictly increasing from 0 to 1.
struct MixedStoppingTime {
  std::vector<Rational> breakpoints;
  std::vector<PureStoppingTime> sections;

  friend bool operator==(const MixedStoppingTime&,
                         const MixedStoppingTime&) = default;
};

using StoppingTime = std::variant<PureStoppingTime, RandomizedStoppingTime,
                                  BehaviorStoppingTime, MixedStoppingTime>;

enum class Representation { kPure, kRandomized, kBehavior, kMixed };

Representation representation_of(const StoppingTime& st);
std::string_view representation_name(Representation r);
// Accepts "pure", "randomized", "behavior", "mixed".
std::optional<Representation> parse_representation(std::string_view name);

// mass[atom][slot]; see FilteredSpace::slot for the slot layout.
using MassTable = std::vector<std::vector<Rational>>;

// Joint law of (outcome, stop index): a probability measure on
// atoms x {1..T, never}.
struct StoppingMeasure {
  MassTable mass;

  const Rational& at(const FilteredSpace& space, std::size_t atom,
                     Time t) const {
    return mass[atom][space.slot(t)];
  }
  Rational total() const;

  friend bool operator==(const StoppingMeasure&,
                         const StoppingMeasure&) = default;
};

// First violated clause found by validate().
struct Violation {
  enum class Kind {
    kNotAdapted,
    kSumNotOne,
    kOutOfRange,
    kSectionNotStoppingTime,
    kMalformed,
  };
  Kind kind;
  std::optional<Time> time;
  std::string location;  // block or atom id, when applicable
  std::optional<std::size_t> section;  // 1-based, mixed only
  std::string message;

  std::string str() const;
};

std::string_view violation_kind_name(Violation::Kind kind);

std::optional<Violation> validate(const StoppingTime& st,
                                  const FilteredSpace& space);

// Throws Error(kValidation) carrying the violation text.
void require_valid(const StoppingTime& st, const FilteredSpace& space);

StoppingMeasure detailed_distribution(const StoppingTime& st,
                                      const FilteredSpace& space);

// True iff the table is nonnegative, projects onto P, and every time-n
// density mass/p is constant on F_n-atoms.
bool is_stopping_measure(const MassTable& mass, const FilteredSpace& space);

// density(n)(atom) = mass(atom, n) / p(atom).
AtomValues density(const StoppingMeasure& nu, const FilteredSpace& space,
                   Time t);

bool equivalent(const StoppingTime& a, const StoppingTime& b,
                const FilteredSpace& space);

}  // namespace stopwright
