#pragma once

#include <climits>
#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stopwright/rational.hpp"

namespace stopwright {

// A stopping index: a finite time 1..T or "never" (the infinity slot).
// never() orders after every finite time.
class Time {
 public:
  constexpr Time() = default;
  static constexpr Time at(int n) { return Time(n); }
  static constexpr Time never() { return Time(kNever); }

  constexpr bool is_never() const { return n_ == kNever; }
  constexpr int step() const { return n_; }
  std::string str() const;

  friend constexpr auto operator<=>(Time, Time) = default;

 private:
  static constexpr int kNever = INT_MAX;
  constexpr explicit Time(int n) : n_(n) {}
  int n_ = 1;
};

// One entry of a scenario-tree description. Exactly one node has no parent
// (the root, depth 0); leaves carry probabilities and all sit at depth T.
struct TreeNode {
  std::string id;
  std::optional<std::string> parent;
  std::optional<Rational> prob;
};

// Values of a function on the atoms (elementary outcomes) of a space.
using AtomValues = std::vector<Rational>;
// Values of an F_n-measurable function, one per F_n-atom ("block").
using BlockValues = std::vector<Rational>;

// Finite filtered probability space given as a scenario tree. Atoms are the
// leaves in depth-first order; the F_n-atoms are the depth-n nodes, also in
// depth-first order, so F_T-blocks and atoms share indices.
class FilteredSpace {
 public:
  // Throws Error with kStructure, kZeroProbability or kProbabilitySum.
  static FilteredSpace from_tree(std::span<const TreeNode> nodes);

  int horizon() const { return horizon_; }
  const std::string& root_id() const { return root_id_; }
  std::size_t num_atoms() const { return atom_probs_.size(); }
  const Rational& prob(std::size_t atom) const { return atom_probs_[atom]; }
  std::span<const Rational> probs() const { return atom_probs_; }
  const std::string& atom_id(std::size_t atom) const {
    return levels_.back().ids[atom];
  }
  std::optional<std::size_t> find_atom(std::string_view id) const {
    return find_block(horizon_, id);
  }

  // Levels are 1-based: n in 1..T.
  std::size_t num_blocks(int n) const { return level(n).ids.size(); }
  std::size_t block_of(int n, std::size_t atom) const {
    return level(n).block_of_atom[atom];
  }
  std::span<const std::size_t> block_atoms(int n, std::size_t block) const {
    return level(n).atoms[block];
  }
  const std::string& block_id(int n, std::size_t block) const {
    return level(n).ids[block];
  }
  const Rational& block_prob(int n, std::size_t block) const {
    return level(n).probs[block];
  }
  // The F_{n-1}-atom containing the given F_n-atom; requires n >= 2.
  std::size_t parent_block(int n, std::size_t block) const {
    return level(n).parent[block];
  }
  std::optional<std::size_t> find_block(int n, std::string_view id) const;

  // Mass tables are indexed by slot: slot n-1 holds time n, slot T holds
  // never.
  std::size_t num_slots() const { return static_cast<std::size_t>(horizon_) + 1; }
  std::size_t slot(Time t) const {
    return t.is_never() ? static_cast<std::size_t>(horizon_)
                        : static_cast<std::size_t>(t.step() - 1);
  }
  Time time_of_slot(std::size_t s) const {
    return s == static_cast<std::size_t>(horizon_)
               ? Time::never()
               : Time::at(static_cast<int>(s) + 1);
  }
  bool is_valid_time(Time t) const {
    return t.is_never() || (t.step() >= 1 && t.step() <= horizon_);
  }

  // Two spaces have the same shape when their trees coincide node for node.
  bool same_shape(const FilteredSpace& other) const;

  // Lifts F_n-block values to per-atom values.
  AtomValues lift(std::span<const Rational> block_values, int n) const;

 private:
  struct Level {
    std::vector<std::string> ids;
    std::vector<std::vector<std::size_t>> atoms;
    std::vector<Rational> probs;
    std::vector<std::size_t> parent;
    std::vector<std::size_t> block_of_atom;
  };
  const Level& level(int n) const {
    return levels_[static_cast<std::size_t>(n - 1)];
  }

  int horizon_ = 0;
  std::string root_id_;
  std::vector<Rational> atom_probs_;
  std::vector<Level> levels_;
};

// Adapted process: a value per F_n-atom for each n in 1..T, plus a value per
// atom for the never slot.
struct AdaptedProcess {
  std::vector<BlockValues> values;  // values[n-1][block]
  AtomValues infinity;              // per atom

  static AdaptedProcess constant(const FilteredSpace& space,
                                 const Rational& c);
  static AdaptedProcess zero(const FilteredSpace& space) {
    return constant(space, Rational(0));
  }

  const Rational& at(const FilteredSpace& space, Time t,
                     std::size_t atom) const;
  // True when the value tables have the sizes the space dictates.
  bool fits(const FilteredSpace& space) const;

  friend bool operator==(const AdaptedProcess&, const AdaptedProcess&) =
      default;
};

// An event on a finite space: a subset of atoms.
class Event {
 public:
  static Event none(const FilteredSpace& space);
  static Event all(const FilteredSpace& space);
  static Event of(const FilteredSpace& space,
                  std::initializer_list<std::size_t> atoms);

  bool contains(std::size_t atom) const { return member_[atom]; }
  void insert(std::size_t atom) { member_[atom] = true; }
  std::size_t size() const { return member_.size(); }
  std::vector<std::size_t> atoms() const;
  AtomValues indicator() const;

  friend bool operator==(const Event&, const Event&) = default;

 private:
  explicit Event(std::size_t n) : member_(n, false) {}
  std::vector<bool> member_;
};

// E_P[f] for f given per atom.
Rational expectation(const FilteredSpace& space, std::span<const Rational> f);

// E[f | F_n] per F_n-atom, where f is given per F_m-atom and n <= m.
BlockValues conditional_expectation(const FilteredSpace& space,
                                    std::span<const Rational> f, int m, int n);

// Convenience overload for f given per atom (m = T).
inline BlockValues conditional_expectation(const FilteredSpace& space,
                                           std::span<const Rational> f,
                                           int n) {
  return conditional_expectation(space, f, space.horizon(), n);
}

// True iff f (per atom) is constant on every F_n-atom.
bool is_measurable(const FilteredSpace& space, std::span<const Rational> f,
                   int n);

bool is_measurable(const FilteredSpace& space, const Event& event, int n);

}  // namespace stopwright
