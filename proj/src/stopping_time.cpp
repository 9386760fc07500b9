#include "stopwright/stopping_time.hpp"

#include "stopwright/error.hpp"

namespace stopwright {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

bool in_unit_interval(const Rational& x) {
  return x.sign() >= 0 && x <= Rational(1);
}

Violation make(Violation::Kind kind, std::string message) {
  return Violation{kind, std::nullopt, {}, std::nullopt, std::move(message)};
}

std::optional<Violation> check_block_table(const std::vector<BlockValues>& t,
                                           const FilteredSpace& space,
                                           std::string_view name) {
  if (t.size() != static_cast<std::size_t>(space.horizon()))
    return make(Violation::Kind::kMalformed,
                std::string(name) + " has " + std::to_string(t.size()) +
                    " time levels, expected " +
                    std::to_string(space.horizon()));
  for (int n = 1; n <= space.horizon(); ++n) {
    const auto& level = t[static_cast<std::size_t>(n - 1)];
    if (level.size() != space.num_blocks(n))
      return make(Violation::Kind::kMalformed,
                  std::string(name) + " at n=" + std::to_string(n) + " has " +
                      std::to_string(level.size()) + " blocks, expected " +
                      std::to_string(space.num_blocks(n)));
    for (std::size_t b = 0; b < level.size(); ++b) {
      if (!in_unit_interval(level[b])) {
        Violation v = make(Violation::Kind::kOutOfRange,
                           std::string(name) + " value " + level[b].str() +
                               " outside [0,1]");
        v.time = Time::at(n);
        v.location = space.block_id(n, b);
        return v;
      }
    }
  }
  return std::nullopt;
}

std::optional<Violation> validate_pure(const PureStoppingTime& st,
                                       const FilteredSpace& space) {
  if (st.stop.size() != space.num_atoms())
    return make(Violation::Kind::kMalformed,
                "stop table has " + std::to_string(st.stop.size()) +
                    " atoms, expected " + std::to_string(space.num_atoms()));
  for (std::size_t a = 0; a < st.stop.size(); ++a) {
    if (!space.is_valid_time(st.stop[a])) {
      Violation v = make(Violation::Kind::kOutOfRange,
                         "stop index " + st.stop[a].str() + " outside 1.." +
                             std::to_string(space.horizon()) + " or inf");
      v.location = space.atom_id(a);
      return v;
    }
  }
  for (int n = 1; n <= space.horizon(); ++n) {
    for (std::size_t b = 0; b < space.num_blocks(n); ++b) {
      const auto atoms = space.block_atoms(n, b);
      const bool first = st.stop[atoms.front()] == Time::at(n);
      for (std::size_t a : atoms) {
        if ((st.stop[a] == Time::at(n)) != first) {
          Violation v = make(Violation::Kind::kNotAdapted,
                             "{stop=" + std::to_string(n) +
                                 "} is not a union of F_" + std::to_string(n) +
                                 "-atoms");
          v.time = Time::at(n);
          v.location = space.block_id(n, b);
          return v;
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<Violation> validate_randomized(const RandomizedStoppingTime& st,
                                             const FilteredSpace& space) {
  if (auto v = check_block_table(st.rho, space, "rho")) return v;
  if (st.rho_inf.size() != space.num_atoms())
    return make(Violation::Kind::kMalformed,
                "rho_inf has " + std::to_string(st.rho_inf.size()) +
                    " atoms, expected " + std::to_string(space.num_atoms()));
  for (std::size_t a = 0; a < space.num_atoms(); ++a) {
    if (!in_unit_interval(st.rho_inf[a])) {
      Violation v = make(Violation::Kind::kOutOfRange,
                         "rho_inf value " + st.rho_inf[a].str() +
                             " outside [0,1]");
      v.time = Time::never();
      v.location = space.atom_id(a);
      return v;
    }
  }
  for (std::size_t a = 0; a < space.num_atoms(); ++a) {
    Rational sum = st.rho_inf[a];
    for (int n = 1; n <= space.horizon(); ++n)
      sum += st.rho[static_cast<std::size_t>(n - 1)][space.block_of(n, a)];
    if (sum != Rational(1)) {
      Violation v = make(Violation::Kind::kSumNotOne,
                         "stop probabilities sum to " + sum.str());
      v.location = space.atom_id(a);
      return v;
    }
  }
  return std::nullopt;
}

std::optional<Violation> validate_mixed(const MixedStoppingTime& st,
                                        const FilteredSpace& space) {
  const auto& r = st.breakpoints;
  if (r.size() < 2 || r.front() != Rational(0) || r.back() != Rational(1))
    return make(Violation::Kind::kMalformed,
                "breakpoints must run from 0 to 1");
  for (std::size_t k = 1; k < r.size(); ++k) {
    if (!(r[k - 1] < r[k]))
      return make(Violation::Kind::kMalformed,
                  "breakpoints are not strictly increasing at index " +
                      std::to_string(k));
  }
  if (st.sections.size() + 1 != r.size())
    return make(Violation::Kind::kMalformed,
                std::to_string(st.sections.size()) + " sections for " +
                    std::to_string(r.size() - 1) + " intervals");
  for (std::size_t k = 0; k < st.sections.size(); ++k) {
    if (auto inner = validate_pure(st.sections[k], space)) {
      if (inner->kind == Violation::Kind::kMalformed) {
        inner->section = k + 1;
        return inner;
      }
      Violation v = *inner;
      v.kind = Violation::Kind::kSectionNotStoppingTime;
      v.section = k + 1;
      v.message = "section " + std::to_string(k + 1) + ": " + inner->message;
      return v;
    }
  }
  return std::nullopt;
}

}  // namespace

Representation representation_of(const StoppingTime& st) {
  return static_cast<Representation>(st.index());
}

std::string_view representation_name(Representation r) {
  switch (r) {
    case Representation::kPure: return "pure";
    case Representation::kRandomized: return "randomized";
    case Representation::kBehavior: return "behavior";
    case Representation::kMixed: return "mixed";
  }
  return "unknown";
}

std::optional<Representation> parse_representation(std::string_view name) {
  for (auto r : {Representation::kPure, Representation::kRandomized,
                 Representation::kBehavior, Representation::kMixed}) {
    if (representation_name(r) == name) return r;
  }
  return std::nullopt;
}

Rational StoppingMeasure::total() const {
  Rational sum;
  for (const auto& row : mass)
    for (const auto& m : row) sum += m;
  return sum;
}

std::string_view violation_kind_name(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::kNotAdapted: return "NotAdapted";
    case Violation::Kind::kSumNotOne: return "SumNotOne";
    case Violation::Kind::kOutOfRange: return "OutOfRange";
    case Violation::Kind::kSectionNotStoppingTime:
      return "SectionNotStoppingTime";
    case Violation::Kind::kMalformed: return "Malformed";
  }
  return "Unknown";
}

std::string Violation::str() const {
  std::string out(violation_kind_name(kind));
  std::string args;
  auto add = [&](const std::string& s) {
    if (!args.empty()) args += ", ";
    args += s;
  };
  if (section) add("section=" + std::to_string(*section));
  if (time) add("n=" + time->str());
  if (!location.empty()) add("at=" + location);
  if (!args.empty()) out += "(" + args + ")";
  return out + ": " + message;
}

std::optional<Violation> validate(const StoppingTime& st,
                                  const FilteredSpace& space) {
  return std::visit(
      Overloaded{
          [&](const PureStoppingTime& s) { return validate_pure(s, space); },
          [&](const RandomizedStoppingTime& s) {
            return validate_randomized(s, space);
          },
          [&](const BehaviorStoppingTime& s) {
            return check_block_table(s.beta, space, "beta");
          },
          [&](const MixedStoppingTime& s) { return validate_mixed(s, space); },
      },
      st);
}

void require_valid(const StoppingTime& st, const FilteredSpace& space) {
  if (auto v = validate(st, space)) throw Error(ErrorCode::kValidation, v->str());
}

StoppingMeasure detailed_distribution(const StoppingTime& st,
                                      const FilteredSpace& space) {
  require_valid(st, space);
  const std::size_t slots = space.num_slots();
  const int horizon = space.horizon();
  StoppingMeasure nu{
      MassTable(space.num_atoms(), std::vector<Rational>(slots))};

  std::visit(
      Overloaded{
          [&](const PureStoppingTime& s) {
            for (std::size_t a = 0; a < space.num_atoms(); ++a)
              nu.mass[a][space.slot(s.stop[a])] = space.prob(a);
          },
          [&](const RandomizedStoppingTime& s) {
            for (std::size_t a = 0; a < space.num_atoms(); ++a) {
              for (int n = 1; n <= horizon; ++n)
                nu.mass[a][static_cast<std::size_t>(n - 1)] =
                    space.prob(a) *
                    s.rho[static_cast<std::size_t>(n - 1)][space.block_of(n, a)];
              nu.mass[a][slots - 1] = space.prob(a) * s.rho_inf[a];
            }
          },
          [&](const BehaviorStoppingTime& s) {
            for (std::size_t a = 0; a < space.num_atoms(); ++a) {
              Rational survive(1);
              for (int n = 1; n <= horizon; ++n) {
                const Rational& b =
                    s.beta[static_cast<std::size_t>(n - 1)][space.block_of(n, a)];
                nu.mass[a][static_cast<std::size_t>(n - 1)] =
                    space.prob(a) * survive * b;
                survive *= Rational(1) - b;
              }
              nu.mass[a][slots - 1] = space.prob(a) * survive;
            }
          },
          [&](const MixedStoppingTime& s) {
            for (std::size_t k = 0; k < s.sections.size(); ++k) {
              const Rational width = s.breakpoints[k + 1] - s.breakpoints[k];
              for (std::size_t a = 0; a < space.num_atoms(); ++a)
                nu.mass[a][space.slot(s.sections[k].stop[a])] +=
                    space.prob(a) * width;
            }
          },
      },
      st);
  return nu;
}

bool is_stopping_measure(const MassTable& mass, const FilteredSpace& space) {
  if (mass.size() != space.num_atoms()) return false;
  for (std::size_t a = 0; a < mass.size(); ++a) {
    if (mass[a].size() != space.num_slots()) return false;
    Rational row;
    for (const auto& m : mass[a]) {
      if (m.sign() < 0) return false;
      row += m;
    }
    if (row != space.prob(a)) return false;
  }
  for (int n = 1; n <= space.horizon(); ++n) {
    const auto s = static_cast<std::size_t>(n - 1);
    for (std::size_t b = 0; b < space.num_blocks(n); ++b) {
      const auto atoms = space.block_atoms(n, b);
      const Rational first = mass[atoms.front()][s] / space.prob(atoms.front());
      for (std::size_t a : atoms) {
        if (mass[a][s] / space.prob(a) != first) return false;
      }
    }
  }
  return true;
}

AtomValues density(const StoppingMeasure& nu, const FilteredSpace& space,
                   Time t) {
  AtomValues d(space.num_atoms());
  for (std::size_t a = 0; a < space.num_atoms(); ++a)
    d[a] = nu.at(space, a, t) / space.prob(a);
  return d;
}

bool equivalent(const StoppingTime& a, const StoppingTime& b,
                const FilteredSpace& space) {
  return detailed_distribution(a, space) == detailed_distribution(b, space);
}

}  // namespace stopwright
