#include "stopwright/json_io.hpp"

#include <array>
#include <string_view>

#include "stopwright/error.hpp"

namespace stopwright::json_io {

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw Error(ErrorCode::kParse, msg);
}

void require_object(const json& j, const std::string& what) {
  if (!j.is_object()) fail(what + " must be a JSON object");
}

const json& member(const json& j, const char* key, const std::string& what) {
  require_object(j, what);
  auto it = j.find(key);
  if (it == j.end()) fail(what + " is missing \"" + key + "\"");
  return *it;
}

Rational rational_at(const json& j, const std::string& where) {
  try {
    return rational_from_json(j);
  } catch (const Error& e) {
    fail(where + ": " + e.detail());
  }
}

// {"<id>": rational} over the F_n-atoms of one level.
BlockValues level_from_json(const json& j, const FilteredSpace& space, int n,
                            const std::string& what) {
  require_object(j, what);
  BlockValues out(space.num_blocks(n));
  for (std::size_t b = 0; b < out.size(); ++b) {
    const std::string& id = space.block_id(n, b);
    auto it = j.find(id);
    if (it == j.end()) fail(what + " is missing F_" + std::to_string(n) + "-atom '" + id + "'");
    out[b] = rational_at(*it, what + "['" + id + "']");
  }
  for (const auto& [key, _] : j.items()) {
    if (!space.find_block(n, key))
      fail(what + " has unknown F_" + std::to_string(n) + "-atom '" + key + "'");
  }
  return out;
}

std::vector<BlockValues> block_table_from_json(const json& j,
                                               const FilteredSpace& space,
                                               const std::string& what) {
  require_object(j, what);
  std::vector<BlockValues> out;
  for (int n = 1; n <= space.horizon(); ++n) {
    const std::string key = std::to_string(n);
    auto it = j.find(key);
    if (it == j.end()) fail(what + " is missing time " + key);
    out.push_back(level_from_json(*it, space, n, what + "[" + key + "]"));
  }
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (int n = 1; n <= space.horizon(); ++n)
      known = known || key == std::to_string(n);
    if (!known) fail(what + " has unknown time key '" + key + "'");
  }
  return out;
}

json block_table_to_json(const std::vector<BlockValues>& t,
                         const FilteredSpace& space) {
  json out = json::object();
  for (int n = 1; n <= space.horizon(); ++n) {
    json level = json::object();
    const auto& values = t[static_cast<std::size_t>(n - 1)];
    for (std::size_t b = 0; b < values.size(); ++b)
      level[space.block_id(n, b)] = to_json(values[b]);
    out[std::to_string(n)] = std::move(level);
  }
  return out;
}

json atom_values_to_json(const AtomValues& v, const FilteredSpace& space) {
  json out = json::object();
  for (std::size_t a = 0; a < v.size(); ++a) out[space.atom_id(a)] = to_json(v[a]);
  return out;
}

PureStoppingTime pure_from_json(const json& j, const FilteredSpace& space,
                                const std::string& what) {
  const json& stop = member(j, "stop", what);
  require_object(stop, what + ".stop");
  PureStoppingTime out{std::vector<Time>(space.num_atoms())};
  for (std::size_t a = 0; a < space.num_atoms(); ++a) {
    auto it = stop.find(space.atom_id(a));
    if (it == stop.end())
      fail(what + ".stop is missing atom '" + space.atom_id(a) + "'");
    out.stop[a] = time_from_json(*it);
  }
  for (const auto& [key, _] : stop.items())
    if (!space.find_atom(key)) fail(what + ".stop has unknown atom '" + key + "'");
  return out;
}

json pure_to_json(const PureStoppingTime& st, const FilteredSpace& space) {
  json stop = json::object();
  for (std::size_t a = 0; a < st.stop.size(); ++a)
    stop[space.atom_id(a)] = to_json(st.stop[a]);
  return {{"type", "pure"}, {"stop", std::move(stop)}};
}

struct GameKey {
  Player player;
  Coalition coalition;
  const char* name;
};

constexpr std::array<GameKey, 6> kGameKeys{{
    {Player::kOne, Coalition::kFirst, "1|{1}"},
    {Player::kOne, Coalition::kSecond, "1|{2}"},
    {Player::kOne, Coalition::kBoth, "1|{12}"},
    {Player::kTwo, Coalition::kFirst, "2|{1}"},
    {Player::kTwo, Coalition::kSecond, "2|{2}"},
    {Player::kTwo, Coalition::kBoth, "2|{12}"},
}};

}  // namespace

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) fail("expected a rational string, got " + j.dump());
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    fail(e.what());
  }
}

json to_json(const Rational& r) { return r.str(); }

Time time_from_json(const json& j) {
  if (j.is_number_integer()) return Time::at(j.get<int>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return Time::never();
    try {
      std::size_t used = 0;
      const int n = std::stoi(s, &used);
      if (used == s.size()) return Time::at(n);
    } catch (const std::exception&) {
    }
  }
  fail("expected a time index (integer or \"inf\"), got " + j.dump());
}

json to_json(Time t) {
  if (t.is_never()) return "inf";
  return t.step();
}

FilteredSpace space_from_json(const json& j) {
  const json& nodes = member(j, "nodes", "space");
  if (!nodes.is_array()) fail("space.nodes must be an array");
  std::vector<TreeNode> tree;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string where = "space.nodes[" + std::to_string(i) + "]";
    const json& id = member(nodes[i], "id", where);
    if (!id.is_string()) fail(where + ".id must be a string");
    TreeNode node{id.get<std::string>(), std::nullopt, std::nullopt};
    if (auto it = nodes[i].find("parent"); it != nodes[i].end() && !it->is_null()) {
      if (!it->is_string()) fail(where + ".parent must be a string or null");
      node.parent = it->get<std::string>();
    }
    if (auto it = nodes[i].find("prob"); it != nodes[i].end())
      node.prob = rational_at(*it, where + ".prob");
    tree.push_back(std::move(node));
  }
  return FilteredSpace::from_tree(tree);
}

json to_json(const FilteredSpace& space) {
  json nodes = json::array();
  nodes.push_back({{"id", space.root_id()}, {"parent", nullptr}});
  for (int n = 1; n <= space.horizon(); ++n) {
    for (std::size_t b = 0; b < space.num_blocks(n); ++b) {
      json node{{"id", space.block_id(n, b)},
                {"parent", n == 1 ? space.root_id()
                                  : space.block_id(n - 1, space.parent_block(n, b))}};
      if (n == space.horizon()) node["prob"] = to_json(space.prob(b));
      nodes.push_back(std::move(node));
    }
  }
  return {{"nodes", std::move(nodes)}};
}

AdaptedProcess process_from_json(const json& j, const FilteredSpace& space) {
  AdaptedProcess x;
  x.values = block_table_from_json(member(j, "values", "process"), space,
                                   "process.values");
  x.infinity = level_from_json(member(j, "infinity", "process"), space,
                               space.horizon(), "process.infinity");
  return x;
}

json to_json(const AdaptedProcess& x, const FilteredSpace& space) {
  return {{"values", block_table_to_json(x.values, space)},
          {"infinity", atom_values_to_json(x.infinity, space)}};
}

StoppingProblem problem_from_json(const json& j, const FilteredSpace& space) {
  return StoppingProblem{process_from_json(j, space)};
}

StoppingInput stopping_input_from_json(const json& j,
                                       const FilteredSpace& space) {
  const json& type = member(j, "type", "stopping time");
  if (!type.is_string()) fail("stopping time \"type\" must be a string");
  const std::string t = type.get<std::string>();
  if (t == "pure") return StoppingTime{pure_from_json(j, space, "pure")};
  if (t == "randomized") {
    RandomizedStoppingTime rho;
    rho.rho = block_table_from_json(member(j, "rho", "randomized"), space,
                                    "randomized.rho");
    rho.rho_inf = level_from_json(member(j, "rho_inf", "randomized"), space,
                                  space.horizon(), "randomized.rho_inf");
    return StoppingTime{std::move(rho)};
  }
  if (t == "behavior") {
    BehaviorStoppingTime beta;
    beta.beta = block_table_from_json(member(j, "beta", "behavior"), space,
                                      "behavior.beta");
    return StoppingTime{std::move(beta)};
  }
  if (t == "mixed") {
    MixedStoppingTime mu;
    const json& bp = member(j, "breakpoints", "mixed");
    const json& sections = member(j, "sections", "mixed");
    if (!bp.is_array() || !sections.is_array())
      fail("mixed.breakpoints and mixed.sections must be arrays");
    for (std::size_t i = 0; i < bp.size(); ++i)
      mu.breakpoints.push_back(
          rational_at(bp[i], "mixed.breakpoints[" + std::to_string(i) + "]"));
    for (std::size_t k = 0; k < sections.size(); ++k)
      mu.sections.push_back(pure_from_json(
          sections[k], space, "mixed.sections[" + std::to_string(k) + "]"));
    return StoppingTime{std::move(mu)};
  }
  if (t == "measure") return mass_from_json(j, space);
  fail("unknown stopping time type '" + t + "'");
}

StoppingTime stopping_time_from_json(const json& j,
                                     const FilteredSpace& space) {
  StoppingInput in = stopping_input_from_json(j, space);
  if (auto* st = std::get_if<StoppingTime>(&in)) return std::move(*st);
  fail("expected a stopping time, got a stopping measure");
}

json to_json(const StoppingTime& st, const FilteredSpace& space) {
  if (const auto* s = std::get_if<PureStoppingTime>(&st))
    return pure_to_json(*s, space);
  if (const auto* s = std::get_if<RandomizedStoppingTime>(&st))
    return {{"type", "randomized"},
            {"rho", block_table_to_json(s->rho, space)},
            {"rho_inf", atom_values_to_json(s->rho_inf, space)}};
  if (const auto* s = std::get_if<BehaviorStoppingTime>(&st))
    return {{"type", "behavior"}, {"beta", block_table_to_json(s->beta, space)}};
  const auto& mu = std::get<MixedStoppingTime>(st);
  json bp = json::array();
  for (const auto& r : mu.breakpoints) bp.push_back(to_json(r));
  json sections = json::array();
  for (const auto& s : mu.sections) sections.push_back(pure_to_json(s, space));
  return {{"type", "mixed"},
          {"breakpoints", std::move(bp)},
          {"sections", std::move(sections)}};
}

MassTable mass_from_json(const json& j, const FilteredSpace& space) {
  const json& mass = member(j, "mass", "measure");
  require_object(mass, "measure.mass");
  MassTable out(space.num_atoms(), std::vector<Rational>(space.num_slots()));
  for (std::size_t a = 0; a < space.num_atoms(); ++a) {
    const std::string& id = space.atom_id(a);
    auto row = mass.find(id);
    if (row == mass.end()) fail("measure.mass is missing atom '" + id + "'");
    require_object(*row, "measure.mass['" + id + "']");
    for (std::size_t s = 0; s < space.num_slots(); ++s) {
      const std::string key = space.time_of_slot(s).str();
      auto it = row->find(key);
      if (it == row->end())
        fail("measure.mass['" + id + "'] is missing time " + key);
      out[a][s] = rational_at(*it, "measure.mass['" + id + "'][" + key + "]");
    }
    if (row->size() != space.num_slots())
      fail("measure.mass['" + id + "'] has unknown time keys");
  }
  for (const auto& [key, _] : mass.items())
    if (!space.find_atom(key)) fail("measure.mass has unknown atom '" + key + "'");
  return out;
}

json measure_to_json(const MassTable& mass, const FilteredSpace& space) {
  json rows = json::object();
  for (std::size_t a = 0; a < mass.size(); ++a) {
    json row = json::object();
    for (std::size_t s = 0; s < mass[a].size(); ++s)
      row[space.time_of_slot(s).str()] = to_json(mass[a][s]);
    rows[space.atom_id(a)] = std::move(row);
  }
  return {{"type", "measure"}, {"mass", std::move(rows)}};
}

StoppingGame game_from_json(const json& j, const FilteredSpace& space) {
  if (auto it = j.find("players"); it != j.end() && *it != json(2))
    fail("only two-player games are supported");
  const json& payoffs = member(j, "payoffs", "game");
  require_object(payoffs, "game.payoffs");
  StoppingGame game;
  for (const GameKey& key : kGameKeys) {
    auto it = payoffs.find(key.name);
    if (it == payoffs.end()) {
      // "{1,2}" is accepted as a spelling of "{12}".
      std::string alt(key.name);
      if (alt.ends_with("{12}")) it = payoffs.find(alt.substr(0, 2) + "{1,2}");
    }
    if (it == payoffs.end())
      fail(std::string("game.payoffs is missing \"") + key.name + "\"");
    try {
      game.payoff(key.player, key.coalition) = process_from_json(*it, space);
    } catch (const Error& e) {
      fail(std::string("game.payoffs[\"") + key.name + "\"]: " + e.detail());
    }
  }
  if (auto it = j.find("zero_sum"); it != j.end()) {
    if (!it->is_boolean()) fail("game.zero_sum must be a boolean");
    if (it->get<bool>() && !game.is_zero_sum())
      throw Error(ErrorCode::kNotZeroSum,
                  "game is flagged zero_sum but X^{1,C} + X^{2,C} != 0");
  }
  return game;
}

json to_json(const StoppingGame& game, const FilteredSpace& space) {
  json payoffs = json::object();
  for (const GameKey& key : kGameKeys)
    payoffs[key.name] = to_json(game.payoff(key.player, key.coalition), space);
  return {{"players", 2},
          {"zero_sum", game.is_zero_sum()},
          {"payoffs", std::move(payoffs)}};
}

}  // namespace stopwright::json_io
