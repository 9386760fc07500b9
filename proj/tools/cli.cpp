#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "stopwright/conversions.hpp"
#include "stopwright/error.hpp"
#include "stopwright/games.hpp"
#include "stopwright/json_io.hpp"
#include "stopwright/monte_carlo.hpp"
#include "stopwright/payoffs.hpp"

namespace stopwright::cli {

namespace {

using json_io::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string space;
  std::string st;
  std::string st2;
  std::string problem;
  std::string game;
  std::string to;
  std::string eps;
  std::string format = "json";
  int player = 1;
  std::size_t samples = 100000;
  std::optional<std::uint64_t> seed;
  unsigned workers = 1;
  bool repair = false;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, path + ": " + e.what());
  }
}

void need(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string("missing required option ") + flag);
}

// Inputs loaded lazily, in dependency order.
class Inputs {
 public:
  explicit Inputs(const Options& o) : o_(o) {}

  const FilteredSpace& space() {
    if (!space_) space_ = json_io::space_from_json(read_json(o_.space));
    return *space_;
  }

  json_io::StoppingInput input(const std::string& path, const char* flag) {
    need(path, flag);
    return json_io::stopping_input_from_json(read_json(path), space());
  }

  // A measure document is accepted wherever a stopping time is expected and
  // read as its randomized stopping time.
  StoppingTime stopping_time(const std::string& path, const char* flag) {
    auto in = input(path, flag);
    if (auto* st = std::get_if<StoppingTime>(&in)) return std::move(*st);
    return measure_to_randomized(StoppingMeasure{std::get<MassTable>(in)},
                                 space());
  }
  StoppingTime first() { return stopping_time(o_.st, "--st"); }
  StoppingTime second() { return stopping_time(o_.st2, "--st2"); }

  StoppingProblem problem() {
    need(o_.problem, "--problem");
    return json_io::problem_from_json(read_json(o_.problem), space());
  }

  StoppingGame game() {
    need(o_.game, "--game");
    return json_io::game_from_json(read_json(o_.game), space());
  }

 private:
  const Options& o_;
  std::optional<FilteredSpace> space_;
};

Rational parse_rational_flag(const std::string& text, const char* flag) {
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw UsageError(std::string(flag) + " expects a rational, got '" + text + "'");
  }
}

Player player_of(int p) { return p == 1 ? Player::kOne : Player::kTwo; }

json cmd_validate(const Options& o, Inputs& in) {
  const FilteredSpace& space = in.space();
  json out{{"valid", true},
           {"horizon", space.horizon()},
           {"atoms", space.num_atoms()}};
  if (!o.st.empty()) {
    auto st = in.input(o.st, "--st");
    if (auto* s = std::get_if<StoppingTime>(&st)) {
      if (auto v = validate(*s, space))
        throw Error(ErrorCode::kValidation, v->str());
      out["stopping_time"] = representation_name(representation_of(*s));
    } else {
      if (!is_stopping_measure(std::get<MassTable>(st), space))
        throw Error(ErrorCode::kNotAStoppingMeasure,
                    "mass table is not a stopping measure");
      out["stopping_time"] = "measure";
    }
  }
  if (!o.problem.empty()) {
    in.problem();
    out["problem"] = true;
  }
  if (!o.game.empty()) out["zero_sum"] = in.game().is_zero_sum();
  return out;
}

json cmd_convert(const Options& o, Inputs& in) {
  const FilteredSpace& space = in.space();
  const Representation target = *parse_representation(o.to);
  auto input = in.input(o.st, "--st");
  StoppingTime st;
  if (auto* s = std::get_if<StoppingTime>(&input)) {
    if (o.repair) throw UsageError("--repair applies to measure inputs only");
    st = std::move(*s);
  } else if (o.repair) {
    st = repair_to_randomized(std::get<MassTable>(input), space);
  } else {
    st = measure_to_randomized(StoppingMeasure{std::get<MassTable>(input)}, space);
  }
  return json_io::to_json(convert(st, target, space), space);
}

json cmd_dist(const Options& o, Inputs& in) {
  const FilteredSpace& space = in.space();
  auto input = in.input(o.st, "--st");
  if (auto* s = std::get_if<StoppingTime>(&input))
    return json_io::measure_to_json(detailed_distribution(*s, space).mass, space);
  const MassTable& mass = std::get<MassTable>(input);
  if (!is_stopping_measure(mass, space))
    throw Error(ErrorCode::kNotAStoppingMeasure,
                "mass table is not a stopping measure");
  return json_io::measure_to_json(mass, space);
}

json cmd_equiv(const Options&, Inputs& in) {
  const FilteredSpace& space = in.space();
  const StoppingTime a = in.first();
  const StoppingTime b = in.second();
  const auto d = distinguish(a, b, space);
  json out{{"equivalent", !d.has_value()}};
  if (d) {
    out["witness"] = {{"atom", space.atom_id(d->event.atoms().front())},
                      {"time", json_io::to_json(d->time)},
                      {"first_mass", json_io::to_json(d->first_mass)},
                      {"second_mass", json_io::to_json(d->second_mass)},
                      {"gap", json_io::to_json(d->gap)}};
  }
  return out;
}

json cmd_payoff(const Options& o, Inputs& in) {
  const FilteredSpace& space = in.space();
  const StoppingTime st = in.first();
  const StoppingProblem x = in.problem();
  json out{{"payoff", json_io::to_json(payoff(st, x, space))}};
  if (!o.eps.empty()) {
    const Rational eps = parse_rational_flag(o.eps, "--eps");
    out["epsilon"] = json_io::to_json(eps);
    out["epsilon_optimal"] = check_epsilon_optimal(st, x, eps, space);
  }
  return out;
}

json cmd_snell(const Options&, Inputs& in) {
  const FilteredSpace& space = in.space();
  const SnellResult r = snell_value(in.problem(), space);
  json values = json_io::to_json(
      AdaptedProcess{r.envelope, AtomValues(space.num_atoms())}, space)["values"];
  return {{"value", json_io::to_json(r.value)},
          {"argmax", json_io::to_json(StoppingTime{r.argmax}, space)},
          {"envelope", std::move(values)}};
}

json game_payoff_json(const GamePayoff& g) {
  return {{"first", json_io::to_json(g.first)},
          {"second", json_io::to_json(g.second)}};
}

json cmd_game_payoff(const Options&, Inputs& in) {
  const FilteredSpace& space = in.space();
  const StoppingGame game = in.game();
  return game_payoff_json(game_payoff(in.first(), in.second(), game, space));
}

json cmd_game_value(const Options&, Inputs& in) {
  const FilteredSpace& space = in.space();
  const ZeroSumSolution s = zero_sum_value(in.game(), space);
  json values = json_io::to_json(
      AdaptedProcess{s.values, AtomValues(space.num_atoms())}, space)["values"];
  return {{"value", json_io::to_json(s.value)},
          {"first", json_io::to_json(StoppingTime{s.first}, space)},
          {"second", json_io::to_json(StoppingTime{s.second}, space)},
          {"values", std::move(values)}};
}

json cmd_br(const Options& o, Inputs& in) {
  const FilteredSpace& space = in.space();
  const StoppingGame game = in.game();
  const BestResponse br =
      best_response_value(in.first(), game, player_of(o.player), space);
  return {{"player", o.player},
          {"value", json_io::to_json(br.value)},
          {"strategy", json_io::to_json(StoppingTime{br.strategy}, space)}};
}

json cmd_eq_check(const Options& o, Inputs& in) {
  const FilteredSpace& space = in.space();
  const StoppingGame game = in.game();
  const StoppingTime first = in.first();
  const StoppingTime second = in.second();
  const Rational eps =
      parse_rational_flag(o.eps.empty() ? "0" : o.eps, "--eps");
  const bool ok = check_epsilon_equilibrium(first, second, game, eps, space);
  const GamePayoff g = game_payoff(first, second, game, space);
  const Rational br1 = best_response_value(second, game, Player::kOne, space).value;
  const Rational br2 = best_response_value(first, game, Player::kTwo, space).value;
  return {{"equilibrium", ok},
          {"epsilon", json_io::to_json(eps)},
          {"payoff", game_payoff_json(g)},
          {"best_response",
           {{"first", json_io::to_json(br1)}, {"second", json_io::to_json(br2)}}},
          {"gain",
           {{"first", json_io::to_json(br1 - g.first)},
            {"second", json_io::to_json(br2 - g.second)}}}};
}

std::uint64_t default_seed() {
  const char* env = std::getenv("STOPWRIGHT_SEED");
  if (env == nullptr || *env == '\0') return 0;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used == std::string(env).size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(std::string("STOPWRIGHT_SEED is not an unsigned integer: '") +
                   env + "'");
}

json cmd_sample(const Options& o, Inputs& in) {
  const FilteredSpace& space = in.space();
  SamplingOptions opts;
  opts.samples = o.samples;
  opts.seed = o.seed ? *o.seed : default_seed();
  opts.workers = o.workers;
  json out{{"samples", opts.samples}, {"seed", opts.seed}};
  const StoppingTime first = in.first();
  if (!o.st2.empty() || !o.game.empty()) {
    need(o.st2, "--st2");
    const StoppingGame game = in.game();
    const EmpiricalGamePayoff g =
        empirical_game_payoff(first, in.second(), game, space, opts);
    out["first"] = g.first;
    out["second"] = g.second;
    return out;
  }
  const EmpiricalDistribution d =
      empirical_detailed_distribution(first, space, opts);
  json counts = json::object();
  json freqs = json::object();
  for (std::size_t a = 0; a < space.num_atoms(); ++a) {
    json c = json::object();
    json f = json::object();
    for (std::size_t s = 0; s < space.num_slots(); ++s) {
      const std::string t = space.time_of_slot(s).str();
      c[t] = d.counts[a][s];
      f[t] = d.frequencies[a][s];
    }
    counts[space.atom_id(a)] = std::move(c);
    freqs[space.atom_id(a)] = std::move(f);
  }
  out["counts"] = std::move(counts);
  out["frequencies"] = std::move(freqs);
  return out;
}

// Flattens a document into (path, value) rows.
void flatten(const json& j, const std::string& path,
             std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      flatten(v, path.empty() ? k : path + "." + k, rows);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      flatten(j[i], path + "[" + std::to_string(i) + "]", rows);
  } else {
    rows.emplace_back(path, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

void write_table(const json& doc, std::ostream& out) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(doc, "", rows);
  std::size_t width = 3;
  for (const auto& [k, _] : rows) width = std::max(width, k.size());
  auto line = [&](const std::string& k, const std::string& v) {
    out << k << std::string(width - k.size() + 2, ' ') << v << '\n';
  };
  line("key", "value");
  line(std::string(width, '-'), "-----");
  for (const auto& [k, v] : rows) line(k, v);
}

void write_error(std::ostream& err, std::string_view name,
                 const std::string& message) {
  err << json{{"error", name}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Random stopping times and stopping games on finite filtered spaces",
               "stopwright"};
  app.require_subcommand(1);
  Options o;

  using Command = std::function<json(const Options&, Inputs&)>;
  std::map<CLI::App*, Command> commands;

  auto files = [&](CLI::App* sub, bool st, bool st2, bool problem, bool game) {
    sub->add_option("--space", o.space, "scenario tree JSON")->required();
    if (st) sub->add_option("--st", o.st, "stopping time JSON");
    if (st2) sub->add_option("--st2", o.st2, "second stopping time JSON");
    if (problem) sub->add_option("--problem", o.problem, "stopping problem JSON");
    if (game) sub->add_option("--game", o.game, "stopping game JSON");
    sub->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "table"}));
  };
  auto add = [&](const char* name, const char* help, Command cmd) {
    CLI::App* sub = app.add_subcommand(name, help);
    commands[sub] = std::move(cmd);
    return sub;
  };

  auto* validate_cmd = add("validate", "check a space and optional inputs", cmd_validate);
  files(validate_cmd, true, false, true, true);

  auto* convert_cmd = add("convert", "convert a stopping time", cmd_convert);
  files(convert_cmd, true, false, false, false);
  convert_cmd->add_option("--to", o.to, "target representation")
      ->required()
      ->check(CLI::IsMember({"pure", "randomized", "behavior", "mixed"}));
  convert_cmd->add_flag("--repair", o.repair,
                        "clip an inconsistent measure into a randomized time");

  files(add("dist", "detailed distribution", cmd_dist), true, false, false, false);
  files(add("equiv", "test equivalence of two stopping times", cmd_equiv), true,
        true, false, false);

  auto* payoff_cmd = add("payoff", "expected payoff of a stopping time", cmd_payoff);
  files(payoff_cmd, true, false, true, false);
  payoff_cmd->add_option("--eps", o.eps, "check epsilon-optimality at this tolerance");

  files(add("snell", "optimal stopping value", cmd_snell), false, false, true, false);
  files(add("game-payoff", "expected payoffs of a strategy profile", cmd_game_payoff),
        true, true, false, true);
  files(add("game-value", "value of a zero-sum game", cmd_game_value), false, false,
        false, true);

  auto* br_cmd = add("br", "best-response value against --st", cmd_br);
  files(br_cmd, true, false, false, true);
  br_cmd->add_option("--player", o.player, "responding player")
      ->check(CLI::IsMember({1, 2}));

  auto* eq_cmd = add("eq-check", "check an epsilon-equilibrium", cmd_eq_check);
  files(eq_cmd, true, true, false, true);
  eq_cmd->add_option("--eps", o.eps, "tolerance");

  auto* sample_cmd = add("sample", "Monte-Carlo detailed distribution or game payoff",
                         cmd_sample);
  files(sample_cmd, true, true, false, true);
  sample_cmd->add_option("--samples", o.samples, "sample count");
  sample_cmd->add_option("--seed", o.seed, "seed (default: $STOPWRIGHT_SEED or 0)");
  sample_cmd->add_option("--workers", o.workers, "worker threads");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    write_error(err, "UsageError", e.what());
    return kUsageError;
  }

  try {
    CLI::App* chosen = app.get_subcommands().front();
    Inputs inputs(o);
    const json doc = commands.at(chosen)(o, inputs);
    if (o.format == "table") {
      write_table(doc, out);
    } else {
      out << doc.dump(2) << '\n';
    }
    return kOk;
  } catch (const UsageError& e) {
    write_error(err, "UsageError", e.what());
    return kUsageError;
  } catch (const Error& e) {
    write_error(err, error_name(e.code()), e.detail());
    return kDomainError;
  }
}

}  // namespace stopwright::cli
