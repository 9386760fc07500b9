#pragma once

// JSON encodings of spaces, processes, stopping times, stopping measures,
// stopping problems and games. Rationals are strings "a/b" in lowest terms
// (integers may also be given as JSON integers); time keys are "1".."T" and
// "inf".
//
//   space:      {"nodes":[{"id":"root","parent":null},
//                         {"id":"w1","parent":"root","prob":"1/2"}, ...]}
//   process:    {"values":{"1":{"A":"1/2",...},...},"infinity":{"w1":"0",...}}
//   pure:       {"type":"pure","stop":{"w1":1,"w2":"inf",...}}
//   randomized: {"type":"randomized","rho":{"1":{"A":"1/2"},...},
//                "rho_inf":{"w1":"0",...}}
//   behavior:   {"type":"behavior","beta":{"1":{"A":"1/2"},...}}
//   mixed:      {"type":"mixed","breakpoints":["0","1/4","1"],
//                "sections":[<pure>,<pure>]}
//   measure:    {"type":"measure","mass":{"w1":{"1":"1/8","inf":"0"},...}}
//   game:       {"players":2,"zero_sum":false,
//                "payoffs":{"1|{1}":<process>,"1|{2}":...,"1|{12}":...,
//                           "2|{1}":...,"2|{2}":...,"2|{12}":...}}
//
// Decoding failures throw Error(kParse); structural problems in a space
// surface as the errors of FilteredSpace::from_tree.

#include <json.hpp>

#include <variant>

#include "stopwright/games.hpp"
#include "stopwright/payoffs.hpp"
#include "stopwright/space.hpp"
#include "stopwright/stopping_time.hpp"

namespace stopwright::json_io {

using nlohmann::json;

Rational rational_from_json(const json& j);
json to_json(const Rational& r);

Time time_from_json(const json& j);
json to_json(Time t);

FilteredSpace space_from_json(const json& j);
json to_json(const FilteredSpace& space);

AdaptedProcess process_from_json(const json& j, const FilteredSpace& space);
json to_json(const AdaptedProcess& x, const FilteredSpace& space);

StoppingProblem problem_from_json(const json& j, const FilteredSpace& space);

// A "measure" document is either a stopping-time input or a raw mass table.
using StoppingInput = std::variant<StoppingTime, MassTable>;

StoppingInput stopping_input_from_json(const json& j,
                                       const FilteredSpace& space);
// Throws Error(kParse) on a "measure" document.
StoppingTime stopping_time_from_json(const json& j, const FilteredSpace& space);
json to_json(const StoppingTime& st, const FilteredSpace& space);

MassTable mass_from_json(const json& j, const FilteredSpace& space);
json measure_to_json(const MassTable& mass, const FilteredSpace& space);

StoppingGame game_from_json(const json& j, const FilteredSpace& space);
json to_json(const StoppingGame& game, const FilteredSpace& space);

}  // namespace stopwright::json_io
