#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "shatter/builder.hpp"
#include "shatter/inclusion_graph.hpp"
#include "shatter/set_system.hpp"
#include "shatter/shattering.hpp"

namespace shatter {

/// Sorted 1-based element array, e.g. [2, 3].
nlohmann::json to_json(SetMask mask);
/// Parses an element array; field names the location for error messages.
SetMask mask_from_json(const nlohmann::json& j, int n, const std::string& field);

// Set systems:
//   JSON  {"n": 4, "sets": [[], [1], [2, 3]]}
//   text  first line "n=<int>", then one set per line, elements separated
//         by spaces, "-" for the empty set. Blank lines and lines starting
//         with '#' are ignored.
nlohmann::json to_json(const SetSystem& system);
SetSystem system_from_json(const nlohmann::json& j);
std::string to_text(const SetSystem& system);
SetSystem system_from_text(std::string_view text);
/// Picks JSON when the first non-blank character is '{', text otherwise.
SetSystem parse_set_system(std::string_view text);

/// Like a set system, plus "kind": "Sh" | "st".
nlohmann::json to_json(const ShatterFamily& family);
ShatterFamily family_from_json(const nlohmann::json& j);

// Build scripts:
//   JSON  {"n": 4, "steps": [{"kind": "A", "alpha": 1, "w": []},
//                             {"kind": "B", "alpha": 2, "beta": 3, "w": [2]}],
//          "flip": [1]}                 ("flip" omitted when empty)
//         generalized steps: {"kind": "G", "s": [1, 2], "f": [1, 2]}
//   text  "n=<int>", optional "flip <elements>", then "A 1 | -",
//         "B 2 3 | 2" or "G 1 2 | 1 2", one step per line.
nlohmann::json to_json(const BuildScript& script);
BuildScript script_from_json(const nlohmann::json& j);
std::string to_text(const BuildScript& script);
BuildScript script_from_text(std::string_view text);
BuildScript parse_build_script(std::string_view text);

/// {"vertices": [...], "edges": [{"from": [...], "to": [...], "label": k}]}
nlohmann::json to_json(const InclusionGraph& graph);

} // namespace shatter
