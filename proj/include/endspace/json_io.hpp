#pragma once
// JSON (de)serialization for the CLI-facing object kinds. Rationals
// travel as strings "p/q" (or "p" when integral) so nothing is ever
// rounded through a double.

#include <string>

#include <json.hpp>

#include "endspace/bratteli.hpp"
#include "endspace/numbers.hpp"
#include "endspace/thompson.hpp"
#include "endspace/tree_system.hpp"
#include "endspace/ultrametric.hpp"

namespace endspace {

Rat rat_from_json(const nlohmann::json& j);
nlohmann::json rat_to_json(const Rat& r);

// {"points": ["a", ...], "dist": [["p/q", ...], ...]}
FiniteUltrametricSpace space_from_json(const nlohmann::json& j);
nlohmann::json space_to_json(const FiniteUltrametricSpace& s);

// {"kind": "eventually_periodic" | "explicit", "prefix": [level...],
//  "cycle": [level...]} with level = {"classes": [{"children": [int...]}...]},
// or {"kind": "sft", "matrix": [[0|1...]...]},
// or {"kind": "cfrac", "prefix": [int...], "cycle": [int...]}.
TreeSystem tree_from_json(const nlohmann::json& j);
nlohmann::json tree_to_json(const TreeSystem& t);

// Mirrors the tree schema with matrices in place of levels.
BratteliDiagram diagram_from_json(const nlohmann::json& j);
nlohmann::json diagram_to_json(const BratteliDiagram& d);

// {"n": int, "pairs": [["u", "v"], ...]}
PrefixMap prefix_map_from_json(const nlohmann::json& j);
nlohmann::json prefix_map_to_json(const PrefixMap& g);

// {"thresholds": ["p/q", ...], "blocks": [[[label, ...], ...], ...]}
nlohmann::json dendrogram_to_json(const Dendrogram& d, const std::vector<std::string>& labels);

// Throws domain_error (not nlohmann's exceptions) on malformed input.
nlohmann::json parse_json_text(const std::string& text, const std::string& what);

}  // namespace endspace
