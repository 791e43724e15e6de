#pragma once

#include <string>

#include <json.hpp>

#include "magbilap/family.hpp"
#include "magbilap/graph.hpp"

namespace magbilap {

using Json = nlohmann::json;

// Graph documents:
//   {"root": id, "mu_floor": x, "vertices": [{"id", "mu", "complete"?}...],
//    "edges": [{"u", "v", "b", "theta"}...]}
// theta is for the oriented pair (u, v); "complete" defaults to true. Schema problems raise
// ErrorKind::input ("schema"); invariant violations raise
// ErrorKind::validation with a named code.
MagneticGraph load_graph(const Json& document);
MagneticGraph load_graph_text(const std::string& text);
Json save_graph(const MagneticGraph& g);

// {"builder": "half_line_unit" | "half_line_sqrt" | "radial_tree",
//  "kappa": x, "potential_exponent": a}
FamilySpec load_family_spec(const Json& document);
Json save_family_spec(const FamilySpec& spec);

// Reads a required field of the expected JSON type or throws a schema error
// naming the path.
const Json& require_field(const Json& object, const std::string& key, const std::string& where);
double require_number(const Json& object, const std::string& key, const std::string& where);

}  // namespace magbilap
