#pragma once

#include <string>

#include "json.hpp"
#include "toricg2/ansatz.hpp"
#include "toricg2/models.hpp"

namespace toricg2 {

using json = nlohmann::json;

// Polynomial VField as {vars, entries: {"11": [[[e1,e2,e3,e4], c], ...], ...}, domain}.
// Entries are keyed by 1-based upper-triangle indices; "21" is accepted for "12" and so on.
json vfield_to_json(const VField& V);
VField vfield_from_json(const json& j);
VField load_vfield(const std::string& path);

json poly_to_json(const Poly4& p);
Poly4 poly_from_json(const json& j);

// {"nu1": [lo, hi], ..., "mu": [lo, hi]}
json box_to_json(const Box& b);
Box box_from_json(const json& j);
// "nu1=a:b,mu=c:d"; unnamed axes keep their value from `base`.
Box parse_box(const std::string& spec, Box base);

json graph_to_json(const GraphR4& g);
GraphR4 graph_from_json(const json& j);

void write_text(const std::string& path, const std::string& text);

}  // namespace toricg2
