#include "toricg2/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace toricg2 {

namespace {

constexpr std::array<const char*, 4> kVarNames{"nu1", "nu2", "nu3", "mu"};

int var_index(const std::string& name) {
  for (int i = 0; i < 4; ++i)
    if (name == kVarNames[static_cast<std::size_t>(i)]) return i;
  throw std::invalid_argument("unknown variable '" + name + "'");
}

std::string entry_key(int i, int j) { return std::to_string(i + 1) + std::to_string(j + 1); }

}  // namespace

json poly_to_json(const Poly4& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back(json::array({json(e), c}));
  return terms;
}

Poly4 poly_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("polynomial must be an array of [exponent, coefficient] pairs");
  Poly4 p;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_array() || t[0].size() != 4 || !t[1].is_number())
      throw std::invalid_argument("bad polynomial term " + t.dump());
    Poly4::Exponent e{};
    for (std::size_t k = 0; k < 4; ++k) {
      if (!t[0][k].is_number_integer() || t[0][k].get<int>() < 0)
        throw std::invalid_argument("exponents must be non-negative integers: " + t.dump());
      e[k] = t[0][k].get<int>();
    }
    p += Poly4::monomial(e, t[1].get<double>());
  }
  return p;
}

json box_to_json(const Box& b) {
  json j = json::object();
  for (std::size_t k = 0; k < 4; ++k) j[kVarNames[k]] = {b.lo(static_cast<int>(k)), b.hi(static_cast<int>(k))};
  return j;
}

Box box_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("domain must be an object");
  Box b;
  std::array<bool, 4> seen{};
  for (const auto& [name, range] : j.items()) {
    const int k = var_index(name);
    if (!range.is_array() || range.size() != 2 || !range[0].is_number() || !range[1].is_number())
      throw std::invalid_argument("domain." + name + " must be [lo, hi]");
    b.lo(k) = range[0].get<double>();
    b.hi(k) = range[1].get<double>();
    seen[static_cast<std::size_t>(k)] = true;
  }
  for (std::size_t k = 0; k < 4; ++k)
    if (!seen[k]) throw std::invalid_argument(std::string("domain is missing ") + kVarNames[k]);
  if (!(b.lo.array() < b.hi.array()).all()) throw std::invalid_argument("domain needs lo < hi on every axis");
  return b;
}

Box parse_box(const std::string& spec, Box base) {
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::erase_if(item, [](unsigned char c) { return std::isspace(c); });
    if (item.empty()) continue;
    const auto eq = item.find('=');
    const auto colon = item.find(':', eq == std::string::npos ? 0 : eq);
    if (eq == std::string::npos || colon == std::string::npos)
      throw std::invalid_argument("box item '" + item + "' is not of the form name=lo:hi");
    const int k = var_index(item.substr(0, eq));
    try {
      std::size_t used = 0;
      const std::string lo = item.substr(eq + 1, colon - eq - 1), hi = item.substr(colon + 1);
      base.lo(k) = std::stod(lo, &used);
      if (used != lo.size()) throw std::invalid_argument(lo);
      base.hi(k) = std::stod(hi, &used);
      if (used != hi.size()) throw std::invalid_argument(hi);
    } catch (const std::exception&) {
      throw std::invalid_argument("box item '" + item + "' has a bad number");
    }
  }
  if (!(base.lo.array() < base.hi.array()).all()) throw std::invalid_argument("box needs lo < hi on every axis");
  return base;
}

json vfield_to_json(const VField& V) {
  const PolyMatrix& P = V.poly();
  json entries = json::object();
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j)
      if (!P(i, j).is_zero()) entries[entry_key(i, j)] = poly_to_json(P(i, j));
  return {{"vars", kVarNames}, {"entries", entries}, {"domain", box_to_json(V.domain())}};
}

VField vfield_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("VField spec must be an object");
  if (j.contains("vars")) {
    const auto vars = j.at("vars");
    if (!vars.is_array() || vars.size() != 4) throw std::invalid_argument("vars must list nu1, nu2, nu3, mu");
    for (std::size_t k = 0; k < 4; ++k)
      if (vars[k] != kVarNames[k]) throw std::invalid_argument("vars must be [\"nu1\",\"nu2\",\"nu3\",\"mu\"] in order");
  }
  if (!j.contains("entries") || !j.at("entries").is_object()) throw std::invalid_argument("missing entries object");
  if (!j.contains("domain")) throw std::invalid_argument("missing domain");

  PolyMatrix P;
  std::array<bool, 6> seen{};
  for (const auto& [key, value] : j.at("entries").items()) {
    if (key.size() != 2 || key[0] < '1' || key[0] > '3' || key[1] < '1' || key[1] > '3')
      throw std::invalid_argument("bad entry key '" + key + "'");
    int a = key[0] - '1', b = key[1] - '1';
    if (a > b) std::swap(a, b);
    const std::size_t slot = static_cast<std::size_t>(a == b ? a : 2 + a + b);
    if (seen[slot]) throw std::invalid_argument("entry " + entry_key(a, b) + " given twice");
    seen[slot] = true;
    P(a, b) = poly_from_json(value);
  }
  return VField::from_polynomial(P, box_from_json(j.at("domain")));
}

VField load_vfield(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return vfield_from_json(j);
}

json graph_to_json(const GraphR4& g) {
  json vertices = json::array();
  for (const Vec4& v : g.vertices) vertices.push_back({v(0), v(1), v(2), v(3)});
  json edges = json::array();
  for (const GraphEdge& e : g.edges) {
    edges.push_back({{"from", e.from ? json(*e.from) : json(nullptr)},
                     {"to", e.to ? json(*e.to) : json(nullptr)},
                     {"slope", {e.slope(0), e.slope(1), e.slope(2), e.slope(3)}},
                     {"ray", e.ray}});
  }
  json lattice = json::array();
  for (int c = 0; c < 4; ++c) lattice.push_back({g.lattice(0, c), g.lattice(1, c), g.lattice(2, c), g.lattice(3, c)});
  return {{"vertices", vertices},
          {"edges", edges},
          {"lattice", lattice},
          {"anchor", {g.anchor(0), g.anchor(1), g.anchor(2), g.anchor(3)}}};
}

GraphR4 graph_from_json(const json& j) {
  GraphR4 g;
  for (const auto& v : j.at("vertices")) g.vertices.emplace_back(v.at(0), v.at(1), v.at(2), v.at(3));
  for (const auto& e : j.at("edges")) {
    GraphEdge edge;
    if (!e.at("from").is_null()) edge.from = e.at("from").get<int>();
    if (!e.at("to").is_null()) edge.to = e.at("to").get<int>();
    for (int k = 0; k < 4; ++k) edge.slope(k) = e.at("slope").at(static_cast<std::size_t>(k)).get<int>();
    edge.ray = e.at("ray").get<bool>();
    g.edges.push_back(edge);
  }
  if (j.contains("lattice"))
    for (int c = 0; c < 4; ++c)
      for (int r = 0; r < 4; ++r)
        g.lattice(r, c) = j["lattice"].at(static_cast<std::size_t>(c)).at(static_cast<std::size_t>(r)).get<int>();
  if (j.contains("anchor"))
    for (int k = 0; k < 4; ++k) g.anchor(k) = j["anchor"].at(static_cast<std::size_t>(k)).get<double>();
  return g;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace toricg2
