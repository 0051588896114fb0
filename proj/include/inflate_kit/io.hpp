#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "inflate_kit/complex.hpp"
#include "inflate_kit/error.hpp"
#include "inflate_kit/homology.hpp"
#include "inflate_kit/poset.hpp"
#include "inflate_kit/sheaf.hpp"
#include "inflate_kit/simplicial.hpp"
#include "inflate_kit/verify.hpp"

namespace inflate_kit {

using Json = nlohmann::json;

namespace detail {

[[noreturn]] inline void schema_error(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ParseError, (where.empty() ? "/" : where) + ": " + what);
}

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(where, std::string("missing key '") + key + "'");
  return *it;
}

inline std::string text(const Json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());  // bare numbers as vertex names
  schema_error(where, "expected a string");
}

inline std::vector<std::string> text_list(const Json& j, const std::string& where) {
  if (!j.is_array()) schema_error(where, "expected an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(text(j[i], where + "/" + std::to_string(i)));
  return out;
}

inline long long integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) schema_error(where, "expected an integer");
  return j.get<long long>();
}

inline Json big_to_json(const BigInt& v) {
  if (v <= BigInt(INT64_MAX) && v >= BigInt(INT64_MIN)) return static_cast<std::int64_t>(v);
  return v.str();
}

}  // namespace detail

/// Reads a JSON document; syntax errors carry the file name and line.
inline Json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, path.string() + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string content = buffer.str();
  try {
    return Json::parse(content);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < content.size(); ++i) {
      if (content[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorKind::ParseError,
                path.string() + ":" + std::to_string(line) + ":" + std::to_string(column) + ": malformed JSON");
  }
}

// --- posets ---------------------------------------------------------------

inline Poset parse_poset(const Json& j, const std::string& where = "") {
  auto elements = detail::text_list(detail::field(j, "elements", where), where + "/elements");
  const Json& covers = detail::field(j, "covers", where);
  if (!covers.is_array()) detail::schema_error(where + "/covers", "expected an array");
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < covers.size(); ++i) {
    const std::string at = where + "/covers/" + std::to_string(i);
    auto pair = detail::text_list(covers[i], at);
    if (pair.size() != 2) detail::schema_error(at, "a cover is a pair [lower, upper]");
    pairs.emplace_back(pair[0], pair[1]);
  }
  return Poset::build(std::move(elements), pairs);
}

inline Json to_json(const Poset& p) {
  Json covers = Json::array();
  for (auto [a, b] : p.covers()) covers.push_back({p.name(a), p.name(b)});
  return {{"elements", p.elements()}, {"covers", covers}};
}

// --- diagrams -------------------------------------------------------------

inline Diagram parse_diagram(const Json& j, const std::string& where = "") {
  Poset base = parse_poset(detail::field(j, "poset", where), where + "/poset");
  const Json& stalks_json = detail::field(j, "stalks", where);
  if (!stalks_json.is_object()) detail::schema_error(where + "/stalks", "expected an object");
  std::map<std::string, std::vector<std::string>> stalks;
  for (const auto& [key, value] : stalks_json.items())
    stalks[key] = detail::text_list(value, where + "/stalks/" + key);
  std::vector<EdgeMapSpec> maps;
  const Json& maps_json = detail::field(j, "maps", where);
  if (!maps_json.is_array()) detail::schema_error(where + "/maps", "expected an array");
  for (std::size_t i = 0; i < maps_json.size(); ++i) {
    const std::string at = where + "/maps/" + std::to_string(i);
    EdgeMapSpec spec;
    spec.from = detail::text(detail::field(maps_json[i], "from", at), at + "/from");
    spec.to = detail::text(detail::field(maps_json[i], "to", at), at + "/to");
    const Json& table = detail::field(maps_json[i], "map", at);
    if (!table.is_object()) detail::schema_error(at + "/map", "expected an object");
    for (const auto& [key, value] : table.items()) spec.map[key] = detail::text(value, at + "/map/" + key);
    maps.push_back(std::move(spec));
  }
  return Diagram::build(std::move(base), stalks, maps);
}

inline Json to_json(const Diagram& d) {
  const Poset& p = d.base();
  Json stalks = Json::object();
  for (Index s = 0; s < p.size(); ++s) stalks[p.name(s)] = d.stalk(s);
  Json maps = Json::array();
  for (auto [a, b] : p.covers()) {
    Json table = Json::object();
    for (Index x = 0; x < d.stalk_size(a); ++x) table[d.stalk(a)[x]] = d.stalk(b)[d.apply(a, b, x)];
    maps.push_back({{"from", p.name(a)}, {"to", p.name(b)}, {"map", table}});
  }
  return {{"poset", to_json(p)}, {"stalks", stalks}, {"maps", maps}};
}

inline Json to_json(const Diagram& d, const OpenSet& u) {
  Json out = Json::array();
  for (Index i : u.members) out.push_back(d.base().name(i));
  return out;
}

// --- complexes, multigraphs, maps -----------------------------------------

inline SimplicialComplex parse_complex(const Json& j, const std::string& where = "") {
  auto vertices = detail::text_list(detail::field(j, "vertices", where), where + "/vertices");
  const Json& facets_json = detail::field(j, "facets", where);
  if (!facets_json.is_array()) detail::schema_error(where + "/facets", "expected an array");
  std::vector<std::vector<std::string>> facets;
  for (std::size_t i = 0; i < facets_json.size(); ++i) {
    const std::string at = where + "/facets/" + std::to_string(i);
    facets.push_back(detail::text_list(facets_json[i], at));
    if (facets.back().empty()) detail::schema_error(at, "empty facet");
  }
  return SimplicialComplex::from_facets(std::move(vertices), facets);
}

inline Json to_json(const SimplicialComplex& k) {
  Json facets = Json::array();
  for (const auto& facet : k.facets()) {
    Json names = Json::array();
    for (Index v : facet) names.push_back(k.vertices()[v]);
    facets.push_back(names);
  }
  return {{"vertices", k.vertices()}, {"facets", facets}};
}

inline Multigraph parse_multigraph(const Json& j, const std::string& where = "") {
  auto vertices = detail::text_list(detail::field(j, "vertices", where), where + "/vertices");
  const Json& edges_json = detail::field(j, "edges", where);
  if (!edges_json.is_array()) detail::schema_error(where + "/edges", "expected an array");
  std::vector<Multigraph::Edge> edges;
  for (std::size_t i = 0; i < edges_json.size(); ++i) {
    const std::string at = where + "/edges/" + std::to_string(i);
    auto ends = detail::text_list(detail::field(edges_json[i], "ends", at), at + "/ends");
    if (ends.size() != 2) detail::schema_error(at + "/ends", "an edge has exactly two ends");
    long long m = 1;
    if (edges_json[i].contains("multiplicity")) m = detail::integer(edges_json[i]["multiplicity"], at + "/multiplicity");
    if (m < 1 || m > INT32_MAX) throw Error(ErrorKind::NonPositiveCount, at + ": multiplicity must be at least 1");
    edges.push_back({ends[0], ends[1], static_cast<int>(m)});
  }
  return Multigraph::build(std::move(vertices), std::move(edges));
}

inline Json to_json(const Multigraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges) edges.push_back({{"ends", {e.u, e.v}}, {"multiplicity", e.multiplicity}});
  return {{"vertices", g.vertices}, {"edges", edges}};
}

inline SimplicialMap parse_simplicial_map(const Json& j, const std::string& where = "") {
  SimplicialComplex source = parse_complex(detail::field(j, "source", where), where + "/source");
  SimplicialComplex target = parse_complex(detail::field(j, "target", where), where + "/target");
  const Json& table = detail::field(j, "vertex_map", where);
  if (!table.is_object()) detail::schema_error(where + "/vertex_map", "expected an object");
  std::map<std::string, std::string> mapping;
  for (const auto& [key, value] : table.items()) mapping[key] = detail::text(value, where + "/vertex_map/" + key);
  return SimplicialMap::build(std::move(source), std::move(target), mapping);
}

inline Json to_json(const SimplicialMap& f) {
  return {{"source", to_json(f.source())}, {"target", to_json(f.target())}, {"vertex_map", f.named()}};
}

// --- reports --------------------------------------------------------------

inline Json betti_json(const std::map<int, long long>& betti) {
  Json out = Json::object();
  for (const auto& [k, b] : betti) out[std::to_string(k)] = b;
  return out;
}

inline Json to_json(const HomologyReport& r) {
  Json torsion = Json::object();
  for (const auto& [k, factors] : r.torsion) {
    Json list = Json::array();
    for (const auto& t : factors) list.push_back(detail::big_to_json(t));
    torsion[std::to_string(k)] = list;
  }
  return {{"betti", betti_json(r.betti)}, {"torsion", torsion}};
}

inline HomologyReport parse_homology(const Json& j, const std::string& where = "") {
  HomologyReport r;
  auto degree = [&](const std::string& key, const std::string& at) {
    try {
      std::size_t used = 0;
      int k = std::stoi(key, &used);
      if (used == key.size()) return k;
    } catch (const std::exception&) {
    }
    detail::schema_error(at, "degree keys must be integers");
  };
  const Json& betti = detail::field(j, "betti", where);
  if (!betti.is_object()) detail::schema_error(where + "/betti", "expected an object");
  for (const auto& [key, value] : betti.items())
    r.betti[degree(key, where + "/betti")] = detail::integer(value, where + "/betti/" + key);
  const Json& torsion = detail::field(j, "torsion", where);
  if (!torsion.is_object()) detail::schema_error(where + "/torsion", "expected an object");
  for (const auto& [key, value] : torsion.items()) {
    const std::string at = where + "/torsion/" + key;
    if (!value.is_array()) detail::schema_error(at, "expected an array");
    auto& list = r.torsion[degree(key, at)];
    for (const auto& t : value) {
      if (t.is_string())
        list.emplace_back(t.get<std::string>());
      else
        list.emplace_back(detail::integer(t, at));
    }
  }
  return r;
}

inline Json to_json(const WedgeCertificate& c) {
  Json out = {{"dimension", c.dimension}, {"count", c.count}, {"passed", c.passed}};
  out["failure_reason"] = c.failure_reason ? Json(*c.failure_reason) : Json(nullptr);
  return out;
}

inline Json to_json(const CMVerdict& v) {
  Json out = {{"cohen_macaulay", v.cohen_macaulay},
              {"dimension", v.dimension},
              {"pure", v.pure},
              {"whole", to_json(v.whole)}};
  if (v.failure)
    out["failure"] = {{"element", v.failure->element},
                      {"expected_degree", v.failure->expected_degree},
                      {"reason", v.failure->reason}};
  else
    out["failure"] = nullptr;
  return out;
}

inline Json to_json(const HypothesisFlags& f) {
  return {{"simplicial", f.simplicial},
          {"inhabited", f.inhabited},
          {"flabby", f.flabby},
          {"connected", f.connected},
          {"components", f.components}};
}

inline Json to_json(const DecompositionReport& r) {
  Json terms = Json::array();
  for (const auto& t : r.per_simplex)
    terms.push_back({{"simplex", t.element},
                     {"dimension", t.dimension},
                     {"spheres", t.spheres},
                     {"link_betti", betti_json(t.link_betti)}});
  Json out = {{"hypotheses", to_json(r.flags)},
              {"applicable", r.applicable},
              {"match", r.match},
              {"notes", r.notes},
              {"base_betti", to_json(r.base_betti)},
              {"per_simplex", terms},
              {"predicted_betti", betti_json(r.predicted_betti)},
              {"actual_betti", to_json(r.actual_betti)},
              {"inflation_size", r.inflation_size}};
  out["base_cohen_macaulay"] = r.base_cm ? Json(*r.base_cm) : Json(nullptr);
  out["inflation_cohen_macaulay"] = r.inflation_cm ? Json(*r.inflation_cm) : Json(nullptr);
  return out;
}

}  // namespace inflate_kit
