#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cmsotw/structure.hpp"

namespace cmsotw {

using json = nlohmann::ordered_json;

/// Serializes a structure to the graph file format: `vertices` (id list),
/// `edges` (2-element id lists, normalized lexicographically and sorted),
/// `colors`, `constants`.  Output is deterministic.
inline json structure_to_json(const Structure& s) {
  json j;
  j["vertices"] = s.vertex_names;
  std::vector<std::pair<std::string, std::string>> es;
  for (auto& [a, b] : s.g.edges()) {
    std::string na = s.vertex_names[a], nb = s.vertex_names[b];
    if (nb < na) std::swap(na, nb);
    es.emplace_back(na, nb);
  }
  std::sort(es.begin(), es.end());
  j["edges"] = json::array();
  for (auto& [a, b] : es) j["edges"].push_back({a, b});
  j["colors"] = json::object();
  for (auto& name : s.voc.colors) {
    std::vector<std::string> ids;
    for (int v : s.colors.at(name)) ids.push_back(s.vertex_names[v]);
    std::sort(ids.begin(), ids.end());
    j["colors"][name] = ids;
  }
  j["constants"] = json::object();
  for (auto& name : s.voc.constants) j["constants"][name] = s.vertex_names[s.constants.at(name)];
  return j;
}

inline Structure structure_from_json(const json& j) {
  Structure s;
  for (auto& v : j.at("vertices")) s.vertex_names.push_back(v.get<std::string>());
  s.g = Graph(static_cast<int>(s.vertex_names.size()));
  auto idx = [&](const std::string& name) {
    int i = s.index_of(name);
    if (i < 0) throw std::invalid_argument("unknown vertex id: " + name);
    return i;
  };
  if (j.contains("edges"))
    for (auto& e : j.at("edges")) {
      if (e.size() != 2) throw std::invalid_argument("edge must have 2 endpoints");
      s.g.add_edge(idx(e[0].get<std::string>()), idx(e[1].get<std::string>()));
    }
  if (j.contains("colors"))
    for (auto& [name, ids] : j.at("colors").items()) {
      s.voc.colors.push_back(name);
      std::set<int> vs;
      for (auto& id : ids) vs.insert(idx(id.get<std::string>()));
      s.colors[name] = vs;
    }
  if (j.contains("constants"))
    for (auto& [name, id] : j.at("constants").items()) {
      s.voc.constants.push_back(name);
      s.constants[name] = idx(id.get<std::string>());
    }
  return s;
}

inline Structure load_structure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return structure_from_json(j);
}

inline void save_structure(const Structure& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << structure_to_json(s).dump(2) << "\n";
}

}  // namespace cmsotw
