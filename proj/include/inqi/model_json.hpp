#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "inqi/model.hpp"

namespace inqi {

// Wire format:
// {
//   "kind": "intuitionistic" | "s4" | "classical",
//   "worlds": ["w1", ...],
//   "order": [["w1","w2"], ...],          // edges; closure is implied
//   "valuation": {"w4": ["p"], ...}
// }

inline KripkeModel model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("model JSON must be an object");
  auto kind = kind_from_name(j.value("kind", std::string{}));
  if (!kind) throw std::invalid_argument("model JSON needs a kind of intuitionistic|s4|classical");
  std::vector<std::string> worlds = j.value("worlds", std::vector<std::string>{});
  std::vector<KripkeModel::Edge> edges;
  for (const auto& e : j.value("order", nlohmann::json::array())) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("order entries must be [from, to] pairs");
    edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  std::vector<std::pair<std::string, std::vector<std::string>>> valuation;
  if (j.contains("valuation")) {
    for (const auto& [world, atoms] : j.at("valuation").items())
      valuation.emplace_back(world, atoms.get<std::vector<std::string>>());
  }
  return KripkeModel::make(*kind, std::move(worlds), edges, valuation);
}

inline KripkeModel model_from_json_text(const std::string& text) {
  return model_from_json(nlohmann::json::parse(text));
}

inline nlohmann::json model_to_json(const KripkeModel& m) {
  nlohmann::json j;
  j["kind"] = kind_name(m.kind());
  j["worlds"] = m.world_names();
  nlohmann::json order = nlohmann::json::array();
  for (int w = 0; w < m.size(); ++w) {
    for_each_world(m.reach(w), [&](int v) {
      if (v != w) order.push_back({m.name(w), m.name(v)});
    });
  }
  j["order"] = std::move(order);
  nlohmann::json val = nlohmann::json::object();
  for (int w = 0; w < m.size(); ++w) {
    std::vector<std::string> atoms;
    for (const auto& [atom, mask] : m.valuation())
      if ((mask >> w) & 1) atoms.push_back(atom);
    if (!atoms.empty()) val[m.name(w)] = atoms;
  }
  j["valuation"] = std::move(val);
  return j;
}

inline Team team_from_names(const KripkeModel& m, const std::vector<std::string>& names) {
  Team t;
  for (const auto& n : names) t = t.with(m.index_of(n));
  return t;
}

inline std::vector<std::string> team_names(const KripkeModel& m, Team t) {
  std::vector<std::string> out;
  for_each_world(t.bits(), [&](int w) { out.push_back(m.name(w)); });
  return out;
}

}  // namespace inqi
