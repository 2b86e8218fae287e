#pragma once

#include <string>

#include <json.hpp>

#include "inqi/parse.hpp"
#include "inqi/proof.hpp"

namespace inqi {

// Proof wire format, one object per derivation node:
// {
//   "rule": "implI",
//   "conclusion": "p -> p",
//   "discharge": "h1",            // or ["h1","h2"] for case rules
//   "premises": [ { "rule": "hyp", "label": "h1", "conclusion": "p" } ]
// }

inline ProofNode proof_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("proof node must be a JSON object");
  ProofNode node;
  auto rule = rule_from_tag(j.value("rule", std::string{}));
  if (!rule) throw std::invalid_argument("unknown proof rule tag: " + j.value("rule", std::string{}));
  node.rule = *rule;
  if (!j.contains("conclusion") || !j.at("conclusion").is_string())
    throw std::invalid_argument("proof node needs a conclusion string");
  node.conclusion = parse_formula(j.at("conclusion").get<std::string>(), Dialect::InqI);
  if (j.contains("discharge")) {
    const auto& d = j.at("discharge");
    if (d.is_string())
      node.discharge.push_back(d.get<std::string>());
    else if (d.is_array())
      for (const auto& l : d) node.discharge.push_back(l.get<std::string>());
    else
      throw std::invalid_argument("discharge must be a label or a list of labels");
  }
  node.label = j.value("label", std::string{});
  for (const auto& p : j.value("premises", nlohmann::json::array()))
    node.premises.push_back(proof_from_json(p));
  return node;
}

inline ProofNode proof_from_json_text(const std::string& text) {
  return proof_from_json(nlohmann::json::parse(text));
}

inline nlohmann::json sequent_to_json(const Sequent& s) {
  nlohmann::json j;
  j["premises"] = nlohmann::json::array();
  for (const auto& p : s.premises) j["premises"].push_back(render_formula(p));
  j["conclusion"] = render_formula(s.conclusion);
  return j;
}

}  // namespace inqi
