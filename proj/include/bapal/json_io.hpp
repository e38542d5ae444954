#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>

#include "bapal/model.hpp"

namespace bapal {

struct JsonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::string> string_list(const nlohmann::json& j,
                                            const std::string& key) {
  if (!j.is_array()) throw JsonError("\"" + key + "\" must be an array");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string())
      throw JsonError("\"" + key + "\" entries must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace detail

inline FiniteModel model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw JsonError("model must be a JSON object");
  static const char* known[] = {"atoms",     "agents",    "states",
                                "partitions", "valuation", "designated"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok |= it.key() == k;
    if (!ok) throw JsonError("unknown key \"" + it.key() + "\"");
  }
  for (const char* k : {"atoms", "agents", "states", "partitions",
                        "valuation"})
    if (!j.contains(k)) throw JsonError(std::string("missing key \"") + k + "\"");

  FiniteModel m;
  m.atoms = detail::string_list(j["atoms"], "atoms");
  m.agents = detail::string_list(j["agents"], "agents");
  m.states = detail::string_list(j["states"], "states");
  const int n = m.num_states();

  auto state_of = [&](const nlohmann::json& e, const std::string& where) {
    if (!e.is_string())
      throw JsonError(where + " must name states as strings");
    int s = m.state_index(e.get<std::string>());
    if (s < 0)
      throw JsonError(where + " mentions unknown state \"" +
                      e.get<std::string>() + "\"");
    return s;
  };

  const auto& parts = j["partitions"];
  if (!parts.is_object()) throw JsonError("\"partitions\" must be an object");
  m.partitions.resize(m.agents.size());
  for (auto it = parts.begin(); it != parts.end(); ++it) {
    int ai = m.agent_index(it.key());
    if (ai < 0) throw JsonError("partition for unknown agent \"" + it.key() + "\"");
    if (!it.value().is_array())
      throw JsonError("partition of \"" + it.key() + "\" must be an array");
    for (const auto& block : it.value()) {
      if (!block.is_array())
        throw JsonError("partition blocks must be arrays");
      std::vector<int> b;
      for (const auto& e : block)
        b.push_back(state_of(e, "partition of \"" + it.key() + "\""));
      m.partitions[ai].push_back(std::move(b));
    }
  }
  for (std::size_t ai = 0; ai < m.agents.size(); ++ai)
    if (!parts.contains(m.agents[ai]))
      throw JsonError("missing partition for agent \"" + m.agents[ai] + "\"");

  const auto& val = j["valuation"];
  if (!val.is_object()) throw JsonError("\"valuation\" must be an object");
  m.valuation.assign(m.atoms.size(), StateSet(n));
  for (auto it = val.begin(); it != val.end(); ++it) {
    int pi = m.atom_index(it.key());
    if (pi < 0) throw JsonError("valuation for unknown atom \"" + it.key() + "\"");
    if (!it.value().is_array())
      throw JsonError("valuation of \"" + it.key() + "\" must be an array");
    for (const auto& e : it.value())
      m.valuation[pi].set(state_of(e, "valuation of \"" + it.key() + "\""));
  }
  for (std::size_t pi = 0; pi < m.atoms.size(); ++pi)
    if (!val.contains(m.atoms[pi]))
      throw JsonError("missing valuation for atom \"" + m.atoms[pi] + "\"");

  if (j.contains("designated"))
    m.designated = state_of(j["designated"], "\"designated\"");
  return m;
}

inline nlohmann::json model_to_json(const FiniteModel& m) {
  nlohmann::json j;
  j["atoms"] = m.atoms;
  j["agents"] = m.agents;
  j["states"] = m.states;
  nlohmann::json parts = nlohmann::json::object();
  for (std::size_t ai = 0; ai < m.agents.size(); ++ai) {
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& block : m.partitions[ai]) {
      nlohmann::json b = nlohmann::json::array();
      for (int s : block) b.push_back(m.states[s]);
      blocks.push_back(std::move(b));
    }
    parts[m.agents[ai]] = std::move(blocks);
  }
  j["partitions"] = std::move(parts);
  nlohmann::json val = nlohmann::json::object();
  for (std::size_t pi = 0; pi < m.atoms.size(); ++pi) {
    nlohmann::json v = nlohmann::json::array();
    for (int s = 0; s < m.num_states(); ++s)
      if (m.valuation[pi].test(s)) v.push_back(m.states[s]);
    val[m.atoms[pi]] = std::move(v);
  }
  j["valuation"] = std::move(val);
  if (m.designated >= 0) j["designated"] = m.states[m.designated];
  return j;
}

}  // namespace bapal
