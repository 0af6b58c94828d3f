#pragma once

#include "algomev/sim/report.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace algomev::sim {

// One scenario per (technique, state) cell. A cell's config is the base
// config merge-patched with the cell's "overrides" and "agents".
inline constexpr const char* kDefaultApplicabilityTemplate = R"json({
  "base": {
    "n_relays": 8,
    "n_participants": 10,
    "n_clients": 20,
    "latency_model": {
      "client_relay": {"base_ms": 5, "spread_ms": 10, "jitter_ms": 0},
      "agent_relay": {"base_ms": 0, "spread_ms": 0, "jitter_ms": 0},
      "relay_relay": {"base_ms": 10, "spread_ms": 30, "jitter_ms": 0},
      "relay_participant": {"base_ms": 5, "spread_ms": 15, "jitter_ms": 0}
    },
    "block_interval_ms": 3400,
    "mempool_congestion_threshold": 1000,
    "max_block_txns": 200,
    "background_per_block": 20,
    "duration_blocks": 200,
    "seed": 1
  },
  "cells": [
    {"technique": "destructive-frontrunning", "state": "block", "expected": true, "measure_agent": 1,
     "agents": [{"kind": "victim-trader", "attach_relay": 3, "params": {"per_block": 5}},
                {"kind": "blockstate-frontrunner", "attach_relay": 0, "params": {"issue_offset_ms": 0, "mode": "destructive"}}]},
    {"technique": "destructive-frontrunning", "state": "network", "expected": false, "measure_agent": 1,
     "agents": [{"kind": "victim-trader", "attach_relay": 3, "params": {"per_block": 5}},
                {"kind": "network-frontrunner", "attach_relay": 0, "params": {"reaction_delay_ms": 1, "mode": "destructive"}}]},
    {"technique": "tolerating-frontrunning", "state": "block", "expected": false, "measure_agent": 1,
     "agents": [{"kind": "victim-trader", "attach_relay": 3, "params": {"per_block": 5}},
                {"kind": "blockstate-frontrunner", "attach_relay": 0, "params": {"issue_offset_ms": 0, "mode": "tolerating"}}]},
    {"technique": "tolerating-frontrunning", "state": "network", "expected": false, "measure_agent": 1,
     "agents": [{"kind": "victim-trader", "attach_relay": 3, "params": {"per_block": 5}},
                {"kind": "network-frontrunner", "attach_relay": 0, "params": {"reaction_delay_ms": 1, "mode": "tolerating"}}]},
    {"technique": "backrunning", "state": "block", "expected": true, "measure_agent": 1,
     "agents": [{"kind": "victim-trader", "attach_relay": 3, "params": {"per_block": 5}},
                {"kind": "blockstate-backrunner", "attach_relay": 0, "params": {"issue_offset_ms": 0}}]},
    {"technique": "backrunning", "state": "network", "expected": true, "measure_agent": 1,
     "agents": [{"kind": "victim-trader", "attach_relay": 0, "params": {"per_block": 5}},
                {"kind": "network-backrunner", "attach_relay": 0, "params": {"reaction_delay_ms": 1}}]},
    {"technique": "clogging", "state": "block", "expected": true, "measure_agent": 1,
     "agents": [{"kind": "victim-trader", "attach_relay": 3, "params": {"per_block": 5}},
                {"kind": "clogger", "attach_relay": 0,
                 "params": {"batch_size": 600, "batch_fee": 1000, "trigger": "block", "start_block": 2, "every_blocks": 5}}]},
    {"technique": "clogging", "state": "network", "expected": true, "measure_agent": 1,
     "agents": [{"kind": "victim-trader", "attach_relay": 3, "params": {"per_block": 5}},
                {"kind": "clogger", "attach_relay": 0,
                 "params": {"batch_size": 600, "batch_fee": 1000, "trigger": "network", "start_block": 2,
                            "every_blocks": 5, "reaction_delay_ms": 1}}]}
  ]
})json";

struct CellResult {
  std::string technique;
  std::string state;
  std::uint64_t attempts = 0;
  double success_rate = 0.0;
  bool applies = false;
  bool expected = false;
  std::uint64_t fee_blocks = 0;
};

inline bool cell_applies(double success_rate) { return success_rate > 0.5; }

inline SimConfig cell_config(const nlohmann::json& tmpl, const nlohmann::json& cell,
                             std::optional<std::uint64_t> seed = std::nullopt) {
  nlohmann::json j = tmpl.value("base", nlohmann::json::object());
  if (cell.contains("overrides")) j.merge_patch(cell.at("overrides"));
  j["agents"] = cell.value("agents", nlohmann::json::array());
  if (seed) j["seed"] = *seed;
  return config_from_json(j);
}

inline std::vector<CellResult> ordering_applicability_check(const nlohmann::json& tmpl,
                                                            std::optional<std::uint64_t> seed = std::nullopt) {
  if (!tmpl.contains("cells") || !tmpl.at("cells").is_array()) throw InvalidConfig("template needs a cells array");
  std::vector<CellResult> out;
  for (const auto& cell : tmpl.at("cells")) {
    CellResult c;
    c.technique = cell.at("technique").get<std::string>();
    c.state = cell.at("state").get<std::string>();
    c.expected = cell.value("expected", false);
    const auto cfg = cell_config(tmpl, cell, seed);
    const auto agent = cell.at("measure_agent").get<std::size_t>();
    if (agent >= cfg.agents.size()) throw InvalidConfig(c.technique + "/" + c.state + ": measure_agent out of range");
    const auto report = simulate(cfg);
    const auto& st = report.agents[agent];
    c.attempts = st.attempts;
    c.success_rate = st.success_rate();
    c.applies = cell_applies(c.success_rate);
    for (const auto& b : report.blocks) c.fee_blocks += b.mode == OrderingMode::fee;
    out.push_back(std::move(c));
  }
  return out;
}

inline nlohmann::json default_applicability_template() { return nlohmann::json::parse(kDefaultApplicabilityTemplate); }

inline nlohmann::json to_json(const std::vector<CellResult>& cells) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& c : cells)
    a.push_back({{"technique", c.technique},
                 {"state", c.state},
                 {"attempts", c.attempts},
                 {"success_rate", c.success_rate},
                 {"applies", c.applies},
                 {"expected", c.expected},
                 {"matches", c.applies == c.expected},
                 {"fee_blocks", c.fee_blocks}});
  return a;
}

}  // namespace algomev::sim
