#pragma once

#include "algomev/chain/model.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace algomev::sim {

class InvalidConfig : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Per-edge delay: each directed edge draws a fixed base in
// [base_ms, base_ms + spread_ms] when the topology is built; each message then
// adds jitter in [0, jitter_ms]. Links are FIFO.
struct LinkLatency {
  std::int64_t base_ms = 0;
  std::int64_t spread_ms = 0;
  std::int64_t jitter_ms = 0;
};

struct LatencyModel {
  LinkLatency client_relay{5, 10, 2};
  LinkLatency agent_relay{0, 0, 0};
  LinkLatency relay_relay{10, 30, 5};
  LinkLatency relay_participant{5, 15, 2};
};

enum class AgentKind {
  victim_trader,
  network_backrunner,
  blockstate_backrunner,
  network_frontrunner,
  blockstate_frontrunner,
  clogger,
};

inline std::string_view to_string(AgentKind k) {
  switch (k) {
    case AgentKind::victim_trader: return "victim-trader";
    case AgentKind::network_backrunner: return "network-backrunner";
    case AgentKind::blockstate_backrunner: return "blockstate-backrunner";
    case AgentKind::network_frontrunner: return "network-frontrunner";
    case AgentKind::blockstate_frontrunner: return "blockstate-frontrunner";
    case AgentKind::clogger: return "clogger";
  }
  return "victim-trader";
}

inline std::optional<AgentKind> parse_agent_kind(std::string_view s) {
  for (auto k : {AgentKind::victim_trader, AgentKind::network_backrunner, AgentKind::blockstate_backrunner,
                 AgentKind::network_frontrunner, AgentKind::blockstate_frontrunner, AgentKind::clogger})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

enum class FrontrunMode { destructive, tolerating };
enum class ClogTrigger { block, network };

struct AgentSpec {
  AgentKind kind = AgentKind::victim_trader;
  std::size_t attach_relay = 0;

  // victim-trader
  std::uint64_t per_block = 0;
  std::uint64_t start_block = 1;
  std::uint64_t end_block = 0;  // 0: until the end of the run

  // searchers
  std::int64_t reaction_delay_ms = 0;
  std::int64_t issue_offset_ms = 0;
  FrontrunMode mode = FrontrunMode::destructive;
  std::optional<std::size_t> target;  // victim-trader agent index; any when absent

  // clogger
  std::uint64_t batch_size = 0;
  std::uint64_t batch_fee = 0;
  ClogTrigger trigger = ClogTrigger::block;
  std::uint64_t every_blocks = 0;  // 0: a single batch

  std::uint64_t fee = 0;  // 0: min_fee
};

enum class ProposerSelection { round_robin, stake_weighted };

struct SimConfig {
  std::size_t n_relays = 8;
  std::size_t n_participants = 10;
  std::size_t n_clients = 20;
  std::size_t relay_fanout = 4;
  std::size_t participant_relays = 4;
  LatencyModel latency;
  std::int64_t block_interval_ms = 3400;
  std::int64_t block_notify_ms = 0;
  std::uint64_t mempool_congestion_threshold = 5000;
  std::uint64_t max_block_txns = 1000;
  std::uint64_t min_fee = kMinFee;
  std::uint64_t background_per_block = 0;
  std::uint64_t seed = 1;
  std::uint64_t duration_blocks = 100;
  ProposerSelection proposer = ProposerSelection::round_robin;
  std::vector<std::uint64_t> stakes;
  bool trace = false;
  std::vector<AgentSpec> agents;
};

inline void validate(const SimConfig& c) {
  auto fail = [](const std::string& m) { throw InvalidConfig(m); };
  if (c.n_relays < 1) fail("n_relays must be >= 1");
  if (c.n_participants < 1) fail("n_participants must be >= 1");
  if (c.n_clients < 1) fail("n_clients must be >= 1");
  if (c.relay_fanout < 1) fail("relay_fanout must be >= 1");
  if (c.participant_relays < 1) fail("participant_relays must be >= 1");
  if (c.block_interval_ms < 1) fail("block_interval_ms must be >= 1");
  if (c.block_notify_ms < 0 || c.block_notify_ms >= c.block_interval_ms)
    fail("block_notify_ms must lie in [0, block_interval_ms)");
  if (c.max_block_txns < 1) fail("max_block_txns must be >= 1");
  if (c.mempool_congestion_threshold < 1) fail("mempool_congestion_threshold must be >= 1");
  if (c.mempool_congestion_threshold > 10 * c.max_block_txns)
    fail("mempool_congestion_threshold must be <= 10 * max_block_txns");
  if (c.min_fee < 1) fail("min_fee must be >= 1");
  if (c.duration_blocks < 1) fail("duration_blocks must be >= 1");
  for (const auto* l : {&c.latency.client_relay, &c.latency.agent_relay, &c.latency.relay_relay,
                        &c.latency.relay_participant})
    if (l->base_ms < 0 || l->spread_ms < 0 || l->jitter_ms < 0) fail("latency values must be >= 0");
  if (c.proposer == ProposerSelection::stake_weighted) {
    if (c.stakes.size() != c.n_participants) fail("stakes must list one entry per participant");
    std::uint64_t total = 0;
    for (auto s : c.stakes) total += s;
    if (total == 0) fail("stakes must not all be zero");
  }
  for (std::size_t i = 0; i < c.agents.size(); ++i) {
    const auto& a = c.agents[i];
    const std::string where = "agents[" + std::to_string(i) + "]: ";
    if (a.attach_relay >= c.n_relays) fail(where + "attach_relay out of range");
    if (a.reaction_delay_ms < 0 || a.issue_offset_ms < 0) fail(where + "delays must be >= 0");
    if (a.fee != 0 && a.fee < c.min_fee) fail(where + "fee below min_fee");
    if (a.target && (*a.target >= c.agents.size() || c.agents[*a.target].kind != AgentKind::victim_trader))
      fail(where + "target must name a victim-trader agent");
    if (a.kind == AgentKind::victim_trader && a.per_block == 0) fail(where + "per_block must be >= 1");
    if (a.kind == AgentKind::clogger) {
      if (a.batch_size == 0) fail(where + "batch_size must be >= 1");
      if (a.batch_fee < c.min_fee) fail(where + "batch_fee below min_fee");
    }
  }
}

namespace detail {

template <class T>
void opt(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

template <class T>
void req(const nlohmann::json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) throw InvalidConfig(where + "missing required parameter '" + key + "'");
  out = j.at(key).get<T>();
}

inline LinkLatency link_from_json(const nlohmann::json& j, LinkLatency l) {
  opt(j, "base_ms", l.base_ms);
  opt(j, "spread_ms", l.spread_ms);
  opt(j, "jitter_ms", l.jitter_ms);
  return l;
}

inline AgentSpec agent_from_json(const nlohmann::json& j, std::size_t index) {
  const std::string where = "agents[" + std::to_string(index) + "]: ";
  AgentSpec a;
  const auto kind = parse_agent_kind(j.at("kind").get<std::string>());
  if (!kind) throw InvalidConfig(where + "unknown kind '" + j.at("kind").get<std::string>() + "'");
  a.kind = *kind;
  opt(j, "attach_relay", a.attach_relay);
  const nlohmann::json p = j.value("params", nlohmann::json::object());
  opt(p, "fee", a.fee);
  if (p.contains("target")) a.target = p.at("target").get<std::size_t>();
  if (p.contains("mode")) {
    const auto m = p.at("mode").get<std::string>();
    if (m == "destructive")
      a.mode = FrontrunMode::destructive;
    else if (m == "tolerating")
      a.mode = FrontrunMode::tolerating;
    else
      throw InvalidConfig(where + "mode must be destructive or tolerating");
  }
  switch (a.kind) {
    case AgentKind::victim_trader:
      req(p, "per_block", a.per_block, where);
      opt(p, "start_block", a.start_block);
      opt(p, "end_block", a.end_block);
      break;
    case AgentKind::network_backrunner:
    case AgentKind::network_frontrunner:
      req(p, "reaction_delay_ms", a.reaction_delay_ms, where);
      break;
    case AgentKind::blockstate_backrunner:
    case AgentKind::blockstate_frontrunner:
      req(p, "issue_offset_ms", a.issue_offset_ms, where);
      break;
    case AgentKind::clogger:
      req(p, "batch_size", a.batch_size, where);
      req(p, "batch_fee", a.batch_fee, where);
      opt(p, "start_block", a.start_block);
      opt(p, "every_blocks", a.every_blocks);
      opt(p, "reaction_delay_ms", a.reaction_delay_ms);
      if (p.contains("trigger")) {
        const auto t = p.at("trigger").get<std::string>();
        if (t == "block")
          a.trigger = ClogTrigger::block;
        else if (t == "network")
          a.trigger = ClogTrigger::network;
        else
          throw InvalidConfig(where + "trigger must be block or network");
      }
      break;
  }
  return a;
}

}  // namespace detail

inline SimConfig config_from_json(const nlohmann::json& j) {
  SimConfig c;
  try {
    detail::opt(j, "n_relays", c.n_relays);
    detail::opt(j, "n_participants", c.n_participants);
    detail::opt(j, "n_clients", c.n_clients);
    detail::opt(j, "relay_fanout", c.relay_fanout);
    detail::opt(j, "participant_relays", c.participant_relays);
    detail::opt(j, "block_interval_ms", c.block_interval_ms);
    detail::opt(j, "block_notify_ms", c.block_notify_ms);
    detail::opt(j, "mempool_congestion_threshold", c.mempool_congestion_threshold);
    detail::opt(j, "max_block_txns", c.max_block_txns);
    detail::opt(j, "min_fee", c.min_fee);
    detail::opt(j, "background_per_block", c.background_per_block);
    detail::opt(j, "seed", c.seed);
    detail::opt(j, "duration_blocks", c.duration_blocks);
    detail::opt(j, "trace", c.trace);
    if (j.contains("latency_model")) {
      const auto& l = j.at("latency_model");
      if (l.contains("client_relay")) c.latency.client_relay = detail::link_from_json(l["client_relay"], c.latency.client_relay);
      if (l.contains("agent_relay")) c.latency.agent_relay = detail::link_from_json(l["agent_relay"], c.latency.agent_relay);
      if (l.contains("relay_relay")) c.latency.relay_relay = detail::link_from_json(l["relay_relay"], c.latency.relay_relay);
      if (l.contains("relay_participant"))
        c.latency.relay_participant = detail::link_from_json(l["relay_participant"], c.latency.relay_participant);
    }
    if (j.contains("proposer_selection")) {
      const auto s = j.at("proposer_selection").get<std::string>();
      if (s == "round-robin")
        c.proposer = ProposerSelection::round_robin;
      else if (s == "stake-weighted")
        c.proposer = ProposerSelection::stake_weighted;
      else
        throw InvalidConfig("proposer_selection must be round-robin or stake-weighted");
    }
    detail::opt(j, "stakes", c.stakes);
    if (j.contains("agents"))
      for (std::size_t i = 0; i < j.at("agents").size(); ++i)
        c.agents.push_back(detail::agent_from_json(j.at("agents")[i], i));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidConfig(std::string("bad config value: ") + e.what());
  }
  validate(c);
  return c;
}

inline SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot open config " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidConfig(path + ": " + e.what());
  }
  return config_from_json(j);
}

}  // namespace algomev::sim
