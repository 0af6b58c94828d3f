#pragma once

#include "algomev/analytics/octiles.hpp"
#include "algomev/sim/config.hpp"
#include "algomev/util/rng.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <vector>

namespace algomev::sim {

enum class OrderingMode { fcfs, fee };

inline std::string_view to_string(OrderingMode m) { return m == OrderingMode::fcfs ? "fcfs" : "fee"; }

enum class TxnRole { background, victim, backrun, frontrun, clog };

inline std::string_view to_string(TxnRole r) {
  switch (r) {
    case TxnRole::background: return "background";
    case TxnRole::victim: return "victim";
    case TxnRole::backrun: return "backrun";
    case TxnRole::frontrun: return "frontrun";
    case TxnRole::clog: return "clog";
  }
  return "background";
}

inline constexpr std::int64_t kNone = -1;

struct SimTxn {
  std::int64_t id = 0;
  TxnRole role = TxnRole::background;
  std::int64_t agent = kNone;  // issuing agent, none for background
  std::uint64_t fee = 0;
  bool emitted = false;
  std::int64_t emitted_ms = 0;
  std::int64_t target = kNone;    // txn this one is aimed at
  std::uint64_t issued_after = 0;  // block-state agents: block they reacted to
  // Filled on inclusion.
  std::uint64_t block = 0;  // 0: never included
  std::uint32_t position = 0;
};

struct TraceEntry {
  std::int64_t txn = 0;
  std::int64_t arrival_ms = 0;  // at the proposer
  std::uint64_t arrival_seq = 0;
  std::uint64_t fee = 0;
  TxnRole role = TxnRole::background;
};

struct BlockRecord {
  std::uint64_t round = 0;
  std::size_t proposer = 0;  // participant index
  OrderingMode mode = OrderingMode::fcfs;
  std::uint64_t mempool_size = 0;  // at evaluation time
  std::uint32_t len = 0;
  std::vector<TraceEntry> txns;  // only with trace enabled
};

struct AgentStats {
  std::size_t agent = 0;
  AgentKind kind = AgentKind::victim_trader;
  std::uint64_t issued = 0;    // txns issued
  std::uint64_t included = 0;  // of those, included in a block
  std::uint64_t attempts = 0;  // scored attempts
  std::uint64_t successes = 0;
  double success_rate() const { return attempts ? static_cast<double>(successes) / static_cast<double>(attempts) : 0.0; }
};

struct SimReport {
  std::uint64_t seed = 0;
  std::vector<BlockRecord> blocks;
  std::array<std::uint64_t, 8> backrun_octile_histogram{};
  std::uint64_t backruns_included = 0;
  double backrun_adjacency_rate = 0.0;
  std::uint64_t frontrun_attempts_fcfs = 0;
  std::uint64_t frontrun_attempts_fee = 0;
  double frontrun_success_rate_fcfs = 0.0;
  double frontrun_success_rate_fee = 0.0;
  std::uint64_t clog_total_cost = 0;
  std::optional<std::uint64_t> fee_flip_round;
  std::uint64_t txns_emitted = 0;
  std::uint64_t txns_included = 0;
  std::uint64_t txns_pending = 0;
  std::vector<AgentStats> agents;
};

class Simulator {
 public:
  explicit Simulator(SimConfig cfg) : cfg_(std::move(cfg)), topo_rng_(Rng::stream(cfg_.seed, 0)),
                                      traffic_rng_(Rng::stream(cfg_.seed, 1)), link_rng_(Rng::stream(cfg_.seed, 2)),
                                      proposer_rng_(Rng::stream(cfg_.seed, 3)) {
    validate(cfg_);
    build_topology();
  }

  SimReport run() {
    schedule_interval(0);
    for (std::uint64_t r = 1; r <= cfg_.duration_blocks; ++r) {
      push(static_cast<std::int64_t>(r) * cfg_.block_interval_ms, kBoundary, EventType::boundary, static_cast<std::int64_t>(r));
      push(static_cast<std::int64_t>(r) * cfg_.block_interval_ms + cfg_.block_notify_ms, kNotify, EventType::notify,
           static_cast<std::int64_t>(r));
    }
    for (std::size_t i = 0; i < cfg_.agents.size(); ++i) {
      const auto& a = cfg_.agents[i];
      if (a.kind == AgentKind::clogger && a.trigger == ClogTrigger::block && a.start_block == 0)
        push(cfg_.block_notify_ms, kAction, EventType::clog_batch, static_cast<std::int64_t>(i));
    }
    const std::int64_t end = static_cast<std::int64_t>(cfg_.duration_blocks) * cfg_.block_interval_ms;
    while (!queue_.empty()) {
      const Event e = queue_.top();
      queue_.pop();
      if (e.time > end) break;
      now_ = e.time;
      dispatch(e);
    }
    return finish();
  }

  const std::vector<SimTxn>& txns() const { return txns_; }

 private:
  // Event classes at equal timestamps: arrivals, then agent actions, then the
  // block boundary, then the block notification.
  static constexpr int kArrival = 0;
  static constexpr int kAction = 1;
  static constexpr int kBoundary = 2;
  static constexpr int kNotify = 3;

  enum class EventType { arrive, emit, boundary, notify, clog_batch };

  struct Event {
    std::int64_t time;
    int cls;
    std::uint64_t seq;
    EventType type;
    std::int64_t a;  // node / txn / round / agent
    std::int64_t b;  // txn
    bool operator>(const Event& o) const {
      if (time != o.time) return time > o.time;
      if (cls != o.cls) return cls > o.cls;
      return seq > o.seq;
    }
  };

  struct Link {
    std::size_t to;
    std::int64_t base;
    const LinkLatency* model;
    std::int64_t last_arrival = 0;
  };

  struct MempoolEntry {
    std::int64_t arrival;
    std::uint64_t seq;
    std::int64_t txn;
  };

  // Node ids: relays, then participants, then agent endpoints, then clients.
  std::size_t relay_node(std::size_t i) const { return i; }
  std::size_t participant_node(std::size_t i) const { return cfg_.n_relays + i; }
  std::size_t agent_node(std::size_t i) const { return cfg_.n_relays + cfg_.n_participants + i; }
  std::size_t client_node(std::size_t i) const { return cfg_.n_relays + cfg_.n_participants + cfg_.agents.size() + i; }
  bool is_relay(std::size_t n) const { return n < cfg_.n_relays; }
  bool is_participant(std::size_t n) const { return n >= cfg_.n_relays && n < cfg_.n_relays + cfg_.n_participants; }
  bool is_agent(std::size_t n) const {
    return n >= cfg_.n_relays + cfg_.n_participants && n < cfg_.n_relays + cfg_.n_participants + cfg_.agents.size();
  }

  std::size_t add_link(std::size_t from, std::size_t to, const LinkLatency& m) {
    const std::int64_t base = m.base_ms + topo_rng_.between(0, m.spread_ms);
    out_[from].push_back(Link{to, base, &m});
    return out_[from].size() - 1;
  }

  void build_topology() {
    const std::size_t nodes = client_node(cfg_.n_clients);
    out_.assign(nodes, {});
    seen_.assign(nodes, {});
    mempools_.assign(cfg_.n_participants, {});
    const std::size_t R = cfg_.n_relays;
    for (std::size_t r = 0; r < R; ++r) {
      // A ring edge keeps the relay graph strongly connected; the rest of the
      // fanout is random.
      std::vector<std::size_t> peers;
      if (R > 1) peers.push_back((r + 1) % R);
      std::vector<std::size_t> pool;
      for (std::size_t q = 0; q < R; ++q)
        if (q != r && q != (r + 1) % R) pool.push_back(q);
      while (peers.size() < std::min(cfg_.relay_fanout, R - 1) && !pool.empty()) {
        const auto k = topo_rng_.below(pool.size());
        peers.push_back(pool[k]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
      }
      for (auto q : peers) add_link(relay_node(r), relay_node(q), cfg_.latency.relay_relay);
    }
    for (std::size_t p = 0; p < cfg_.n_participants; ++p) {
      std::vector<std::size_t> pool(R);
      for (std::size_t q = 0; q < R; ++q) pool[q] = q;
      for (std::size_t k = 0; k < std::min(cfg_.participant_relays, R); ++k) {
        const auto i = topo_rng_.below(pool.size());
        add_link(relay_node(pool[i]), participant_node(p), cfg_.latency.relay_participant);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
    uplink_.assign(nodes, 0);
    for (std::size_t a = 0; a < cfg_.agents.size(); ++a) {
      const auto relay = relay_node(cfg_.agents[a].attach_relay);
      uplink_[agent_node(a)] = add_link(agent_node(a), relay, cfg_.latency.agent_relay);
      if (observes(cfg_.agents[a])) add_link(relay, agent_node(a), cfg_.latency.agent_relay);
    }
    for (std::size_t c = 0; c < cfg_.n_clients; ++c)
      uplink_[client_node(c)] = add_link(client_node(c), relay_node(c % R), cfg_.latency.client_relay);
    stats_.resize(cfg_.agents.size());
    for (std::size_t a = 0; a < cfg_.agents.size(); ++a) stats_[a] = AgentStats{a, cfg_.agents[a].kind};
    last_clog_block_.assign(cfg_.agents.size(), std::nullopt);
  }

  static bool observes(const AgentSpec& a) {
    return a.kind == AgentKind::network_backrunner || a.kind == AgentKind::network_frontrunner ||
           (a.kind == AgentKind::clogger && a.trigger == ClogTrigger::network);
  }

  void push(std::int64_t t, int cls, EventType type, std::int64_t a, std::int64_t b = 0) {
    queue_.push(Event{t, cls, next_seq_++, type, a, b});
  }

  void send(Link& link, std::int64_t txn) {
    const std::int64_t jitter = link.model->jitter_ms ? link_rng_.between(0, link.model->jitter_ms) : 0;
    const std::int64_t at = std::max(now_ + link.base + jitter, link.last_arrival);
    link.last_arrival = at;
    push(at, kArrival, EventType::arrive, static_cast<std::int64_t>(link.to), txn);
  }

  std::int64_t new_txn(TxnRole role, std::int64_t agent, std::uint64_t fee) {
    SimTxn t;
    t.id = static_cast<std::int64_t>(txns_.size());
    t.role = role;
    t.agent = agent;
    t.fee = fee ? fee : cfg_.min_fee;
    txns_.push_back(t);
    return t.id;
  }

  // Emission happens at an event so that it is ordered with arrivals.
  void emit_at(std::int64_t t, std::size_t node, std::int64_t txn) {
    push(t, kAction, EventType::emit, static_cast<std::int64_t>(node), txn);
  }

  std::uint64_t current_round() const {
    return static_cast<std::uint64_t>(now_ / cfg_.block_interval_ms) + 1;  // block being filled
  }

  void schedule_interval(std::uint64_t k) {
    // Interval k ends at the boundary of round k + 1.
    const std::uint64_t round = k + 1;
    if (round > cfg_.duration_blocks) return;
    const std::int64_t lo = static_cast<std::int64_t>(k) * cfg_.block_interval_ms;
    const std::int64_t hi = lo + cfg_.block_interval_ms - 1;
    for (std::uint64_t i = 0; i < cfg_.background_per_block; ++i) {
      const auto client = traffic_rng_.below(cfg_.n_clients);
      const auto t = traffic_rng_.between(lo, hi);
      emit_at(t, client_node(client), new_txn(TxnRole::background, kNone, cfg_.min_fee));
    }
    for (std::size_t a = 0; a < cfg_.agents.size(); ++a) {
      const auto& spec = cfg_.agents[a];
      if (spec.kind != AgentKind::victim_trader) continue;
      const std::uint64_t last = spec.end_block ? spec.end_block : cfg_.duration_blocks;
      if (round < spec.start_block || round > last) continue;
      for (std::uint64_t i = 0; i < spec.per_block; ++i) {
        const auto t = traffic_rng_.between(lo, hi);
        emit_at(t, agent_node(a), new_txn(TxnRole::victim, static_cast<std::int64_t>(a), spec.fee));
      }
    }
  }

  void dispatch(const Event& e) {
    switch (e.type) {
      case EventType::emit: on_emit(static_cast<std::size_t>(e.a), e.b); break;
      case EventType::arrive: on_arrive(static_cast<std::size_t>(e.a), e.b); break;
      case EventType::boundary: on_boundary(static_cast<std::uint64_t>(e.a)); break;
      case EventType::notify: on_notify(static_cast<std::uint64_t>(e.a)); break;
      case EventType::clog_batch: issue_clog(static_cast<std::size_t>(e.a)); break;
    }
  }

  void on_emit(std::size_t node, std::int64_t txn) {
    auto& t = txns_[static_cast<std::size_t>(txn)];
    t.emitted = true;
    t.emitted_ms = now_;
    if (t.agent != kNone) stats_[static_cast<std::size_t>(t.agent)].issued++;
    if (t.role == TxnRole::victim) bind_pending_targets(txn);
    send(out_[node][uplink_[node]], txn);
  }

  void on_arrive(std::size_t node, std::int64_t txn) {
    if (is_agent(node)) {
      on_observe(node - agent_node(0), txn);
      return;
    }
    auto& seen = seen_[node];
    if (seen.size() <= static_cast<std::size_t>(txn)) seen.resize(txns_.size(), false);
    if (seen[static_cast<std::size_t>(txn)]) return;
    seen[static_cast<std::size_t>(txn)] = true;
    if (is_participant(node)) {
      if (txns_[static_cast<std::size_t>(txn)].block == 0)
        mempools_[node - participant_node(0)].push_back({now_, arrival_seq_++, txn});
      return;
    }
    for (auto& link : out_[node]) {
      if (is_agent(link.to) && txns_[static_cast<std::size_t>(txn)].agent == static_cast<std::int64_t>(link.to - agent_node(0)))
        continue;  // no echo back to the issuer
      send(link, txn);
    }
  }

  bool targets(const AgentSpec& spec, const SimTxn& t) const {
    if (t.role != TxnRole::victim) return false;
    return !spec.target || static_cast<std::int64_t>(*spec.target) == t.agent;
  }

  void on_observe(std::size_t agent, std::int64_t txn) {
    const auto& spec = cfg_.agents[agent];
    const auto& seen = txns_[static_cast<std::size_t>(txn)];
    if (!targets(spec, seen)) return;
    switch (spec.kind) {
      case AgentKind::network_backrunner:
      case AgentKind::network_frontrunner: {
        const auto role = spec.kind == AgentKind::network_backrunner ? TxnRole::backrun : TxnRole::frontrun;
        const auto id = new_txn(role, static_cast<std::int64_t>(agent), spec.fee);
        txns_[static_cast<std::size_t>(id)].target = txn;
        emit_at(now_ + spec.reaction_delay_ms, agent_node(agent), id);
        break;
      }
      case AgentKind::clogger: {
        const auto round = current_round();
        if (round < spec.start_block) return;
        if (const auto& last = last_clog_block_[agent]) {
          if (spec.every_blocks == 0 || round < *last + spec.every_blocks) return;
        }
        last_clog_block_[agent] = round;
        push(now_ + spec.reaction_delay_ms, kAction, EventType::clog_batch, static_cast<std::int64_t>(agent));
        break;
      }
      default: break;
    }
  }

  void issue_clog(std::size_t agent) {
    const auto& spec = cfg_.agents[agent];
    for (std::uint64_t i = 0; i < spec.batch_size; ++i)
      emit_at(now_, agent_node(agent), new_txn(TxnRole::clog, static_cast<std::int64_t>(agent), spec.batch_fee));
    // The batch is scored against the next victim issued after it.
    pending_targets_.push_back(static_cast<std::int64_t>(txns_.size()) - 1);
  }

  // Tolerating block-state frontruns and clog batches target the first victim
  // emitted after them.
  void bind_pending_targets(std::int64_t victim) {
    for (auto id : pending_targets_) txns_[static_cast<std::size_t>(id)].target = victim;
    pending_targets_.clear();
  }

  std::size_t pick_proposer(std::uint64_t round) {
    if (cfg_.proposer == ProposerSelection::round_robin) return (round - 1) % cfg_.n_participants;
    std::uint64_t total = 0;
    for (auto s : cfg_.stakes) total += s;
    auto x = proposer_rng_.below(total);
    for (std::size_t i = 0; i < cfg_.stakes.size(); ++i) {
      if (x < cfg_.stakes[i]) return i;
      x -= cfg_.stakes[i];
    }
    return cfg_.stakes.size() - 1;
  }

  void on_boundary(std::uint64_t round) {
    const std::size_t p = pick_proposer(round);
    auto& pool = mempools_[p];
    std::erase_if(pool, [&](const MempoolEntry& e) { return txns_[static_cast<std::size_t>(e.txn)].block != 0; });

    BlockRecord rec;
    rec.round = round;
    rec.proposer = p;
    rec.mempool_size = pool.size();
    rec.mode = pool.size() > cfg_.mempool_congestion_threshold ? OrderingMode::fee : OrderingMode::fcfs;

    // The pool is already in (arrival, seq) order.
    const std::size_t take = std::min<std::size_t>(pool.size(), cfg_.max_block_txns);
    std::vector<MempoolEntry> chosen;
    if (rec.mode == OrderingMode::fcfs) {
      chosen.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(take));
    } else {
      std::vector<MempoolEntry> sorted(pool.begin(), pool.end());
      std::stable_sort(sorted.begin(), sorted.end(), [&](const MempoolEntry& a, const MempoolEntry& b) {
        return txns_[static_cast<std::size_t>(a.txn)].fee > txns_[static_cast<std::size_t>(b.txn)].fee;
      });
      chosen.assign(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(take));
    }
    std::uint32_t pos = 0;
    for (const auto& e : chosen) {
      auto& t = txns_[static_cast<std::size_t>(e.txn)];
      t.block = round;
      t.position = ++pos;
      if (t.agent != kNone) stats_[static_cast<std::size_t>(t.agent)].included++;
      if (cfg_.trace) rec.txns.push_back({e.txn, e.arrival, e.seq, t.fee, t.role});
    }
    rec.len = pos;
    std::erase_if(pool, [&](const MempoolEntry& e) { return txns_[static_cast<std::size_t>(e.txn)].block != 0; });
    blocks_.push_back(std::move(rec));
    block_members_.push_back({});
    for (const auto& e : chosen) block_members_.back().push_back(e.txn);
    schedule_interval(round);
  }

  void on_notify(std::uint64_t round) {
    const auto& members = block_members_[round - 1];
    for (std::size_t a = 0; a < cfg_.agents.size(); ++a) {
      const auto& spec = cfg_.agents[a];
      const auto agent = static_cast<std::int64_t>(a);
      switch (spec.kind) {
        case AgentKind::blockstate_backrunner: {
          // Backrun the last targeted victim the block revealed.
          std::int64_t victim = kNone;
          for (auto id : members)
            if (targets(spec, txns_[static_cast<std::size_t>(id)])) victim = id;
          if (victim == kNone) break;
          const auto id = new_txn(TxnRole::backrun, agent, spec.fee);
          txns_[static_cast<std::size_t>(id)].target = victim;
          txns_[static_cast<std::size_t>(id)].issued_after = round;
          emit_at(now_ + spec.issue_offset_ms, agent_node(a), id);
          break;
        }
        case AgentKind::blockstate_frontrunner: {
          const auto id = new_txn(TxnRole::frontrun, agent, spec.fee);
          txns_[static_cast<std::size_t>(id)].issued_after = round;
          if (spec.mode == FrontrunMode::tolerating) pending_targets_.push_back(id);
          emit_at(now_ + spec.issue_offset_ms, agent_node(a), id);
          break;
        }
        case AgentKind::clogger: {
          if (spec.trigger != ClogTrigger::block || round < spec.start_block) break;
          const bool due = spec.every_blocks == 0 ? round == spec.start_block
                                                  : (round - spec.start_block) % spec.every_blocks == 0;
          if (due) push(now_, kAction, EventType::clog_batch, agent);
          break;
        }
        default: break;
      }
    }
  }

  // ---- scoring -----------------------------------------------------------

  const SimTxn& txn(std::int64_t id) const { return txns_[static_cast<std::size_t>(id)]; }

  static bool before(const SimTxn& a, const SimTxn& b) {
    return std::tie(a.block, a.position) < std::tie(b.block, b.position);
  }

  // First block whose boundary comes after time t.
  std::uint64_t block_after(std::int64_t t) const { return static_cast<std::uint64_t>(t / cfg_.block_interval_ms) + 1; }

  SimReport finish() {
    SimReport r;
    r.seed = cfg_.seed;
    r.agents = stats_;
    for (const auto& t : txns_) {
      if (!t.emitted) continue;
      ++r.txns_emitted;
      if (t.block) ++r.txns_included;
    }
    r.txns_pending = r.txns_emitted - r.txns_included;

    std::uint64_t adjacent = 0;
    std::uint64_t fr_ok_fcfs = 0, fr_ok_fee = 0;
    const std::uint64_t last_round = cfg_.duration_blocks;
    std::vector<const SimTxn*> clog_last;  // last txn of each batch
    for (const auto& t : txns_) {
      if (t.role == TxnRole::clog && t.block) r.clog_total_cost += t.fee;
      if (t.agent == kNone) continue;
      auto& st = r.agents[static_cast<std::size_t>(t.agent)];
      const auto& spec = cfg_.agents[static_cast<std::size_t>(t.agent)];
      switch (spec.kind) {
        case AgentKind::network_backrunner: {
          if (!t.block) break;
          const auto& v = txn(t.target);
          const bool adj = v.block == t.block && t.position == v.position + 1;
          r.backrun_octile_histogram[octile_of(t.position, blocks_[t.block - 1].len) - 1]++;
          r.backruns_included++;
          st.attempts++;
          if (adj) {
            st.successes++;
            adjacent++;
          }
          break;
        }
        case AgentKind::blockstate_backrunner: {
          if (t.issued_after + 1 > last_round) break;
          st.attempts++;
          if (t.block == t.issued_after + 1) st.successes++;
          if (t.block) {
            r.backrun_octile_histogram[octile_of(t.position, blocks_[t.block - 1].len) - 1]++;
            r.backruns_included++;
            const auto& v = txn(t.target);
            if (v.block == t.block && t.position == v.position + 1) adjacent++;
          }
          break;
        }
        case AgentKind::network_frontrunner: {
          if (!t.block) break;
          const auto& v = txn(t.target);
          bool ok = v.block == 0 || before(t, v);
          if (spec.mode == FrontrunMode::tolerating) ok = v.block == t.block && t.position < v.position;
          st.attempts++;
          if (ok) st.successes++;
          if (blocks_[t.block - 1].mode == OrderingMode::fcfs) {
            r.frontrun_attempts_fcfs++;
            fr_ok_fcfs += ok;
          } else {
            r.frontrun_attempts_fee++;
            fr_ok_fee += ok;
          }
          break;
        }
        case AgentKind::blockstate_frontrunner: {
          if (t.issued_after + 1 > last_round) break;
          bool ok;
          if (spec.mode == FrontrunMode::destructive) {
            ok = t.block == t.issued_after + 1 && t.position == 1;
          } else {
            if (t.target == kNone) break;
            const auto& v = txn(t.target);
            ok = t.block && v.block == t.block && v.position == t.position + 1;
          }
          st.attempts++;
          if (ok) st.successes++;
          const bool fee_block = t.block && blocks_[t.block - 1].mode == OrderingMode::fee;
          (fee_block ? r.frontrun_attempts_fee : r.frontrun_attempts_fcfs)++;
          (fee_block ? fr_ok_fee : fr_ok_fcfs) += ok;
          break;
        }
        case AgentKind::clogger: {
          // Scored once per batch, on the batch's last txn.
          if (t.target == kNone) break;
          const auto& v = txn(t.target);
          const auto due = block_after(v.emitted_ms);
          if (due > last_round) break;
          st.attempts++;
          if (v.block != due) st.successes++;
          break;
        }
        default: break;
      }
    }
    r.backrun_adjacency_rate =
        r.backruns_included ? static_cast<double>(adjacent) / static_cast<double>(r.backruns_included) : 0.0;
    r.frontrun_success_rate_fcfs =
        r.frontrun_attempts_fcfs ? static_cast<double>(fr_ok_fcfs) / static_cast<double>(r.frontrun_attempts_fcfs) : 0.0;
    r.frontrun_success_rate_fee =
        r.frontrun_attempts_fee ? static_cast<double>(fr_ok_fee) / static_cast<double>(r.frontrun_attempts_fee) : 0.0;
    for (const auto& b : blocks_)
      if (b.mode == OrderingMode::fee) {
        r.fee_flip_round = b.round;
        break;
      }
    r.blocks = std::move(blocks_);
    return r;
  }

  SimConfig cfg_;
  Rng topo_rng_;
  Rng traffic_rng_;
  Rng link_rng_;
  Rng proposer_rng_;

  std::vector<std::vector<Link>> out_;
  std::vector<std::size_t> uplink_;
  std::vector<std::vector<bool>> seen_;
  std::vector<std::vector<MempoolEntry>> mempools_;
  std::vector<SimTxn> txns_;
  std::vector<BlockRecord> blocks_;
  std::vector<std::vector<std::int64_t>> block_members_;
  std::vector<AgentStats> stats_;
  std::vector<std::optional<std::uint64_t>> last_clog_block_;
  std::vector<std::int64_t> pending_targets_;

  std::priority_queue<Event, std::vector<Event>, std::greater<>> queue_;
  std::uint64_t next_seq_ = 0;
  std::uint64_t arrival_seq_ = 0;
  std::int64_t now_ = 0;
};

inline SimReport simulate(const SimConfig& cfg) { return Simulator(cfg).run(); }

}  // namespace algomev::sim
