#pragma once

#include "algomev/sim/simulator.hpp"

#include <json.hpp>

#include <ostream>

namespace algomev::sim {

inline nlohmann::json to_json(const SimReport& r, bool with_trace = true) {
  using nlohmann::json;
  json j;
  j["seed"] = r.seed;
  j["blocks"] = r.blocks.size();
  json modes = json::array();
  for (const auto& b : r.blocks) modes.push_back(to_string(b.mode));
  j["ordering_modes"] = modes;
  j["fee_flip_round"] = r.fee_flip_round ? json(*r.fee_flip_round) : json(nullptr);
  j["backrun_octile_histogram"] = r.backrun_octile_histogram;
  j["backruns_included"] = r.backruns_included;
  j["backrun_adjacency_rate"] = r.backrun_adjacency_rate;
  j["frontrun_attempts_fcfs"] = r.frontrun_attempts_fcfs;
  j["frontrun_attempts_fee"] = r.frontrun_attempts_fee;
  j["frontrun_success_rate_fcfs"] = r.frontrun_success_rate_fcfs;
  j["frontrun_success_rate_fee"] = r.frontrun_success_rate_fee;
  j["clog_total_cost"] = r.clog_total_cost;
  j["txns_emitted"] = r.txns_emitted;
  j["txns_included"] = r.txns_included;
  j["txns_pending"] = r.txns_pending;
  json agents = json::array();
  for (const auto& a : r.agents)
    agents.push_back({{"agent", a.agent},
                      {"kind", to_string(a.kind)},
                      {"issued", a.issued},
                      {"included", a.included},
                      {"attempts", a.attempts},
                      {"successes", a.successes},
                      {"success_rate", a.success_rate()}});
  j["agents"] = agents;
  if (with_trace) {
    json blocks = json::array();
    for (const auto& b : r.blocks) {
      json jb{{"round", b.round},       {"proposer", b.proposer}, {"mode", to_string(b.mode)},
              {"mempool_size", b.mempool_size}, {"len", b.len}};
      if (!b.txns.empty()) {
        json txns = json::array();
        for (const auto& t : b.txns) txns.push_back({t.txn, t.arrival_ms, t.fee, to_string(t.role)});
        jb["txns"] = txns;
      }
      blocks.push_back(jb);
    }
    j["block_trace"] = blocks;
  }
  return j;
}

// gnuplot-ready: octile, count.
inline void write_octile_tsv(std::ostream& out, const SimReport& r) {
  out << "# octile\tbackruns\n";
  for (int i = 0; i < 8; ++i) out << (i + 1) << '\t' << r.backrun_octile_histogram[i] << '\n';
}

// Pearson chi-square statistic of the histogram against a flat expectation.
inline double chi_square_uniform(const std::array<std::uint64_t, 8>& h) {
  double n = 0;
  for (auto c : h) n += static_cast<double>(c);
  if (n == 0) return 0.0;
  const double e = n / 8.0;
  double chi = 0;
  for (auto c : h) chi += (static_cast<double>(c) - e) * (static_cast<double>(c) - e) / e;
  return chi;
}

// Upper 1% point of chi-square with 7 degrees of freedom.
inline constexpr double kChiSquare7dofP01 = 18.475;

}  // namespace algomev::sim
