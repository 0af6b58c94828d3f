#pragma once

#include "algomev/arb/cycle.hpp"
#include "algomev/arb/prices.hpp"
#include "algomev/arb/swaps.hpp"
#include "algomev/chain/model.hpp"
#include "algomev/util/time.hpp"

#include <optional>
#include <string>
#include <vector>

namespace algomev {

enum class Execution { atomic_app, grouped };

inline std::string_view to_string(Execution e) { return e == Execution::atomic_app ? "atomic-app" : "grouped"; }

enum class UsdStatus { converted, not_convertible, missing_price };

inline std::string_view to_string(UsdStatus s) {
  switch (s) {
    case UsdStatus::converted: return "ok";
    case UsdStatus::not_convertible: return "n/a";
    case UsdStatus::missing_price: return "missing-price";
  }
  return "n/a";
}

struct ArbCycle {
  std::string id;  // group id, or txid for a singleton
  std::string searcher;
  std::uint64_t block_round = 0;
  std::int64_t block_timestamp = 0;
  std::string proposer;
  std::uint32_t block_position = 0;
  std::uint32_t block_len = 0;
  std::vector<Swap> swaps;
  AssetId profit_token;
  std::int64_t profit_amount = 0;
  std::uint64_t input_amount = 0;
  double profit_rate_pct = 0.0;
  Execution execution = Execution::grouped;
  std::uint64_t fee_paid = 0;
  std::optional<double> profit_usd;
  UsdStatus usd_status = UsdStatus::not_convertible;
};

// atomic-app iff the group has exactly one top-level application call and
// every swap was carried by that call's inner transactions.
inline Execution classify_execution(const TxnGroup& group, const CycleCore& cycle) {
  std::size_t appl_count = 0;
  std::size_t appl_index = 0;
  for (std::size_t i = 0; i < group.txns.size(); ++i) {
    if (group.txns[i].kind == TxnKind::appl) {
      ++appl_count;
      appl_index = i;
    }
  }
  if (appl_count != 1) return Execution::grouped;
  for (const auto& s : cycle.swaps)
    if (!s.via_inner || s.inbound_member != appl_index || s.outbound_member != appl_index) return Execution::grouped;
  return Execution::atomic_app;
}

// Runs swap extraction and cycle detection on every group of an assembled
// block. Cycles come back in block order; a missing price only blanks the
// USD column.
inline std::vector<ArbCycle> detect_block_arbs(const Block& block, const PoolRegistry& registry,
                                               const PriceTable& prices, const AssetRegistry& assets) {
  std::vector<ArbCycle> out;
  if (registry.empty()) return out;
  const std::string date = utc_date(block.timestamp);
  for (const auto& g : block.groups) {
    auto swaps = extract_swaps(g, registry);
    auto core = detect_cycle(swaps);
    if (!core) continue;
    ArbCycle a;
    a.id = g.group_id;
    a.searcher = g.economic_sender();
    a.block_round = block.round;
    a.block_timestamp = block.timestamp;
    a.proposer = block.proposer;
    a.block_position = g.block_position;
    a.block_len = static_cast<std::uint32_t>(block.txns.size());
    a.profit_token = core->profit_token;
    a.profit_amount = core->profit_amount;
    a.input_amount = core->input_amount;
    a.profit_rate_pct = core->profit_rate_pct;
    a.execution = classify_execution(g, *core);
    a.fee_paid = g.total_fee;
    try {
      a.profit_usd = to_usd(a.profit_token, static_cast<std::uint64_t>(a.profit_amount), date, prices, assets);
      a.usd_status = a.profit_usd ? UsdStatus::converted : UsdStatus::not_convertible;
    } catch (const MissingPrice&) {
      a.usd_status = UsdStatus::missing_price;
    }
    a.swaps = std::move(core->swaps);
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace algomev
