#pragma once

#include "algomev/chain/model.hpp"

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace algomev {

enum class Rule {
  round_not_positive,
  empty_txid,
  gap_in_positions,
  missing_receiver,
  missing_asset,
  pay_non_native_asset,
  missing_app_id,
  inner_on_non_appl,
  inner_limit,
  fee_below_minimum,
  group_partition,
  group_mixed_id,
  group_fee_mismatch,
  group_position,
};

inline std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::round_not_positive: return "round-not-positive";
    case Rule::empty_txid: return "empty-txid";
    case Rule::gap_in_positions: return "gap-in-positions";
    case Rule::missing_receiver: return "missing-receiver";
    case Rule::missing_asset: return "missing-asset";
    case Rule::pay_non_native_asset: return "pay-non-native-asset";
    case Rule::missing_app_id: return "missing-app-id";
    case Rule::inner_on_non_appl: return "inner-on-non-appl";
    case Rule::inner_limit: return "inner-limit";
    case Rule::fee_below_minimum: return "fee-below-minimum";
    case Rule::group_partition: return "group-partition";
    case Rule::group_mixed_id: return "group-mixed-id";
    case Rule::group_fee_mismatch: return "group-fee-mismatch";
    case Rule::group_position: return "group-position";
  }
  return "unknown";
}

struct Violation {
  std::string field;  // e.g. "txns[3].inner"
  Rule rule;
  std::string detail;

  bool operator==(const Violation&) const = default;
};

namespace detail {

inline void check_txn(const Txn& t, const std::string& path, bool top_level, std::vector<Violation>& out) {
  if (t.txid.empty()) out.push_back({path + ".txid", Rule::empty_txid, "txid must be non-empty"});
  switch (t.kind) {
    case TxnKind::pay:
      if (!t.receiver) out.push_back({path + ".receiver", Rule::missing_receiver, "pay requires a receiver"});
      if (t.asset && !t.asset->is_native())
        out.push_back({path + ".asset", Rule::pay_non_native_asset, "pay moves only the native token"});
      break;
    case TxnKind::axfer:
      if (!t.receiver) out.push_back({path + ".receiver", Rule::missing_receiver, "axfer requires a receiver"});
      if (!t.asset) out.push_back({path + ".asset", Rule::missing_asset, "axfer requires an asset"});
      break;
    case TxnKind::appl:
      if (!t.app_id || *t.app_id == 0)
        out.push_back({path + ".app_id", Rule::missing_app_id, "appl requires a positive app_id"});
      break;
    case TxnKind::other:
      break;
  }
  if (!t.inner.empty() && t.kind != TxnKind::appl)
    out.push_back({path + ".inner", Rule::inner_on_non_appl, "only appl txns carry inner txns"});
  if (t.inner.size() > kMaxInnerTxns)
    out.push_back({path + ".inner", Rule::inner_limit,
                   std::to_string(t.inner.size()) + " inner txns exceed the limit of 256"});
  if (top_level && t.fee < kMinFee)
    out.push_back({path + ".fee", Rule::fee_below_minimum,
                   "fee " + std::to_string(t.fee) + " below minimum " + std::to_string(kMinFee)});
  for (std::size_t i = 0; i < t.inner.size(); ++i)
    check_txn(t.inner[i], path + ".inner[" + std::to_string(i) + "]", false, out);
}

}  // namespace detail

// Empty result iff the block satisfies every chain-model invariant.
// Groups are checked only when populated.
inline std::vector<Violation> validate_block(const Block& block) {
  std::vector<Violation> out;
  if (block.round == 0) out.push_back({"round", Rule::round_not_positive, "round must be >= 1"});

  for (std::size_t i = 0; i < block.txns.size(); ++i) {
    const auto& t = block.txns[i];
    const std::string path = "txns[" + std::to_string(i) + "]";
    if (t.block_position != i + 1)
      out.push_back({path + ".block_position", Rule::gap_in_positions,
                     "expected position " + std::to_string(i + 1) + ", found " + std::to_string(t.block_position)});
    detail::check_txn(t, path, true, out);
  }

  if (block.groups.empty()) return out;

  std::unordered_map<std::uint32_t, int> seen;
  for (std::size_t g = 0; g < block.groups.size(); ++g) {
    const auto& grp = block.groups[g];
    const std::string path = "groups[" + std::to_string(g) + "]";
    std::uint64_t fee = 0;
    std::uint32_t prev = 0;
    for (const auto& t : grp.txns) {
      ++seen[t.block_position];
      fee += fee_with_inner(t);
      if (t.block_position <= prev)
        out.push_back({path, Rule::group_partition, "members out of block order"});
      prev = t.block_position;
      if (!grp.synthetic && t.group_id != grp.group_id)
        out.push_back({path, Rule::group_mixed_id, "member " + t.txid + " has a different group id"});
    }
    if (grp.txns.empty()) {
      out.push_back({path, Rule::group_partition, "empty group"});
      continue;
    }
    if (fee != grp.total_fee)
      out.push_back({path + ".total_fee", Rule::group_fee_mismatch,
                     "total_fee " + std::to_string(grp.total_fee) + " != member sum " + std::to_string(fee)});
    if (grp.block_position != grp.txns.front().block_position)
      out.push_back({path + ".block_position", Rule::group_position, "group position must equal first member"});
  }
  for (const auto& t : block.txns)
    if (seen[t.block_position] != 1)
      out.push_back({"groups", Rule::group_partition,
                     "txn " + t.txid + " appears in " + std::to_string(seen[t.block_position]) + " groups"});
  std::size_t members = 0;
  for (const auto& g : block.groups) members += g.txns.size();
  if (members != block.txns.size())
    out.push_back({"groups", Rule::group_partition,
                   std::to_string(members) + " grouped txns for " + std::to_string(block.txns.size()) + " block txns"});
  return out;
}

}  // namespace algomev
