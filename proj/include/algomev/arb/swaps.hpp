#pragma once

#include "algomev/arb/pool_registry.hpp"
#include "algomev/chain/model.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace algomev {

struct Swap {
  std::string pool;  // registry pool_id
  AssetId token_in;
  std::uint64_t amount_in = 0;
  AssetId token_out;
  std::uint64_t amount_out = 0;
  std::uint32_t seq = 0;  // 1-based within the group

  // Provenance: top-level member index carrying each leg, and whether both
  // legs were inner transactions of that member.
  std::size_t inbound_member = 0;
  std::size_t outbound_member = 0;
  bool via_inner = false;

  bool operator==(const Swap&) const = default;
};

namespace detail {

struct Transfer {
  const Txn* txn;
  std::size_t member;  // top-level index within the group
  bool inner;
};

inline void collect_transfers(const Txn& t, std::size_t member, bool inner, std::vector<Transfer>& out) {
  if (t.is_transfer() && t.receiver) out.push_back({&t, member, inner});
  for (const auto& in : t.inner) collect_transfers(in, member, true, out);
}

}  // namespace detail

// Pairs each transfer from the group's economic sender into a registry pool
// with the next transfer from that pool back to the sender. A second inbound
// transfer to the same pool before the return leg discards the first.
// Inner transactions are walked depth-first in order. Swaps are ordered by
// their inbound leg.
inline std::vector<Swap> extract_swaps(const TxnGroup& group, const PoolRegistry& registry) {
  std::vector<Swap> swaps;
  if (group.txns.empty()) return swaps;
  const std::string& sender = group.economic_sender();

  std::vector<detail::Transfer> transfers;
  for (std::size_t i = 0; i < group.txns.size(); ++i) detail::collect_transfers(group.txns[i], i, false, transfers);

  struct Pending {
    std::size_t order;
    const detail::Transfer* leg;
  };
  std::unordered_map<const PoolEntry*, Pending> pending;
  std::vector<std::pair<std::size_t, Swap>> ordered;

  for (std::size_t k = 0; k < transfers.size(); ++k) {
    const auto& tr = transfers[k];
    const Txn& t = *tr.txn;
    if (t.sender == sender) {
      if (const PoolEntry* pool = registry.find(*t.receiver); pool && t.amount > 0) {
        pending[pool] = Pending{k, &tr};
        continue;
      }
    }
    if (*t.receiver != sender) continue;
    const PoolEntry* pool = registry.find(t.sender);
    if (!pool) continue;
    auto it = pending.find(pool);
    if (it == pending.end()) continue;
    const auto& in = *it->second.leg;
    Swap s;
    s.pool = pool->pool_id;
    s.token_in = in.txn->transfer_asset();
    s.amount_in = in.txn->amount;
    s.token_out = t.transfer_asset();
    s.amount_out = t.amount;
    s.inbound_member = in.member;
    s.outbound_member = tr.member;
    s.via_inner = in.inner && tr.inner && in.member == tr.member;
    const std::size_t order = it->second.order;
    pending.erase(it);
    if (s.token_in == s.token_out) continue;
    ordered.emplace_back(order, std::move(s));
  }

  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::uint32_t seq = 0;
  for (auto& [_, s] : ordered) {
    s.seq = ++seq;
    swaps.push_back(std::move(s));
  }
  return swaps;
}

}  // namespace algomev
