#pragma once

#include "algomev/chain/model.hpp"

#include <string>
#include <unordered_map>

namespace algomev {

// Transactions sharing a group id form one group; the rest become singleton
// groups keyed by their txid. Groups are ordered by first member and never
// reorder transactions.
inline Block assemble_groups(Block block) {
  block.groups.clear();
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& t : block.txns) {
    if (t.group_id && !t.group_id->empty()) {
      auto [it, fresh] = index.try_emplace(*t.group_id, block.groups.size());
      if (fresh) {
        TxnGroup g;
        g.group_id = *t.group_id;
        g.block_position = t.block_position;
        block.groups.push_back(std::move(g));
      }
      auto& g = block.groups[it->second];
      g.txns.push_back(t);
      g.total_fee += fee_with_inner(t);
    } else {
      TxnGroup g;
      g.group_id = t.txid;
      g.synthetic = true;
      g.block_position = t.block_position;
      g.total_fee = fee_with_inner(t);
      g.txns.push_back(t);
      block.groups.push_back(std::move(g));
    }
  }
  return block;
}

}  // namespace algomev
