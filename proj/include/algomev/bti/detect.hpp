#pragma once

#include "algomev/bti/pattern.hpp"
#include "algomev/chain/model.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace algomev {

inline constexpr std::size_t kDefaultBtiSizeThreshold = 40;

struct BtiEvent {
  std::uint64_t round = 0;
  std::string sender;
  PatternKey pattern;
  std::uint32_t count = 0;      // top-level txns matching the dominant pattern
  std::uint32_t block_len = 0;  // top-level txns in the block
  double share = 0.0;
  std::string label;
  std::vector<std::string> unit_ids;  // group ids of the matching units

  bool operator==(const BtiEvent&) const = default;
};

// share >= 0.80 evaluated exactly as 5 * count >= 4 * block_len.
inline bool meets_share(std::uint64_t count, std::uint64_t block_len) { return 5 * count >= 4 * block_len; }

// A block is a BTI iff it holds more than `size_threshold` top-level txns and
// one sender's single pattern covers at least 80% of them. Ties between
// equally large patterns resolve to the smallest canonical key.
inline std::optional<BtiEvent> detect_bti(const Block& block, std::size_t size_threshold = kDefaultBtiSizeThreshold) {
  const std::size_t len = block.txns.size();
  if (len <= size_threshold) return std::nullopt;

  struct Tally {
    PatternKey key;
    std::uint32_t count = 0;
    std::vector<std::string> units;
  };
  std::map<std::string, Tally> tally;
  for (const auto& g : block.groups) {
    auto key = pattern_key(g);
    auto& t = tally[key.canonical()];
    if (t.count == 0) t.key = std::move(key);
    t.count += static_cast<std::uint32_t>(g.txns.size());
    t.units.push_back(g.group_id);
  }
  const Tally* best = nullptr;
  for (const auto& [_, t] : tally)
    if (!best || t.count > best->count) best = &t;
  if (!best || !meets_share(best->count, len)) return std::nullopt;

  BtiEvent e;
  e.round = block.round;
  e.sender = best->key.sender;
  e.pattern = best->key;
  e.count = best->count;
  e.block_len = static_cast<std::uint32_t>(len);
  e.share = static_cast<double>(best->count) / static_cast<double>(len);
  e.unit_ids = best->units;
  return e;
}

// Median top-level block size over a range; the BTI size threshold can be
// derived from the data instead of the default.
inline std::size_t median_block_size(std::vector<std::size_t> sizes) {
  if (sizes.empty()) return 0;
  const auto mid = sizes.begin() + static_cast<std::ptrdiff_t>(sizes.size() / 2);
  std::nth_element(sizes.begin(), mid, sizes.end());
  if (sizes.size() % 2 == 1) return *mid;
  const auto lo = *std::max_element(sizes.begin(), mid);
  return (lo + *mid) / 2;
}

}  // namespace algomev
