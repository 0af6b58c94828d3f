#pragma once

#include "algomev/arb/swaps.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace algomev {

struct CycleCore {
  std::vector<Swap> swaps;
  AssetId profit_token;
  std::int64_t profit_amount = 0;
  std::uint64_t input_amount = 0;
  double profit_rate_pct = 0.0;
};

// Cyclic-arbitrage heuristics over the full ordered swap list:
//   H1  at least two swaps;
//   H2  token_out(s[i-1]) == token_in(s[i]) and the last output token is the
//       first input token;
//   H3  amount_in(s[i]) <= amount_out(s[i-1]) for every adjacent pair and
//       amount_in(first) <= amount_out(last).
inline std::optional<CycleCore> detect_cycle(std::span<const Swap> swaps) {
  const std::size_t n = swaps.size();
  if (n < 2) return std::nullopt;
  for (std::size_t i = 1; i < n; ++i) {
    if (swaps[i].token_in != swaps[i - 1].token_out) return std::nullopt;
    if (swaps[i].amount_in > swaps[i - 1].amount_out) return std::nullopt;
  }
  const Swap& first = swaps.front();
  const Swap& last = swaps.back();
  if (last.token_out != first.token_in) return std::nullopt;
  if (first.amount_in > last.amount_out) return std::nullopt;
  if (first.amount_in == 0) return std::nullopt;

  CycleCore c;
  c.swaps.assign(swaps.begin(), swaps.end());
  c.profit_token = first.token_in;
  c.input_amount = first.amount_in;
  const std::uint64_t gain = last.amount_out - first.amount_in;
  c.profit_amount = gain > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())
                        ? std::numeric_limits<std::int64_t>::max()
                        : static_cast<std::int64_t>(gain);
  c.profit_rate_pct = 100.0 * static_cast<double>(c.profit_amount) / static_cast<double>(c.input_amount);
  return c;
}

}  // namespace algomev
