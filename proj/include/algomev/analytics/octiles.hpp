#pragma once

#include "algomev/arb/detect.hpp"

#include <array>
#include <span>
#include <stdexcept>

namespace algomev {

class InvalidPosition : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ceil(8 * position / block_len), in 1..8.
inline int octile_of(std::uint64_t position, std::uint64_t block_len) {
  if (position < 1 || position > block_len)
    throw InvalidPosition("position " + std::to_string(position) + " outside block of " + std::to_string(block_len));
  const auto o = static_cast<int>((8 * position + block_len - 1) / block_len);
  return std::clamp(o, 1, 8);
}

struct OctileStats {
  std::array<std::uint64_t, 8> counts{};
  std::array<double, 8> profits_usd{};
  std::uint64_t p1_count = 0;

  std::uint64_t total() const {
    std::uint64_t n = 0;
    for (auto c : counts) n += c;
    return n;
  }
};

inline void add_to(OctileStats& s, const ArbCycle& a) {
  const int o = octile_of(a.block_position, a.block_len);
  s.counts[o - 1]++;
  if (a.profit_usd) s.profits_usd[o - 1] += *a.profit_usd;
  if (a.block_position == 1) s.p1_count++;
}

inline OctileStats octile_distribution(std::span<const ArbCycle> arbs) {
  OctileStats s;
  for (const auto& a : arbs) add_to(s, a);
  return s;
}

}  // namespace algomev
