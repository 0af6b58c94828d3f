#pragma once

#include "algomev/analytics/octiles.hpp"

#include <cmath>
#include <numeric>
#include <span>
#include <vector>

namespace algomev {

enum class CorrelationFlag { ok, undefined, insufficient };

inline std::string_view to_string(CorrelationFlag f) {
  switch (f) {
    case CorrelationFlag::ok: return "ok";
    case CorrelationFlag::undefined: return "undefined";
    case CorrelationFlag::insufficient: return "insufficient";
  }
  return "ok";
}

struct CorrelationResult {
  double rho = 0.0;
  std::size_t n = 0;
  CorrelationFlag flag = CorrelationFlag::ok;
};

// 1-based ranks, ties share the mean of the ranks they span.
inline std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double mean = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = mean;
    i = j + 1;
  }
  return r;
}

// Spearman rho as the Pearson correlation of average ranks.
inline CorrelationResult spearman(std::span<const double> x, std::span<const double> y) {
  CorrelationResult out;
  out.n = std::min(x.size(), y.size());
  if (out.n < 2) {
    out.flag = CorrelationFlag::insufficient;
    return out;
  }
  const auto rx = average_ranks(x.first(out.n));
  const auto ry = average_ranks(y.first(out.n));
  const double mean = (static_cast<double>(out.n) + 1.0) / 2.0;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < out.n; ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  if (sxx == 0 || syy == 0) {
    out.flag = CorrelationFlag::undefined;
    return out;
  }
  out.rho = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  return out;
}

// Octile index against USD profit; arbs without a USD value are skipped.
inline CorrelationResult position_profit_correlation(std::span<const ArbCycle> arbs) {
  std::vector<double> oct, usd;
  for (const auto& a : arbs) {
    if (!a.profit_usd) continue;
    oct.push_back(octile_of(a.block_position, a.block_len));
    usd.push_back(*a.profit_usd);
  }
  return spearman(oct, usd);
}

}  // namespace algomev
