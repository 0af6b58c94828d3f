#pragma once

#include "algomev/analytics/clusters.hpp"
#include "algomev/analytics/correlation.hpp"
#include "algomev/arb/detect.hpp"
#include "algomev/util/format.hpp"

#include <map>
#include <set>
#include <span>

namespace algomev {

struct LeaderRow {
  std::string cluster;
  std::uint64_t arbs = 0;
  std::optional<double> profit_usd;  // absent when no arb converted
  std::map<AssetId, std::int64_t> profit_tokens;
  double median_profit_rate_pct = 0.0;
};

inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

// Per-cluster totals for every cluster with at least one arb, ordered by id.
inline std::vector<LeaderRow> cluster_totals(std::span<const ArbCycle> arbs, const ClusterMap& clusters) {
  std::map<std::string, LeaderRow> rows;
  std::map<std::string, std::vector<double>> rates;
  for (const auto& a : arbs) {
    const auto& c = cluster_of(clusters, a.searcher);
    auto& r = rows[c];
    r.cluster = c;
    r.arbs++;
    if (a.profit_usd) r.profit_usd = r.profit_usd.value_or(0.0) + *a.profit_usd;
    r.profit_tokens[a.profit_token] += a.profit_amount;
    rates[c].push_back(a.profit_rate_pct);
  }
  std::vector<LeaderRow> out;
  for (auto& [c, r] : rows) {
    r.median_profit_rate_pct = median(std::move(rates[c]));
    out.push_back(std::move(r));
  }
  return out;
}

// Union of the top k clusters by arb count and the top k by USD profit,
// listed by count descending then cluster id.
inline std::vector<LeaderRow> top_searchers(std::span<const ArbCycle> arbs, const ClusterMap& clusters,
                                            std::size_t k) {
  auto all = cluster_totals(arbs, clusters);
  std::vector<const LeaderRow*> by_count, by_usd;
  for (const auto& r : all) {
    by_count.push_back(&r);
    if (r.profit_usd) by_usd.push_back(&r);
  }
  std::stable_sort(by_count.begin(), by_count.end(), [](auto a, auto b) { return a->arbs > b->arbs; });
  std::stable_sort(by_usd.begin(), by_usd.end(), [](auto a, auto b) { return *a->profit_usd > *b->profit_usd; });
  std::set<std::string> keep;
  for (std::size_t i = 0; i < k && i < by_count.size(); ++i) keep.insert(by_count[i]->cluster);
  for (std::size_t i = 0; i < k && i < by_usd.size(); ++i) keep.insert(by_usd[i]->cluster);
  std::vector<LeaderRow> out;
  for (const auto* r : by_count)
    if (keep.count(r->cluster)) out.push_back(*r);
  return out;
}

inline std::string encode_tokens(const std::map<AssetId, std::int64_t>& t) {
  std::string s;
  for (const auto& [asset, amount] : t) {
    if (!s.empty()) s += ';';
    s += std::to_string(asset.value) + ":" + std::to_string(amount);
  }
  return s;
}

inline void write_leaderboard(std::ostream& out, const std::vector<LeaderRow>& rows) {
  csv::Writer w(out);
  w.schema("leaderboard/1")
      .row({"cluster", "arbs", "profit_usd", "profit_algo", "profit_tokens", "median_profit_rate_pct"});
  for (const auto& r : rows) {
    const auto native = r.profit_tokens.find(kNativeAsset);
    const std::string algo =
        native == r.profit_tokens.end()
            ? ""
            : fixed(static_cast<double>(native->second) / static_cast<double>(kMicroAlgosPerAlgo), 6);
    w.row({r.cluster, std::to_string(r.arbs), r.profit_usd ? fixed(*r.profit_usd, 2) : "", algo,
           encode_tokens(r.profit_tokens), fixed(r.median_profit_rate_pct, 2)});
  }
}

inline void write_octiles(std::ostream& out, const OctileStats& s) {
  csv::Writer w(out);
  w.schema("octiles/1").row({"octile", "count", "profit_usd"});
  for (int i = 0; i < 8; ++i) w.row({std::to_string(i + 1), std::to_string(s.counts[i]), fixed(s.profits_usd[i], 2)});
  w.row({"P1", std::to_string(s.p1_count), ""});
}

struct ClusterCorrelation {
  std::string cluster;
  CorrelationResult result;
};

// One row per cluster; rho is rounded here and only here.
inline void write_correlations(std::ostream& out, const std::vector<ClusterCorrelation>& rows) {
  csv::Writer w(out);
  w.schema("correlations/1").row({"cluster", "rho", "n", "flag"});
  for (const auto& r : rows)
    w.row({r.cluster, fixed(r.result.rho, 2), std::to_string(r.result.n), std::string(to_string(r.result.flag))});
}

inline std::vector<ClusterCorrelation> correlations_by_cluster(std::span<const ArbCycle> arbs,
                                                               const ClusterMap& clusters) {
  std::map<std::string, std::vector<ArbCycle>> by;
  for (const auto& a : arbs) by[cluster_of(clusters, a.searcher)].push_back(a);
  std::vector<ClusterCorrelation> out;
  for (const auto& [c, v] : by) out.push_back({c, position_profit_correlation(v)});
  return out;
}

}  // namespace algomev
