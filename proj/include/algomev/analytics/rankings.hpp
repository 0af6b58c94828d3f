#pragma once

#include "algomev/analytics/clusters.hpp"
#include "algomev/arb/detect.hpp"
#include "algomev/util/time.hpp"

#include <map>
#include <span>

namespace algomev {

inline constexpr std::size_t kRankingDepth = 5;
inline constexpr std::size_t kDefaultMinProposerArbs = 50;

enum class DeviationType { absent, rank_swap, rank_shift };

inline std::string_view to_string(DeviationType d) {
  switch (d) {
    case DeviationType::absent: return "absent";
    case DeviationType::rank_swap: return "rank-swap";
    case DeviationType::rank_shift: return "rank-shift";
  }
  return "absent";
}

struct Deviation {
  std::string month;  // YYYY-MM
  std::string proposer;
  std::size_t rank = 0;  // 1-based rank in the proposer's list
  std::string cluster;
  DeviationType type = DeviationType::absent;

  bool operator==(const Deviation&) const = default;
};

struct ProposerRanking {
  std::string proposer;
  std::uint64_t arbs = 0;
  std::vector<std::string> top;
};

struct MonthRanking {
  std::string month;
  std::vector<std::string> aggregate;
  std::vector<ProposerRanking> proposers;  // only those meeting min_arbs
  std::vector<Deviation> deviations;
};

// Top clusters by count, ties by cluster id ascending.
inline std::vector<std::string> top_by_count(const std::map<std::string, std::uint64_t>& counts, std::size_t k) {
  std::vector<std::pair<std::string, std::uint64_t>> v(counts.begin(), counts.end());
  std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size() && i < k; ++i) out.push_back(v[i].first);
  return out;
}

// Compares a proposer's list with the aggregate. Entries missing from the
// aggregate are "absent"; two entries exchanging places form one "rank-swap"
// row at the better rank; any other misplaced entry is a "rank-shift".
inline std::vector<Deviation> compare_rankings(const std::vector<std::string>& proposer,
                                               const std::vector<std::string>& aggregate) {
  std::vector<Deviation> out;
  auto rank_in = [](const std::vector<std::string>& v, const std::string& c) -> std::optional<std::size_t> {
    auto it = std::find(v.begin(), v.end(), c);
    if (it == v.end()) return std::nullopt;
    return static_cast<std::size_t>(it - v.begin());
  };
  for (std::size_t i = 0; i < proposer.size(); ++i) {
    const auto& c = proposer[i];
    const auto j = rank_in(aggregate, c);
    if (!j) {
      out.push_back({"", "", i + 1, c, DeviationType::absent});
      continue;
    }
    if (*j == i) continue;
    const bool swapped = *j < proposer.size() && i < aggregate.size() && proposer[*j] == aggregate[i];
    if (swapped) {
      if (i < *j) out.push_back({"", "", i + 1, c, DeviationType::rank_swap});
      continue;
    }
    out.push_back({"", "", i + 1, c, DeviationType::rank_shift});
  }
  return out;
}

// Groups arbs by UTC month of their block, ranks clusters per proposer with at
// least `min_arbs` arbs that month and against the month's aggregate.
inline std::vector<MonthRanking> proposer_searcher_rankings(std::span<const ArbCycle> arbs, const ClusterMap& clusters,
                                                            std::size_t min_arbs = kDefaultMinProposerArbs,
                                                            std::size_t depth = kRankingDepth) {
  struct Tally {
    std::map<std::string, std::uint64_t> all;
    std::map<std::string, std::map<std::string, std::uint64_t>> by_proposer;
    std::map<std::string, std::uint64_t> proposer_total;
  };
  std::map<std::string, Tally> months;
  for (const auto& a : arbs) {
    auto& t = months[utc_month(a.block_timestamp)];
    const auto& c = cluster_of(clusters, a.searcher);
    t.all[c]++;
    t.by_proposer[a.proposer][c]++;
    t.proposer_total[a.proposer]++;
  }
  std::vector<MonthRanking> out;
  for (const auto& [month, t] : months) {
    MonthRanking m;
    m.month = month;
    m.aggregate = top_by_count(t.all, depth);
    for (const auto& [proposer, counts] : t.by_proposer) {
      const auto n = t.proposer_total.at(proposer);
      if (n < min_arbs) continue;
      ProposerRanking p{proposer, n, top_by_count(counts, depth)};
      for (auto d : compare_rankings(p.top, m.aggregate)) {
        d.month = month;
        d.proposer = proposer;
        m.deviations.push_back(std::move(d));
      }
      m.proposers.push_back(std::move(p));
    }
    out.push_back(std::move(m));
  }
  return out;
}

inline void write_latency_proxy(std::ostream& out, const std::vector<MonthRanking>& months) {
  csv::Writer w(out);
  w.schema("latency_proxy/1").row({"month", "proposer", "rank", "cluster", "deviation_type"});
  for (const auto& m : months)
    for (const auto& d : m.deviations)
      w.row({d.month, d.proposer, std::to_string(d.rank), d.cluster, std::string(to_string(d.type))});
}

}  // namespace algomev
