#pragma once

#include "algomev/chain/model.hpp"
#include "algomev/util/csv.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace algomev {

struct FundingEdge {
  std::string funder;
  std::string fundee;
  std::uint64_t round = 0;

  bool operator==(const FundingEdge&) const = default;
};

struct SearcherCluster {
  std::string cluster_id;            // smallest member
  std::vector<std::string> members;  // sorted
  std::optional<std::string> funder;

  bool operator==(const SearcherCluster&) const = default;
};

class UnionFind {
 public:
  std::size_t id(const std::string& key) {
    auto [it, fresh] = index_.try_emplace(key, parent_.size());
    if (fresh) {
      parent_.push_back(parent_.size());
      keys_.push_back(key);
    }
    return it->second;
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(const std::string& a, const std::string& b) {
    const auto ra = find(id(a));
    const auto rb = find(id(b));
    if (ra != rb) parent_[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::size_t size() const { return parent_.size(); }
  const std::string& key(std::size_t i) const { return keys_[i]; }

 private:
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::size_t> parent_;
  std::vector<std::string> keys_;
};

// Union-find over funding edges whose fundee is a searcher. Output is sorted
// by cluster id and independent of edge order. A cluster's funder is the
// address funding the most of its members (ties to the smaller address).
inline std::vector<SearcherCluster> cluster_by_funder(const std::set<std::string>& searchers,
                                                      const std::vector<FundingEdge>& edges) {
  UnionFind uf;
  for (const auto& s : searchers) uf.id(s);
  std::vector<const FundingEdge*> used;
  for (const auto& e : edges) {
    if (!searchers.count(e.fundee) || e.funder == e.fundee) continue;
    uf.unite(e.funder, e.fundee);
    used.push_back(&e);
  }
  std::map<std::size_t, std::set<std::string>> groups;
  for (std::size_t i = 0; i < uf.size(); ++i) groups[uf.find(i)].insert(uf.key(i));

  std::map<std::size_t, std::map<std::string, std::size_t>> funded;
  for (const auto* e : used) funded[uf.find(uf.id(e->funder))][e->funder]++;

  std::vector<SearcherCluster> out;
  for (auto& [root, members] : groups) {
    SearcherCluster c;
    c.members.assign(members.begin(), members.end());
    c.cluster_id = c.members.front();
    if (auto it = funded.find(root); it != funded.end()) {
      const auto best = std::max_element(it->second.begin(), it->second.end(),
                                         [](const auto& a, const auto& b) { return a.second < b.second; });
      c.funder = best->first;
    }
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.cluster_id < b.cluster_id; });
  return out;
}

using ClusterMap = std::unordered_map<std::string, std::string>;  // address -> cluster id

inline ClusterMap cluster_map(const std::vector<SearcherCluster>& clusters) {
  ClusterMap m;
  for (const auto& c : clusters)
    for (const auto& a : c.members) m[a] = c.cluster_id;
  return m;
}

inline const std::string& cluster_of(const ClusterMap& m, const std::string& addr) {
  auto it = m.find(addr);
  return it == m.end() ? addr : it->second;
}

// Streams blocks in round order and keeps, per address, the earliest inbound
// native payment of at least `min_amount` microALGO (self-payments ignored).
// finish() keeps only those strictly preceding the address's first arbitrage.
class FundingTracker {
 public:
  explicit FundingTracker(std::uint64_t min_amount = kMicroAlgosPerAlgo) : min_amount_(min_amount) {}

  void observe(const Block& block) {
    for (const auto& t : block.txns) walk(t, block.round, t.block_position);
  }

  void arbitrage(const std::string& searcher, std::uint64_t round, std::uint32_t position) {
    first_arb_.try_emplace(searcher, Mark{round, position});
  }

  std::vector<FundingEdge> finish() const {
    std::vector<FundingEdge> out;
    for (const auto& [fundee, arb] : first_arb_) {
      auto it = first_in_.find(fundee);
      if (it == first_in_.end()) continue;
      const auto& [mark, funder] = it->second;
      if (std::tie(mark.round, mark.position) < std::tie(arb.round, arb.position))
        out.push_back({funder, fundee, mark.round});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.fundee < b.fundee; });
    return out;
  }

 private:
  struct Mark {
    std::uint64_t round;
    std::uint32_t position;
  };

  void walk(const Txn& t, std::uint64_t round, std::uint32_t position) {
    if (t.kind == TxnKind::pay && t.receiver && *t.receiver != t.sender && t.amount >= min_amount_)
      first_in_.try_emplace(*t.receiver, Mark{round, position}, t.sender);
    for (const auto& in : t.inner) walk(in, round, position);
  }

  std::uint64_t min_amount_;
  std::unordered_map<std::string, std::pair<Mark, std::string>> first_in_;
  std::unordered_map<std::string, Mark> first_arb_;
};

inline constexpr const char* kFundingSchema = "funding/1";

inline void write_funding(std::ostream& out, const std::vector<FundingEdge>& edges) {
  csv::Writer w(out);
  w.schema(kFundingSchema).row({"funder", "fundee", "round"});
  for (const auto& e : edges) w.row({e.funder, e.fundee, std::to_string(e.round)});
}

inline std::vector<FundingEdge> funding_from_csv(const csv::Table& t) {
  std::vector<FundingEdge> out;
  const auto f = t.column("funder");
  const auto e = t.column("fundee");
  const auto r = t.column("round");
  for (const auto& row : t.rows) out.push_back({row[f], row[e], std::stoull(row[r])});
  return out;
}

}  // namespace algomev
