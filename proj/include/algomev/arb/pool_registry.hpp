#pragma once

#include "algomev/chain/address.hpp"
#include "algomev/util/csv.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace algomev {

struct PoolEntry {
  std::string pool_id;   // address, or numeric application id
  std::string platform;
  std::string pair;
  std::string address;   // account that holds the pool's reserves
};

class PoolRegistryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Known DEX pools. Transfers are matched by account address; numeric app
// ids resolve to their application escrow account.
class PoolRegistry {
 public:
  void add(std::string pool_id, std::string platform = "", std::string pair = "") {
    PoolEntry e{std::move(pool_id), std::move(platform), std::move(pair), {}};
    const bool numeric = !e.pool_id.empty() &&
                         std::all_of(e.pool_id.begin(), e.pool_id.end(), [](unsigned char c) { return std::isdigit(c); });
    if (numeric)
      e.address = address::application_address(std::stoull(e.pool_id));
    else if (!e.pool_id.empty())
      e.address = e.pool_id;
    else
      throw PoolRegistryError("empty pool_id");
    by_address_[e.address] = entries_.size();
    entries_.push_back(std::move(e));
  }

  const PoolEntry* find(const std::string& addr) const {
    auto it = by_address_.find(addr);
    return it == by_address_.end() ? nullptr : &entries_[it->second];
  }

  bool contains(const std::string& addr) const { return by_address_.count(addr) != 0; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const std::vector<PoolEntry>& entries() const { return entries_; }

  // CSV columns: pool_id,platform,pair
  static PoolRegistry from_csv(const csv::Table& t) {
    PoolRegistry r;
    const auto c_id = t.column("pool_id");
    const auto c_pl = t.column("platform");
    const auto c_pa = t.column("pair");
    for (const auto& row : t.rows) r.add(row[c_id], row[c_pl], row[c_pa]);
    return r;
  }

  static PoolRegistry from_file(const std::string& path) { return from_csv(csv::read_file(path)); }

 private:
  std::vector<PoolEntry> entries_;
  std::unordered_map<std::string, std::size_t> by_address_;
};

}  // namespace algomev
