#pragma once

#include "algomev/chain/assets.hpp"
#include "algomev/util/csv.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace algomev {

class MissingPrice : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Daily USD prices keyed by (UTC date "YYYY-MM-DD", asset id).
class PriceTable {
 public:
  void set(const std::string& date, AssetId asset, double usd) {
    if (!(usd > 0.0) || !std::isfinite(usd))
      throw std::invalid_argument("price for asset " + std::to_string(asset.value) + " on " + date +
                                  " must be positive");
    rows_[{date, asset.value}] = usd;
  }

  std::optional<double> get(const std::string& date, AssetId asset) const {
    auto it = rows_.find({date, asset.value});
    if (it == rows_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t size() const { return rows_.size(); }

  // CSV columns: date,asset_id,usd_price
  static PriceTable from_csv(const csv::Table& t) {
    PriceTable p;
    const auto c_d = t.column("date");
    const auto c_a = t.column("asset_id");
    const auto c_p = t.column("usd_price");
    for (const auto& r : t.rows) p.set(r[c_d], AssetId{std::stoull(r[c_a])}, std::stod(r[c_p]));
    return p;
  }

  static PriceTable from_file(const std::string& path) { return from_csv(csv::read_file(path)); }

 private:
  std::map<std::pair<std::string, std::uint64_t>, double> rows_;
};

inline double to_whole_units(std::uint64_t base_units, int decimals) {
  return static_cast<double>(base_units) / std::pow(10.0, decimals);
}

// USD value of `amount` base units. Stablecoins are pinned at 1 USD; the
// native token and native-pegged tokens use the day's table price (a pegged
// token without its own row falls back to the native row); other assets are
// not converted and yield nullopt.
inline std::optional<double> to_usd(AssetId token, std::uint64_t amount, const std::string& date,
                                    const PriceTable& prices, const AssetRegistry& assets) {
  const AssetInfo info = assets.info(token);
  const double units = to_whole_units(amount, info.decimals);
  switch (info.cls) {
    case AssetClass::stablecoin:
      return units * 1.0;
    case AssetClass::native:
    case AssetClass::native_pegged: {
      auto p = prices.get(date, token);
      if (!p && info.cls == AssetClass::native_pegged) p = prices.get(date, kNativeAsset);
      if (!p)
        throw MissingPrice("no USD price for asset " + std::to_string(token.value) + " on " + date);
      return units * *p;
    }
    case AssetClass::other:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace algomev
