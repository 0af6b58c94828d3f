#pragma once

#include "algomev/chain/model.hpp"
#include "algomev/util/csv.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace algomev {

enum class AssetClass { native, stablecoin, native_pegged, other };

inline std::string_view to_string(AssetClass c) {
  switch (c) {
    case AssetClass::native: return "native";
    case AssetClass::stablecoin: return "stablecoin";
    case AssetClass::native_pegged: return "native-pegged";
    case AssetClass::other: return "other";
  }
  return "other";
}

inline std::optional<AssetClass> parse_asset_class(std::string_view s) {
  if (s == "native") return AssetClass::native;
  if (s == "stablecoin") return AssetClass::stablecoin;
  if (s == "native-pegged") return AssetClass::native_pegged;
  if (s == "other") return AssetClass::other;
  return std::nullopt;
}

struct AssetInfo {
  AssetId id;
  std::string symbol;
  AssetClass cls = AssetClass::other;
  int decimals = 6;
};

class AssetConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Asset classes come from configuration; anything unlisted is class `other`.
class AssetRegistry {
 public:
  AssetRegistry() { assets_[0] = AssetInfo{kNativeAsset, "ALGO", AssetClass::native, 6}; }

  void add(AssetInfo info) {
    if (info.cls == AssetClass::native && !info.id.is_native())
      throw AssetConfigError("asset " + std::to_string(info.id.value) + ": class native requires id 0");
    if (info.id.is_native() && info.cls != AssetClass::native)
      throw AssetConfigError("asset 0 is the native token and must have class native");
    if (info.decimals < 0 || info.decimals > 19)
      throw AssetConfigError("asset " + std::to_string(info.id.value) + ": decimals out of range");
    assets_[info.id.value] = std::move(info);
  }

  AssetInfo info(AssetId id) const {
    if (auto it = assets_.find(id.value); it != assets_.end()) return it->second;
    return AssetInfo{id, "", AssetClass::other, 6};
  }

  AssetClass class_of(AssetId id) const { return info(id).cls; }
  std::size_t size() const { return assets_.size(); }

  // CSV columns: asset_id,symbol,class[,decimals]
  static AssetRegistry from_csv(const csv::Table& t) {
    AssetRegistry reg;
    const auto c_id = t.column("asset_id");
    const auto c_sym = t.column("symbol");
    const auto c_cls = t.column("class");
    const bool has_dec = t.has_column("decimals");
    for (const auto& r : t.rows) {
      AssetInfo a;
      try {
        a.id = AssetId{std::stoull(r[c_id])};
      } catch (const std::exception&) {
        throw AssetConfigError("bad asset_id '" + r[c_id] + "'");
      }
      a.symbol = r[c_sym];
      auto cls = parse_asset_class(r[c_cls]);
      if (!cls) throw AssetConfigError("unknown asset class '" + r[c_cls] + "'");
      a.cls = *cls;
      if (has_dec && !r[t.column("decimals")].empty()) a.decimals = std::stoi(r[t.column("decimals")]);
      reg.add(std::move(a));
    }
    return reg;
  }

  static AssetRegistry from_file(const std::string& path) { return from_csv(csv::read_file(path)); }

 private:
  std::map<std::uint64_t, AssetInfo> assets_;
};

}  // namespace algomev
