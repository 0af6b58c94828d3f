#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace algomev {

// Asset identifier; 0 is the native token (ALGO).
struct AssetId {
  std::uint64_t value = 0;

  constexpr bool is_native() const { return value == 0; }
  constexpr auto operator<=>(const AssetId&) const = default;
};

inline constexpr AssetId kNativeAsset{0};

// Protocol constants.
inline constexpr std::uint64_t kMinFee = 1000;          // microALGO per top-level txn
inline constexpr std::size_t kMaxInnerTxns = 256;       // per application call
inline constexpr std::uint64_t kMicroAlgosPerAlgo = 1'000'000;

enum class TxnKind { pay, axfer, appl, other };

inline std::string_view to_string(TxnKind k) {
  switch (k) {
    case TxnKind::pay: return "pay";
    case TxnKind::axfer: return "axfer";
    case TxnKind::appl: return "appl";
    case TxnKind::other: return "other";
  }
  return "other";
}

inline std::optional<TxnKind> parse_txn_kind(std::string_view s) {
  if (s == "pay") return TxnKind::pay;
  if (s == "axfer") return TxnKind::axfer;
  if (s == "appl") return TxnKind::appl;
  if (s == "other") return TxnKind::other;
  return std::nullopt;
}

struct Txn {
  std::string txid;
  std::string sender;
  TxnKind kind = TxnKind::pay;
  std::optional<std::string> receiver;
  std::optional<AssetId> asset;       // required for axfer; pay is implicitly native
  std::uint64_t amount = 0;           // base units
  std::optional<std::uint64_t> app_id;
  std::optional<std::string> group_id;
  std::uint64_t fee = 0;              // microALGO
  std::vector<Txn> inner;             // only for appl
  std::uint32_t block_position = 0;   // 1-based for top-level, 0 for inner

  bool is_transfer() const { return kind == TxnKind::pay || kind == TxnKind::axfer; }

  // Asset moved by a transfer; pay always moves the native token.
  AssetId transfer_asset() const {
    return kind == TxnKind::pay ? kNativeAsset : asset.value_or(kNativeAsset);
  }

  bool operator==(const Txn&) const = default;
};

// Fee including every nested inner transaction.
inline std::uint64_t fee_with_inner(const Txn& t) {
  std::uint64_t f = t.fee;
  for (const auto& in : t.inner) f += fee_with_inner(in);
  return f;
}

struct TxnGroup {
  std::string group_id;       // equals the txid for singleton groups
  bool synthetic = false;     // true when the txn carried no group id
  std::vector<Txn> txns;
  std::uint64_t total_fee = 0;
  std::uint32_t block_position = 0;

  const std::string& economic_sender() const { return txns.front().sender; }
  bool operator==(const TxnGroup&) const = default;
};

struct Block {
  std::uint64_t round = 0;
  std::int64_t timestamp = 0;   // unix seconds
  std::string proposer;
  std::vector<Txn> txns;
  std::vector<TxnGroup> groups;  // filled by assemble_groups

  std::size_t size() const { return txns.size(); }
  bool operator==(const Block&) const = default;
};

}  // namespace algomev

template <>
struct std::hash<algomev::AssetId> {
  std::size_t operator()(const algomev::AssetId& a) const noexcept { return std::hash<std::uint64_t>{}(a.value); }
};
