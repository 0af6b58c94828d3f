#pragma once

#include "algomev/chain/model.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace algomev {

class ChainFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

using nlohmann::json;

inline const json* field(const json& obj, const char* name) {
  auto it = obj.find(name);
  if (it == obj.end() || it->is_null()) return nullptr;
  return &*it;
}

inline std::string req_string(const json& obj, const char* name) {
  const json* f = field(obj, name);
  if (!f || !f->is_string()) throw ChainFormatError(std::string("field '") + name + "' must be a string");
  return f->get<std::string>();
}

inline std::optional<std::string> opt_string(const json& obj, const char* name) {
  const json* f = field(obj, name);
  if (!f) return std::nullopt;
  if (!f->is_string()) throw ChainFormatError(std::string("field '") + name + "' must be a string or null");
  return f->get<std::string>();
}

inline std::optional<std::uint64_t> opt_uint(const json& obj, const char* name) {
  const json* f = field(obj, name);
  if (!f) return std::nullopt;
  if (!f->is_number_unsigned() && !(f->is_number_integer() && f->get<std::int64_t>() >= 0))
    throw ChainFormatError(std::string("field '") + name + "' must be a non-negative integer or null");
  return f->get<std::uint64_t>();
}

inline std::uint64_t req_uint(const json& obj, const char* name) {
  auto v = opt_uint(obj, name);
  if (!v) throw ChainFormatError(std::string("missing field '") + name + "'");
  return *v;
}

inline Txn txn_from_json(const json& j, std::uint32_t position) {
  if (!j.is_object()) throw ChainFormatError("txn must be an object");
  Txn t;
  t.txid = req_string(j, "txid");
  t.sender = req_string(j, "sender");
  auto kind = parse_txn_kind(req_string(j, "kind"));
  if (!kind) throw ChainFormatError("txn " + t.txid + ": unknown kind");
  t.kind = *kind;
  t.receiver = opt_string(j, "receiver");
  if (auto a = opt_uint(j, "asset")) t.asset = AssetId{*a};
  t.amount = opt_uint(j, "amount").value_or(0);
  t.app_id = opt_uint(j, "app_id");
  t.group_id = opt_string(j, "group_id");
  t.fee = opt_uint(j, "fee").value_or(0);
  t.block_position = position;
  if (const json* inner = field(j, "inner")) {
    if (!inner->is_array()) throw ChainFormatError("txn " + t.txid + ": inner must be an array");
    for (const auto& ij : *inner) t.inner.push_back(txn_from_json(ij, 0));
  }
  return t;
}

inline json txn_to_json(const Txn& t) {
  json j;
  j["txid"] = t.txid;
  j["sender"] = t.sender;
  j["kind"] = std::string(to_string(t.kind));
  j["receiver"] = t.receiver ? json(*t.receiver) : json(nullptr);
  j["asset"] = t.asset ? json(t.asset->value) : json(nullptr);
  j["amount"] = t.amount;
  j["app_id"] = t.app_id ? json(*t.app_id) : json(nullptr);
  j["group_id"] = t.group_id ? json(*t.group_id) : json(nullptr);
  j["fee"] = t.fee;
  j["inner"] = json::array();
  for (const auto& in : t.inner) j["inner"].push_back(txn_to_json(in));
  return j;
}

}  // namespace detail

// Top-level positions come from array order (1-based); inner txns are unpositioned.
inline Block block_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ChainFormatError("block record must be a JSON object");
  Block b;
  b.round = detail::req_uint(j, "round");
  const auto* ts = detail::field(j, "timestamp");
  if (!ts || !ts->is_number_integer()) throw ChainFormatError("field 'timestamp' must be an integer");
  b.timestamp = ts->get<std::int64_t>();
  b.proposer = detail::opt_string(j, "proposer").value_or("");
  const auto* txns = detail::field(j, "txns");
  if (txns) {
    if (!txns->is_array()) throw ChainFormatError("field 'txns' must be an array");
    std::uint32_t pos = 0;
    for (const auto& tj : *txns) b.txns.push_back(detail::txn_from_json(tj, ++pos));
  }
  return b;
}

inline nlohmann::json block_to_json(const Block& b) {
  nlohmann::json j;
  j["round"] = b.round;
  j["timestamp"] = b.timestamp;
  j["proposer"] = b.proposer;
  j["txns"] = nlohmann::json::array();
  for (const auto& t : b.txns) j["txns"].push_back(detail::txn_to_json(t));
  return j;
}

// One JSONL line; keys are emitted sorted so output is byte-stable.
inline std::string block_to_jsonl(const Block& b) { return block_to_json(b).dump(); }

inline Block block_from_jsonl(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ChainFormatError(std::string("invalid JSON: ") + e.what());
  }
  return block_from_json(j);
}

}  // namespace algomev
