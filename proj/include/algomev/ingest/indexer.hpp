#pragma once

#include "algomev/ingest/source.hpp"

#include <httplib.h>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <deque>
#include <future>
#include <thread>

namespace algomev::ingest {

namespace detail {

using nlohmann::json;

inline std::uint64_t juint(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end() || it->is_null()) return 0;
  if (!it->is_number()) throw ChainFormatError(std::string("indexer field '") + name + "' is not a number");
  return it->get<std::uint64_t>();
}

inline std::optional<std::string> jstr(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw ChainFormatError(std::string("indexer field '") + name + "' is not a string");
  return it->get<std::string>();
}

}  // namespace detail

// Maps one indexer-v2 transaction object onto the chain model. Inner
// transactions carry no id upstream, so they get "<parent>/inner/<i>".
inline Txn normalize_indexer_txn(const nlohmann::json& j, const std::string& fallback_id = "") {
  using detail::jstr;
  using detail::juint;
  if (!j.is_object()) throw ChainFormatError("indexer transaction must be an object");
  Txn t;
  t.txid = jstr(j, "id").value_or(fallback_id);
  t.sender = jstr(j, "sender").value_or("");
  const auto type = jstr(j, "tx-type").value_or("");
  t.fee = juint(j, "fee");
  t.group_id = jstr(j, "group");
  if (type == "pay") {
    t.kind = TxnKind::pay;
    const auto& p = j.at("payment-transaction");
    t.receiver = jstr(p, "receiver");
    t.amount = juint(p, "amount");
  } else if (type == "axfer") {
    t.kind = TxnKind::axfer;
    const auto& a = j.at("asset-transfer-transaction");
    t.receiver = jstr(a, "receiver");
    t.amount = juint(a, "amount");
    t.asset = AssetId{juint(a, "asset-id")};
  } else if (type == "appl") {
    t.kind = TxnKind::appl;
    const auto& a = j.at("application-transaction");
    std::uint64_t id = juint(a, "application-id");
    if (id == 0) id = juint(j, "created-application-index");
    t.app_id = id;
  } else {
    t.kind = TxnKind::other;
  }
  if (auto it = j.find("inner-txns"); it != j.end() && it->is_array()) {
    std::size_t i = 0;
    for (const auto& ij : *it) {
      t.inner.push_back(normalize_indexer_txn(ij, t.txid + "/inner/" + std::to_string(i)));
      ++i;
    }
  }
  return t;
}

// Fetches blocks from an indexer-v2 REST surface:
//   GET /v2/blocks/{round}?header-only=true          -> round, timestamp, proposer
//   GET /v2/transactions?round={r}&limit={n}&next=.. -> paginated transactions
// Up to `parallelism` rounds are fetched concurrently; delivery stays in order.
class IndexerStream final : public BlockStream {
 public:
  explicit IndexerStream(SourceSpec spec) : spec_(std::move(spec)), next_round_(spec_.from_round) {
    while (!spec_.location.empty() && spec_.location.back() == '/') spec_.location.pop_back();
  }

  ~IndexerStream() override {
    for (auto& f : inflight_)
      if (f.valid()) f.wait();
  }

  std::optional<Block> next() override {
    fill();
    if (inflight_.empty()) return std::nullopt;
    auto fut = std::move(inflight_.front());
    inflight_.pop_front();
    Block b = fut.get();
    fill();
    return normalize(std::move(b), spec_.location);
  }

  Block fetch_block(std::uint64_t round) const {
    const auto header = get_json("/v2/blocks/" + std::to_string(round) + "?header-only=true", round);
    Block b;
    try {
      b.round = detail::juint(header, "round");
      b.timestamp = static_cast<std::int64_t>(detail::juint(header, "timestamp"));
      b.proposer = detail::jstr(header, "proposer").value_or("");
    } catch (const ChainFormatError& e) {
      throw IngestError(ErrorKind::malformed_record, url() + " round " + std::to_string(round) + ": " + e.what());
    }
    if (b.round != round)
      throw IngestError(ErrorKind::malformed_record,
                        url() + ": asked for round " + std::to_string(round) + ", got " + std::to_string(b.round));

    std::vector<std::pair<std::uint64_t, Txn>> txns;
    std::string token;
    for (;;) {
      std::string path = "/v2/transactions?round=" + std::to_string(round) + "&limit=" + std::to_string(spec_.page_size);
      if (!token.empty()) path += "&next=" + httplib::detail::encode_query_param(token);
      const auto page = get_json(path, round);
      const auto it = page.find("transactions");
      if (it == page.end() || !it->is_array() || it->empty()) break;
      try {
        for (const auto& tj : *it) {
          const std::uint64_t offset = tj.contains("intra-round-offset") ? detail::juint(tj, "intra-round-offset")
                                                                         : txns.size();
          txns.emplace_back(offset, normalize_indexer_txn(tj));
        }
      } catch (const std::exception& e) {
        throw IngestError(ErrorKind::malformed_record, url() + " round " + std::to_string(round) + ": " + e.what());
      }
      auto nt = page.find("next-token");
      if (nt == page.end() || !nt->is_string() || it->size() < spec_.page_size) break;
      token = nt->get<std::string>();
    }
    std::stable_sort(txns.begin(), txns.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::uint32_t pos = 0;
    for (auto& [_, t] : txns) {
      t.block_position = ++pos;
      b.txns.push_back(std::move(t));
    }
    return b;
  }

 private:
  std::string url() const { return spec_.location; }

  // Retries with exponential backoff; a persistent 404 means the round is missing.
  nlohmann::json get_json(const std::string& path, std::uint64_t round) const {
    httplib::Client cli(spec_.location);
    const auto to = std::chrono::milliseconds(spec_.timeout_ms);
    cli.set_connection_timeout(to);
    cli.set_read_timeout(to);
    httplib::Headers headers;
    if (!spec_.token.empty()) headers.emplace("X-Indexer-API-Token", spec_.token);

    std::string last_error;
    bool not_found = false;
    std::uint32_t delay = spec_.backoff_ms;
    for (std::uint32_t attempt = 0; attempt <= spec_.retries; ++attempt) {
      if (attempt > 0) {
        std::this_thread::sleep_for(std::chrono::milliseconds(delay));
        delay *= 2;
      }
      auto res = cli.Get(path, headers);
      if (!res) {
        not_found = false;
        last_error = httplib::to_string(res.error());
        continue;
      }
      if (res->status == 200) {
        try {
          return nlohmann::json::parse(res->body);
        } catch (const nlohmann::json::parse_error& e) {
          throw IngestError(ErrorKind::malformed_record, url() + path + ": " + e.what());
        }
      }
      not_found = res->status == 404;
      last_error = "HTTP " + std::to_string(res->status);
    }
    if (not_found)
      throw IngestError(ErrorKind::range_gap, url() + ": round " + std::to_string(round) + " not found");
    throw IngestError(ErrorKind::source_unreachable, "indexer " + url() + " unreachable: " + last_error);
  }

  void fill() {
    while (inflight_.size() < std::max<std::uint32_t>(1, spec_.parallelism) && !exhausted_) {
      const std::uint64_t r = next_round_;
      inflight_.push_back(std::async(std::launch::async, [this, r] { return fetch_block(r); }));
      if (next_round_ == spec_.to_round)
        exhausted_ = true;
      else
        ++next_round_;
    }
  }

  SourceSpec spec_;
  std::uint64_t next_round_;
  bool exhausted_ = false;
  std::deque<std::future<Block>> inflight_;
};

// Opens the configured source; blocks come out grouped and validated.
inline std::unique_ptr<BlockStream> load_blocks(const SourceSpec& spec) {
  check_spec(spec);
  if (spec.mode == SourceMode::fixture_file) return std::make_unique<FixtureStream>(spec);
  return std::make_unique<IndexerStream>(spec);
}

inline std::vector<Block> load_all(const SourceSpec& spec) {
  std::vector<Block> out;
  auto s = load_blocks(spec);
  while (auto b = s->next()) out.push_back(std::move(*b));
  return out;
}

}  // namespace algomev::ingest
