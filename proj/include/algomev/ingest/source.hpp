#pragma once

#include "algomev/chain/json_io.hpp"
#include "algomev/chain/model.hpp"
#include "algomev/chain/validate.hpp"
#include "algomev/ingest/groups.hpp"

#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace algomev::ingest {

enum class SourceMode { fixture_file, http_indexer };

struct SourceSpec {
  SourceMode mode = SourceMode::fixture_file;
  std::string location;  // fixture path or indexer base URL
  std::uint64_t from_round = 1;
  std::uint64_t to_round = 1;  // inclusive
  std::uint32_t page_size = 1000;
  std::uint32_t timeout_ms = 10'000;
  std::string token;         // passed through as X-Indexer-API-Token
  std::uint32_t retries = 4;
  std::uint32_t backoff_ms = 100;
  std::uint32_t parallelism = 4;  // in-flight round fetches (http mode)
};

enum class ErrorKind { invalid_spec, source_unreachable, malformed_record, range_gap };

class IngestError : public std::runtime_error {
 public:
  IngestError(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline void check_spec(const SourceSpec& spec) {
  if (spec.from_round > spec.to_round)
    throw IngestError(ErrorKind::invalid_spec, "round range start " + std::to_string(spec.from_round) +
                                                   " exceeds end " + std::to_string(spec.to_round));
  if (spec.page_size == 0) throw IngestError(ErrorKind::invalid_spec, "page_size must be >= 1");
  if (spec.location.empty()) throw IngestError(ErrorKind::invalid_spec, "source location is empty");
}

// Groups the block and rejects it unless every chain-model invariant holds.
inline Block normalize(Block b, const std::string& context) {
  b = assemble_groups(std::move(b));
  auto violations = validate_block(b);
  if (!violations.empty()) {
    const auto& v = violations.front();
    throw IngestError(ErrorKind::malformed_record, context + ": round " + std::to_string(b.round) + ": " +
                                                       std::string(to_string(v.rule)) + " at " + v.field +
                                                       " (" + v.detail + ")");
  }
  return b;
}

// Ordered stream of grouped, validated blocks in ascending round order.
class BlockStream {
 public:
  virtual ~BlockStream() = default;
  virtual std::optional<Block> next() = 0;
};

class FixtureStream final : public BlockStream {
 public:
  explicit FixtureStream(const SourceSpec& spec) : spec_(spec) {
    std::ifstream in(spec.location);
    if (!in) throw IngestError(ErrorKind::source_unreachable, "cannot open fixture " + spec.location);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      const std::string ctx = spec.location + ":" + std::to_string(lineno);
      Block b;
      try {
        b = block_from_jsonl(line);
      } catch (const ChainFormatError& e) {
        throw IngestError(ErrorKind::malformed_record, ctx + ": " + e.what());
      }
      if (b.round < spec.from_round || b.round > spec.to_round) continue;
      if (blocks_.count(b.round))
        throw IngestError(ErrorKind::malformed_record, ctx + ": duplicate round " + std::to_string(b.round));
      blocks_.emplace(b.round, std::make_pair(std::move(b), ctx));
    }
    for (std::uint64_t r = spec.from_round;; ++r) {
      if (!blocks_.count(r))
        throw IngestError(ErrorKind::range_gap, "fixture " + spec.location + " is missing round " + std::to_string(r));
      if (r == spec.to_round) break;
    }
    next_round_ = spec.from_round;
  }

  std::optional<Block> next() override {
    if (done_) return std::nullopt;
    auto it = blocks_.find(next_round_);
    auto [block, ctx] = std::move(it->second);
    blocks_.erase(it);
    if (next_round_ == spec_.to_round)
      done_ = true;
    else
      ++next_round_;
    return normalize(std::move(block), ctx);
  }

 private:
  SourceSpec spec_;
  std::map<std::uint64_t, std::pair<Block, std::string>> blocks_;
  std::uint64_t next_round_ = 0;
  bool done_ = false;
};

}  // namespace algomev::ingest
