#pragma once

#include "algomev/arb/detect.hpp"
#include "algomev/util/csv.hpp"
#include "algomev/util/format.hpp"

#include <sstream>

namespace algomev {

inline constexpr const char* kArbsSchema = "arbs/1";

inline const std::vector<std::string>& arbs_header() {
  static const std::vector<std::string> h{
      "round",         "timestamp",     "proposer",        "block_position", "block_len", "id",
      "searcher",      "n_swaps",       "swaps",           "profit_token",   "profit_amount",
      "input_amount",  "profit_rate_pct", "execution",     "fee_paid",       "profit_usd", "usd_status"};
  return h;
}

// Swaps render as "pool:token_in:amount_in:token_out:amount_out" joined by ';'.
inline std::string encode_swaps(const std::vector<Swap>& swaps) {
  std::string s;
  for (const auto& w : swaps) {
    if (!s.empty()) s += ';';
    s += w.pool + ':' + std::to_string(w.token_in.value) + ':' + std::to_string(w.amount_in) + ':' +
         std::to_string(w.token_out.value) + ':' + std::to_string(w.amount_out);
  }
  return s;
}

inline std::vector<Swap> decode_swaps(const std::string& s) {
  std::vector<Swap> out;
  std::stringstream ss(s);
  std::string item;
  std::uint32_t seq = 0;
  while (std::getline(ss, item, ';')) {
    std::vector<std::string> parts;
    std::stringstream is(item);
    std::string p;
    while (std::getline(is, p, ':')) parts.push_back(p);
    if (parts.size() != 5) throw csv::CsvError("bad swap encoding '" + item + "'");
    Swap w;
    w.pool = parts[0];
    w.token_in = AssetId{std::stoull(parts[1])};
    w.amount_in = std::stoull(parts[2]);
    w.token_out = AssetId{std::stoull(parts[3])};
    w.amount_out = std::stoull(parts[4]);
    w.seq = ++seq;
    out.push_back(std::move(w));
  }
  return out;
}

inline std::vector<std::string> arb_row(const ArbCycle& a) {
  return {std::to_string(a.block_round),
          std::to_string(a.block_timestamp),
          a.proposer,
          std::to_string(a.block_position),
          std::to_string(a.block_len),
          a.id,
          a.searcher,
          std::to_string(a.swaps.size()),
          encode_swaps(a.swaps),
          std::to_string(a.profit_token.value),
          std::to_string(a.profit_amount),
          std::to_string(a.input_amount),
          fixed(a.profit_rate_pct, 6),
          std::string(to_string(a.execution)),
          std::to_string(a.fee_paid),
          a.profit_usd ? fixed(*a.profit_usd, 6) : std::string(),
          std::string(to_string(a.usd_status))};
}

inline void write_arbs_header(std::ostream& out) { csv::Writer(out).schema(kArbsSchema).row(arbs_header()); }

inline void write_arb_rows(std::ostream& out, const std::vector<ArbCycle>& arbs) {
  csv::Writer w(out);
  for (const auto& a : arbs) w.row(arb_row(a));
}

inline void write_arbs(std::ostream& out, const std::vector<ArbCycle>& arbs) {
  write_arbs_header(out);
  write_arb_rows(out, arbs);
}

inline std::vector<ArbCycle> arbs_from_csv(const csv::Table& t) {
  std::vector<ArbCycle> out;
  const auto col = [&](const char* n) { return t.column(n); };
  const auto c_round = col("round"), c_ts = col("timestamp"), c_prop = col("proposer"), c_pos = col("block_position"),
             c_len = col("block_len"), c_id = col("id"), c_s = col("searcher"), c_sw = col("swaps"),
             c_tok = col("profit_token"), c_pa = col("profit_amount"), c_in = col("input_amount"),
             c_rate = col("profit_rate_pct"), c_ex = col("execution"), c_fee = col("fee_paid"),
             c_usd = col("profit_usd"), c_st = col("usd_status");
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    ArbCycle a;
    try {
      a.block_round = std::stoull(r[c_round]);
      a.block_timestamp = std::stoll(r[c_ts]);
      a.proposer = r[c_prop];
      a.block_position = static_cast<std::uint32_t>(std::stoul(r[c_pos]));
      a.block_len = static_cast<std::uint32_t>(std::stoul(r[c_len]));
      a.id = r[c_id];
      a.searcher = r[c_s];
      a.swaps = decode_swaps(r[c_sw]);
      a.profit_token = AssetId{std::stoull(r[c_tok])};
      a.profit_amount = std::stoll(r[c_pa]);
      a.input_amount = std::stoull(r[c_in]);
      a.profit_rate_pct = std::stod(r[c_rate]);
      a.execution = r[c_ex] == "atomic-app" ? Execution::atomic_app : Execution::grouped;
      a.fee_paid = std::stoull(r[c_fee]);
      if (!r[c_usd].empty()) a.profit_usd = std::stod(r[c_usd]);
      a.usd_status = r[c_st] == "ok" ? UsdStatus::converted
                     : r[c_st] == "missing-price" ? UsdStatus::missing_price
                                                  : UsdStatus::not_convertible;
    } catch (const std::logic_error& e) {
      throw csv::CsvError("arbs row " + std::to_string(i + 1) + ": bad numeric field (" + e.what() + ")");
    }
    out.push_back(std::move(a));
  }
  return out;
}

inline std::vector<ArbCycle> read_arbs(const std::string& path) { return arbs_from_csv(csv::read_file(path)); }

}  // namespace algomev
