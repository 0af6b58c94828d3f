#pragma once

#include "algomev/chain/address.hpp"
#include "algomev/chain/json_io.hpp"
#include "algomev/chain/model.hpp"
#include "algomev/util/csv.hpp"
#include "algomev/util/format.hpp"
#include "algomev/util/rng.hpp"
#include "algomev/util/time.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <tuple>
#include <cmath>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

// Synthetic chain generator with planted arbitrages, BTI runs, funding edges
// and distractors that each break exactly one heuristic.
namespace algomev::fixture {

class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct BtiRunSpec {
  std::uint64_t length = 1;
  std::string kind = "reward";  // reward | airdrop | appcall | arbitrage
};

inline bool valid_bti_kind(std::string_view k) {
  return k == "reward" || k == "airdrop" || k == "appcall" || k == "arbitrage";
}

// "364,45:arbitrage,12:airdrop"; kind defaults to reward.
inline std::vector<BtiRunSpec> parse_bti_runs(std::string_view s) {
  std::vector<BtiRunSpec> out;
  std::size_t start = 0;
  while (start < s.size()) {
    auto end = s.find(',', start);
    if (end == std::string_view::npos) end = s.size();
    const auto item = s.substr(start, end - start);
    start = end + 1;
    if (item.empty()) continue;
    BtiRunSpec r;
    const auto colon = item.find(':');
    const auto num = item.substr(0, colon);
    if (num.empty() || !std::all_of(num.begin(), num.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw InvalidParams("bad BTI run length '" + std::string(num) + "'");
    r.length = std::stoull(std::string(num));
    if (r.length == 0) throw InvalidParams("BTI run length must be >= 1");
    if (colon != std::string_view::npos) r.kind = std::string(item.substr(colon + 1));
    if (!valid_bti_kind(r.kind)) throw InvalidParams("unknown BTI kind '" + r.kind + "'");
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<BtiRunSpec> default_bti_runs() {
  return parse_bti_runs("364,45:airdrop,22:appcall,12,6:arbitrage,4:airdrop,3,2:arbitrage,1,1:appcall,1:arbitrage,1");
}

struct Params {
  std::uint64_t n_blocks = 10000;
  std::uint64_t start_round = 30'000'000;
  double arb_rate = 0.06;         // expected planted arbitrages per ordinary block
  std::optional<std::uint64_t> arb_count;  // exact number of ordinary-block arbitrages; overrides arb_rate
  double distractor_rate = 0.03;  // expected distractor groups per ordinary block
  std::uint64_t bti_distractors = 20;
  std::vector<BtiRunSpec> bti_runs = default_bti_runs();
  std::uint64_t seed = 1;
  std::int64_t start_timestamp = 1'672'531'200;  // 2023-01-01T00:00:00Z
};

struct Artifacts {
  nlohmann::json truth;
  std::string pools_csv;
  std::string assets_csv;
  std::string prices_csv;
  std::string labels_csv;
  std::uint64_t from_round = 0;
  std::uint64_t to_round = 0;
};

namespace detail {

struct Token {
  std::uint64_t id;
  const char* symbol;
  const char* cls;
};

inline const std::vector<Token>& tokens() {
  static const std::vector<Token> t{
      {0, "ALGO", "native"},          {31566704, "USDC", "stablecoin"}, {312769, "USDT", "stablecoin"},
      {465865291, "STBL", "stablecoin"}, {287867876, "OPUL", "other"},  {386192725, "goBTC", "other"},
      {1000001, "PALGO", "native-pegged"},
  };
  return t;
}

enum Tok : std::size_t { ALGO, USDC, USDT, STBL, OPUL, GOBTC, PALGO };

struct Pool {
  std::string pool_id;
  std::string platform;
  std::size_t a, b;
  std::string address;
  std::uint64_t app_id = 0;  // application called for app-style swaps; 0 for logic-sig pools
};

struct Hop {
  std::size_t pool;
  std::size_t tin;
  std::size_t tout;
};

}  // namespace detail

class Generator {
 public:
  explicit Generator(Params p) : p_(std::move(p)), rng_(p_.seed) {
    if (p_.n_blocks < 20) throw InvalidParams("n_blocks must be >= 20");
    if (p_.arb_rate < 0 || p_.arb_rate > 3) throw InvalidParams("arb_rate must lie in [0, 3]");
    if (p_.distractor_rate < 0 || p_.distractor_rate > 3) throw InvalidParams("distractor_rate must lie in [0, 3]");
    std::uint64_t bti_blocks = 0;
    for (const auto& r : p_.bti_runs) bti_blocks += r.length + 2;
    if (bti_blocks + p_.bti_distractors + 10 > p_.n_blocks) throw InvalidParams("BTI runs do not fit in n_blocks");
    if (p_.arb_count && *p_.arb_count > 3 * (p_.n_blocks - bti_blocks - p_.bti_distractors - 5))
      throw InvalidParams("arb_count does not fit in the ordinary blocks");
  }

  Artifacts run(std::ostream& chain) {
    setup_actors();
    place_btis();
    Artifacts out;
    out.from_round = p_.start_round;
    out.to_round = p_.start_round + p_.n_blocks - 1;
    for (std::uint64_t i = 0; i < p_.n_blocks; ++i) {
      const std::uint64_t round = p_.start_round + i;
      chain << block_to_jsonl(make_block(round)) << '\n';
    }
    out.truth = truth();
    out.pools_csv = pools_csv();
    out.assets_csv = assets_csv();
    out.prices_csv = prices_csv();
    out.labels_csv = labels_csv();
    return out;
  }

 private:
  using Hop = detail::Hop;

  // ---- identities --------------------------------------------------------

  std::string new_address() {
    address::PublicKey k;
    for (auto& b : k) b = static_cast<std::uint8_t>(rng_.below(256));
    return address::encode(k);
  }

  std::string new_id() {
    std::array<std::uint8_t, 32> k;
    for (auto& b : k) b = static_cast<std::uint8_t>(rng_.below(256));
    return address::detail::base32_nopad(k);
  }

  void setup_actors() {
    using namespace detail;
    auto app_pool = [&](std::uint64_t app, const char* platform, std::size_t a, std::size_t b) {
      pools_.push_back({std::to_string(app), platform, a, b, address::application_address(app), app});
    };
    auto sig_pool = [&](std::size_t a, std::size_t b) {
      auto addr = new_address();
      pools_.push_back({addr, "Tinyman AMM v2", a, b, addr, 0});
    };
    app_pool(605929989, "AlgoFi", ALGO, USDC);   // 0
    app_pool(620995314, "Pact", ALGO, USDC);     // 1
    app_pool(607645439, "AlgoFi", ALGO, STBL);   // 2
    app_pool(658337046, "AlgoFi", USDC, STBL);   // 3
    app_pool(635146381, "Pact", ALGO, OPUL);     // 4
    sig_pool(ALGO, OPUL);                        // 5
    app_pool(661744776, "Pact", ALGO, GOBTC);    // 6
    sig_pool(ALGO, GOBTC);                       // 7
    sig_pool(ALGO, USDT);                        // 8
    sig_pool(USDC, USDT);                        // 9
    app_pool(818179346, "AlgoFi", ALGO, PALGO);  // 10
    sig_pool(ALGO, PALGO);                       // 11

    templates_ = {
        {{0, ALGO, USDC}, {1, USDC, ALGO}},
        {{1, ALGO, USDC}, {0, USDC, ALGO}},
        {{1, ALGO, USDC}, {3, USDC, STBL}, {2, STBL, ALGO}},
        {{4, ALGO, OPUL}, {5, OPUL, ALGO}},
        {{6, ALGO, GOBTC}, {7, GOBTC, ALGO}},
        {{8, ALGO, USDT}, {9, USDT, USDC}, {0, USDC, ALGO}},
        {{8, ALGO, USDT}, {9, USDT, USDC}, {3, USDC, STBL}, {2, STBL, ALGO}},
        {{11, ALGO, PALGO}, {10, PALGO, ALGO}},
        {{0, USDC, ALGO}, {1, ALGO, USDC}},
        {{5, OPUL, ALGO}, {4, ALGO, OPUL}},
        {{10, PALGO, ALGO}, {11, ALGO, PALGO}},
    };
    // Mostly ALGO-profit cycles.
    template_weights_ = {20, 20, 12, 10, 6, 6, 3, 4, 6, 3, 3};

    for (int i = 0; i < 24; ++i) searchers_.push_back(new_address());
    for (int i = 0; i < 12; ++i) proposers_.push_back(new_address());
    for (int i = 0; i < 400; ++i) users_.push_back(new_address());
    router_app_ = 1'100'000'001;
    oracle_app_ = 1'200'000'001;

    // Funding: s0 has its own funder, s0 funds s1, one funder backs s2..s13,
    // the rest have individual funders.
    const auto lead = new_address();
    funding_.push_back({new_address(), searchers_[0]});
    funding_.push_back({searchers_[0], searchers_[1]});
    for (int i = 2; i < 14; ++i) funding_.push_back({lead, searchers_[i]});
    for (int i = 14; i < 24; ++i) funding_.push_back({new_address(), searchers_[i]});
  }

  // ---- BTI placement -----------------------------------------------------

  struct PlannedBti {
    std::size_t run;
    std::string sender;
    std::string kind;
    bool distractor = false;
    std::string violates;
  };

  void place_btis() {
    const std::uint64_t lo = p_.start_round + 5;  // funding rounds stay ordinary
    const std::uint64_t hi = p_.start_round + p_.n_blocks - 1;
    std::set<std::uint64_t> taken;
    auto free_span = [&](std::uint64_t s, std::uint64_t len) {
      for (std::uint64_t r = s - 1; r <= s + len; ++r)
        if (taken.count(r)) return false;
      return s + len - 1 <= hi;
    };
    for (std::size_t i = 0; i < p_.bti_runs.size(); ++i) {
      const auto& spec = p_.bti_runs[i];
      std::uint64_t start = 0;
      for (int attempt = 0; attempt < 100000 && !start; ++attempt) {
        const auto s = lo + 1 + rng_.below(hi - lo - spec.length);
        if (free_span(s, spec.length)) start = s;
      }
      if (!start) throw InvalidParams("could not place BTI run of length " + std::to_string(spec.length));
      std::string sender = spec.kind == "arbitrage" ? searchers_[rng_.below(searchers_.size())] : new_address();
      run_senders_.push_back(sender);
      run_starts_.push_back(start);
      for (std::uint64_t r = start; r < start + spec.length; ++r) {
        taken.insert(r);
        bti_plan_[r] = PlannedBti{i, sender, spec.kind};
      }
      if (spec.kind != "arbitrage") labels_.emplace(sender, label_for(spec.kind));
    }
    for (std::uint64_t k = 0; k < p_.bti_distractors; ++k) {
      std::uint64_t r = 0;
      for (int attempt = 0; attempt < 100000 && !r; ++attempt) {
        const auto s = lo + 1 + rng_.below(hi - lo - 1);
        if (free_span(s, 1)) r = s;
      }
      if (!r) throw InvalidParams("could not place BTI distractor");
      taken.insert(r);
      bti_plan_[r] = PlannedBti{0, new_address(), "reward", true, k % 2 ? "share" : "size"};
    }
    if (p_.arb_count) {
      for (std::uint64_t k = 0; k < *p_.arb_count; ++k) {
        std::uint64_t r = 0;
        while (!r) {
          const auto s = lo + rng_.below(hi - lo + 1);
          if (!bti_plan_.count(s) && arbs_per_round_[s] < 3) r = s;
        }
        ++arbs_per_round_[r];
      }
    }
  }

  static std::string label_for(const std::string& kind) {
    if (kind == "reward") return "reward-payment";
    if (kind == "airdrop") return "asset-distribution";
    if (kind == "appcall") return "oracle-update";
    return kind;
  }

  // ---- transactions ------------------------------------------------------

  Txn transfer(const std::string& from, const std::string& to, std::size_t token, std::uint64_t amount,
               std::uint64_t fee = kMinFee) {
    Txn t;
    t.txid = new_id();
    t.sender = from;
    t.receiver = to;
    t.amount = amount;
    t.fee = fee;
    const auto id = detail::tokens()[token].id;
    t.kind = id == 0 ? TxnKind::pay : TxnKind::axfer;
    if (id != 0) t.asset = AssetId{id};
    return t;
  }

  Txn app_call(const std::string& from, std::uint64_t app, std::uint64_t fee = kMinFee) {
    Txn t;
    t.txid = new_id();
    t.sender = from;
    t.kind = TxnKind::appl;
    t.app_id = app;
    t.fee = fee;
    return t;
  }

  struct Leg {
    Hop hop;
    std::uint64_t in;
    std::uint64_t out;
  };

  // Amounts satisfying the requested outcome. profit < 0 requests a losing
  // cycle; overspend makes one intermediate input exceed the previous output.
  std::vector<Leg> amounts(const std::vector<Hop>& hops, bool losing, bool overspend) {
    std::vector<Leg> legs;
    const std::uint64_t first_in = 1'000'000 + rng_.below(500'000'000);
    std::uint64_t in = first_in;
    for (std::size_t i = 0; i < hops.size(); ++i) {
      Leg l{hops[i], in, 0};
      if (i + 1 == hops.size()) {
        const std::uint64_t profit = rng_.below(20) == 0 ? 0 : 1 + rng_.below(first_in / 50 + 1);
        l.out = losing ? first_in - 1 - rng_.below(first_in / 100 + 1) : first_in + profit;
      } else {
        l.out = 1000 + rng_.below(2'000'000'000);
      }
      legs.push_back(l);
      if (i + 1 < hops.size()) {
        // Next input never exceeds this output unless asked to.
        const std::uint64_t slack = rng_.below(3) == 0 ? rng_.below(l.out / 20 + 1) : 0;
        in = overspend && i == 0 ? l.out + 1 + rng_.below(1000) : l.out - slack;
      }
    }
    return legs;
  }

  enum class Style { atomic, grouped };

  struct Unit {
    std::vector<Txn> txns;
    std::string id;  // group id, or txid of a lone call
    bool grouped;
    Style style;
  };

  // Builds the transactions for a swap sequence issued by `who`.
  Unit swap_unit(const std::string& who, const std::vector<Leg>& legs, Style style, bool fixed_shape = false) {
    Unit u;
    u.style = style;
    const auto& pools = pools_;
    if (style == Style::atomic) {
      Txn call = app_call(who, router_app_, kMinFee * (1 + 2 * legs.size()));
      for (const auto& l : legs) {
        const auto& pool = pools[l.hop.pool];
        Txn in = transfer(who, pool.address, l.hop.tin, l.in, 0);
        Txn out = transfer(pool.address, who, l.hop.tout, l.out, 0);
        in.txid = call.txid + "/inner/" + std::to_string(call.inner.size());
        call.inner.push_back(std::move(in));
        out.txid = call.txid + "/inner/" + std::to_string(call.inner.size());
        call.inner.push_back(std::move(out));
      }
      u.id = call.txid;
      u.txns.push_back(std::move(call));
      u.grouped = false;
      return u;
    }
    const std::string gid = new_id();
    for (const auto& l : legs) {
      const auto& pool = pools[l.hop.pool];
      u.txns.push_back(transfer(who, pool.address, l.hop.tin, l.in));
      const bool via_app = !fixed_shape && pool.app_id && rng_.below(2) == 0;
      if (via_app) {
        Txn call = app_call(who, pool.app_id, 2 * kMinFee);
        Txn out = transfer(pool.address, who, l.hop.tout, l.out, 0);
        out.txid = call.txid + "/inner/0";
        call.inner.push_back(std::move(out));
        u.txns.push_back(std::move(call));
      } else {
        u.txns.push_back(transfer(pool.address, who, l.hop.tout, l.out));
      }
    }
    for (auto& t : u.txns) t.group_id = gid;
    u.id = gid;
    u.grouped = true;
    return u;
  }

  std::size_t pick_template() {
    std::uint64_t total = 0;
    for (auto w : template_weights_) total += w;
    auto x = rng_.below(total);
    for (std::size_t i = 0; i < template_weights_.size(); ++i) {
      if (x < template_weights_[i]) return i;
      x -= template_weights_[i];
    }
    return 0;
  }

  std::string pick_searcher() {
    // Zipf-like activity.
    std::uint64_t total = 0;
    std::vector<std::uint64_t> w;
    for (std::size_t i = 0; i < searchers_.size(); ++i) {
      w.push_back(240 / (i + 1));
      total += w.back();
    }
    auto x = rng_.below(total);
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (x < w[i]) return searchers_[i];
      x -= w[i];
    }
    return searchers_.front();
  }

  struct PlantedArb {
    std::uint64_t round;
    std::string id;
    std::string searcher;
    std::uint64_t profit_token;
    std::int64_t profit_amount;
    std::size_t n_swaps;
    std::string execution;
    std::uint32_t position = 0;
  };

  Unit arb_unit(const std::string& who, std::size_t tmpl, Style style, std::uint64_t round, bool fixed_shape = false) {
    const auto& hops = templates_[tmpl];
    auto legs = amounts(hops, false, false);
    Unit u = swap_unit(who, legs, style, fixed_shape);
    PlantedArb a;
    a.round = round;
    a.id = u.id;
    a.searcher = who;
    a.profit_token = detail::tokens()[hops.front().tin].id;
    a.profit_amount = static_cast<std::int64_t>(legs.back().out - legs.front().in);
    a.n_swaps = hops.size();
    const bool atomic = style == Style::atomic;
    a.execution = atomic ? "atomic-app" : "grouped";
    pending_arbs_.push_back(a);
    return u;
  }

  Unit distractor_unit(std::uint64_t round) {
    using namespace detail;
    const auto who = pick_searcher();
    const auto style = rng_.below(2) ? Style::atomic : Style::grouped;
    std::string violates;
    Unit u;
    switch (rng_.below(4)) {
      case 0: {  // one swap only
        violates = "H1";
        u = swap_unit(who, amounts({{0, ALGO, USDC}}, false, false), style);
        break;
      }
      case 1: {  // chain broken: USDC out, STBL in
        violates = "H2";
        auto legs = amounts({{1, ALGO, USDC}, {2, STBL, ALGO}}, false, false);
        u = swap_unit(who, legs, style);
        break;
      }
      case 2: {  // losing cycle
        violates = "H3";
        u = swap_unit(who, amounts(templates_[pick_template()], true, false), style);
        break;
      }
      default: {  // spends more than the previous hop returned
        violates = "H3";
        u = swap_unit(who, amounts(templates_[pick_template()], false, true), style);
        break;
      }
    }
    distractors_.push_back({{"round", round}, {"id", u.id}, {"violates", violates}, {"detector", "arbitrage"}});
    return u;
  }

  Txn background() {
    const auto& from = users_[rng_.below(users_.size())];
    auto to = users_[rng_.below(users_.size())];
    switch (rng_.below(4)) {
      case 0:
      case 1: return transfer(from, to, detail::ALGO, 1 + rng_.below(50'000'000));
      case 2: return transfer(from, to, detail::USDC, 1 + rng_.below(10'000'000));
      default: return app_call(from, 1'300'000'000 + rng_.below(50));
    }
  }

  // Background from senders not used elsewhere in the block, so no second
  // pattern can compete with a planted one.
  std::vector<Txn> distinct_background(std::size_t n) {
    std::vector<Txn> out;
    for (std::size_t i = 0; i < n; ++i) {
      Txn t = background();
      t.sender = new_address();
      out.push_back(std::move(t));
    }
    return out;
  }

  // ---- blocks ------------------------------------------------------------

  std::uint64_t draw_count(double rate) {
    // Sum of three Bernoulli(rate / 3) draws.
    std::uint64_t k = 0;
    const auto threshold = static_cast<std::uint64_t>(rate / 3.0 * 1'000'000.0);
    for (int i = 0; i < 3; ++i) k += rng_.below(1'000'000) < threshold;
    return k;
  }

  std::vector<Txn> shuffle_units(std::vector<Unit> units, std::vector<Txn> loose) {
    // Interleave units (kept contiguous) with loose txns at random.
    std::vector<std::pair<bool, std::size_t>> slots;
    for (std::size_t i = 0; i < units.size(); ++i) slots.push_back({true, i});
    for (std::size_t i = 0; i < loose.size(); ++i) slots.push_back({false, i});
    for (std::size_t i = slots.size(); i > 1; --i) std::swap(slots[i - 1], slots[rng_.below(i)]);
    std::vector<Txn> out;
    for (const auto& [is_unit, i] : slots) {
      if (is_unit) {
        unit_starts_.push_back({units[i].id, static_cast<std::uint32_t>(out.size() + 1)});
        for (auto& t : units[i].txns) out.push_back(std::move(t));
      } else {
        out.push_back(std::move(loose[i]));
      }
    }
    return out;
  }

  Block make_block(std::uint64_t round) {
    Block b;
    b.round = round;
    b.timestamp = p_.start_timestamp + static_cast<std::int64_t>((round - p_.start_round) * 34 / 10);
    b.proposer = proposers_[rng_.below(proposers_.size())];
    unit_starts_.clear();
    pending_arbs_.clear();

    if (round < p_.start_round + 3) {
      b.txns = funding_block(round);
    } else if (auto it = bti_plan_.find(round); it != bti_plan_.end()) {
      b.txns = bti_block(round, it->second);
    } else {
      const auto n_arbs = p_.arb_count ? arbs_per_round_[round] : draw_count(p_.arb_rate);
      const auto n_dis = draw_count(p_.distractor_rate);
      std::vector<Unit> units;
      std::size_t used = 0;
      for (std::uint64_t i = 0; i < n_arbs; ++i) {
        units.push_back(arb_unit(pick_searcher(), pick_template(), rng_.below(2) ? Style::atomic : Style::grouped, round));
        used += units.back().txns.size();
      }
      for (std::uint64_t i = 0; i < n_dis; ++i) {
        units.push_back(distractor_unit(round));
        used += units.back().txns.size();
      }
      const std::size_t room = used >= 40 ? 0 : 40 - used;
      const std::size_t n_bg = std::min<std::size_t>(room, rng_.below(31));
      std::vector<Txn> loose;
      for (std::size_t i = 0; i < n_bg; ++i) loose.push_back(background());
      b.txns = shuffle_units(std::move(units), std::move(loose));
    }
    std::uint32_t pos = 0;
    for (auto& t : b.txns) t.block_position = ++pos;
    for (auto& a : pending_arbs_) {
      for (const auto& [id, p] : unit_starts_)
        if (id == a.id) a.position = p;
      arbs_.push_back(a);
    }
    return b;
  }

  std::vector<Txn> funding_block(std::uint64_t round) {
    std::vector<Txn> out;
    const std::size_t k = round - p_.start_round;
    // A dust transfer that must not count as funding.
    if (k == 0) out.push_back(transfer(users_[0], searchers_[5], detail::ALGO, 999'999));
    for (std::size_t i = k; i < funding_.size(); i += 3) {
      const auto& [funder, fundee] = funding_[i];
      out.push_back(transfer(funder, fundee, detail::ALGO, 1'000'000 * (1 + rng_.below(100))));
      funding_rounds_.push_back({funder, fundee, round});
    }
    for (std::size_t i = 0; i < 5; ++i) out.push_back(background());
    return out;
  }

  std::vector<Txn> bti_block(std::uint64_t round, const PlannedBti& plan) {
    std::vector<Unit> units;
    std::vector<Txn> loose;
    std::uint64_t len = 0;
    std::uint64_t dominant = 0;
    if (plan.distractor) {
      if (plan.violates == "size") {
        len = 20 + rng_.below(21);  // <= 40
        dominant = len;
      } else {
        len = 50 + rng_.below(101);
        dominant = (4 * len + 4) / 5 - 1;  // one short of 80%
        while (5 * dominant >= 4 * len) --dominant;
      }
      for (std::uint64_t i = 0; i < dominant; ++i)
        loose.push_back(transfer(plan.sender, users_[rng_.below(users_.size())], detail::ALGO, 1000 + rng_.below(100000)));
      for (auto& t : distinct_background(len - dominant)) loose.push_back(std::move(t));
      distractors_.push_back({{"round", round}, {"id", plan.sender}, {"violates", plan.violates}, {"detector", "bti"}});
      return shuffle_units({}, std::move(loose));
    }
    if (plan.kind == "arbitrage") {
      // Fixed-shape two-swap groups so every unit shares one pattern.
      const std::uint64_t n_units = 11 + rng_.below(30);
      const std::uint64_t others = rng_.below(n_units + 1);
      for (std::uint64_t i = 0; i < n_units; ++i)
        units.push_back(arb_unit(plan.sender, 0, Style::grouped, round, true));
      dominant = 4 * n_units;
      len = dominant + others;
      loose = distinct_background(others);
    } else {
      len = 41 + rng_.below(120);
      const std::uint64_t floor80 = (4 * len + 4) / 5;
      dominant = (len % 5 == 0 && rng_.below(4) == 0) ? floor80 : floor80 + rng_.below(len - floor80 + 1);
      for (std::uint64_t i = 0; i < dominant; ++i) {
        const auto& to = users_[rng_.below(users_.size())];
        if (plan.kind == "reward")
          loose.push_back(transfer(plan.sender, to, detail::ALGO, 1000 + rng_.below(100000)));
        else if (plan.kind == "airdrop")
          loose.push_back(transfer(plan.sender, to, detail::OPUL, 1 + rng_.below(1000)));
        else
          loose.push_back(app_call(plan.sender, oracle_app_));
      }
      for (auto& t : distinct_background(len - dominant)) loose.push_back(std::move(t));
    }
    bti_events_.push_back({{"round", round},
                           {"sender", plan.sender},
                           {"run", plan.run},
                           {"kind", plan.kind},
                           {"len", len},
                           {"count", dominant},
                           {"label", plan.kind == "arbitrage" ? "arbitrage-block" : label_for(plan.kind)}});
    return shuffle_units(std::move(units), std::move(loose));
  }

  // ---- outputs -----------------------------------------------------------

  nlohmann::json truth() const {
    using nlohmann::json;
    json t;
    t["params"] = {{"n_blocks", p_.n_blocks},   {"start_round", p_.start_round}, {"arb_rate", p_.arb_rate},
                   {"arb_count", p_.arb_count ? nlohmann::json(*p_.arb_count) : nlohmann::json(nullptr)},
                   {"distractor_rate", p_.distractor_rate}, {"seed", p_.seed}, {"bti_distractors", p_.bti_distractors}};
    t["rounds"] = {p_.start_round, p_.start_round + p_.n_blocks - 1};
    json arbs = json::array();
    for (const auto& a : arbs_)
      arbs.push_back({{"round", a.round},
                      {"id", a.id},
                      {"searcher", a.searcher},
                      {"position", a.position},
                      {"profit_token", a.profit_token},
                      {"profit_amount", a.profit_amount},
                      {"n_swaps", a.n_swaps},
                      {"execution", a.execution}});
    t["arbs"] = arbs;
    t["bti_events"] = bti_events_;
    json runs = json::array();
    for (std::size_t i = 0; i < p_.bti_runs.size(); ++i)
      runs.push_back({{"sender", run_senders_[i]},
                      {"kind", p_.bti_runs[i].kind},
                      {"start_round", run_starts_[i]},
                      {"end_round", run_starts_[i] + p_.bti_runs[i].length - 1},
                      {"length", p_.bti_runs[i].length}});
    t["bti_runs"] = runs;
    t["distractors"] = distractors_;
    json funding = json::array();
    for (const auto& [f, e, r] : funding_rounds_) funding.push_back({{"funder", f}, {"fundee", e}, {"round", r}});
    t["funding"] = funding;
    return t;
  }

  std::string pools_csv() const {
    std::ostringstream s;
    csv::Writer w(s);
    w.row({"pool_id", "platform", "pair"});
    for (const auto& p : pools_)
      w.row({p.pool_id, p.platform,
             std::string(detail::tokens()[p.a].symbol) + "/" + detail::tokens()[p.b].symbol});
    return s.str();
  }

  static std::string assets_csv() {
    std::ostringstream s;
    csv::Writer w(s);
    w.row({"asset_id", "symbol", "class", "decimals"});
    for (const auto& t : detail::tokens())
      w.row({std::to_string(t.id), t.symbol, t.cls, t.id == 386192725 ? "8" : "6"});
    return s.str();
  }

  std::string prices_csv() {
    std::ostringstream s;
    csv::Writer w(s);
    w.row({"date", "asset_id", "usd_price"});
    const auto last = p_.start_timestamp + static_cast<std::int64_t>((p_.n_blocks - 1) * 34 / 10);
    for (std::int64_t day = p_.start_timestamp - p_.start_timestamp % 86400; day <= last; day += 86400) {
      const double price = 0.1 + static_cast<double>(rng_.below(3000)) / 10000.0;
      w.row({utc_date(day), "0", fixed(price, 4)});
    }
    return s.str();
  }

  std::string labels_csv() const {
    std::ostringstream s;
    csv::Writer w(s);
    w.row({"sender", "purpose"});
    for (const auto& [sender, label] : labels_) w.row({sender, label});
    return s.str();
  }

  Params p_;
  Rng rng_;
  std::vector<detail::Pool> pools_;
  std::vector<std::vector<Hop>> templates_;
  std::vector<std::uint64_t> template_weights_;
  std::vector<std::string> searchers_, proposers_, users_;
  std::uint64_t router_app_ = 0, oracle_app_ = 0;
  std::vector<std::pair<std::string, std::string>> funding_;
  std::vector<std::tuple<std::string, std::string, std::uint64_t>> funding_rounds_;
  std::map<std::uint64_t, PlannedBti> bti_plan_;
  std::map<std::uint64_t, std::uint64_t> arbs_per_round_;
  std::vector<std::string> run_senders_;
  std::vector<std::uint64_t> run_starts_;
  std::map<std::string, std::string> labels_;
  std::vector<PlantedArb> arbs_, pending_arbs_;
  std::vector<std::pair<std::string, std::uint32_t>> unit_starts_;
  nlohmann::json bti_events_ = nlohmann::json::array();
  nlohmann::json distractors_ = nlohmann::json::array();
};

inline Artifacts generate(const Params& p, std::ostream& chain) { return Generator(p).run(chain); }

}  // namespace algomev::fixture
