#include "algomev/arb/csv_io.hpp"
#include "algomev/arb/detect.hpp"
#include "algomev/ingest/groups.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

namespace algomev {
namespace {

using namespace algomev::testing;

constexpr std::uint64_t ALGO = 0;
constexpr std::uint64_t TOKX = 77;
constexpr std::uint64_t TOKY = 88;
constexpr std::uint64_t USDC = 31566704;
constexpr std::uint64_t OPUL = 287867876;

PoolRegistry pools() {
  PoolRegistry r;
  r.add("P1");
  r.add("P2");
  r.add("P3");
  return r;
}

AssetRegistry assets() {
  AssetRegistry a;
  a.add({AssetId{USDC}, "USDC", AssetClass::stablecoin, 6});
  a.add({AssetId{OPUL}, "OPUL", AssetClass::other, 10});
  a.add({AssetId{TOKX}, "TOKX", AssetClass::other, 6});
  a.add({AssetId{TOKY}, "gALGO", AssetClass::native_pegged, 6});
  return a;
}

Txn xfer(std::string id, std::string from, std::string to, std::uint64_t asset, std::uint64_t amount,
         std::uint64_t fee = kMinFee) {
  return asset == ALGO ? pay(std::move(id), std::move(from), std::move(to), amount, fee)
                       : axfer(std::move(id), std::move(from), std::move(to), asset, amount, fee);
}

TxnGroup group_of(std::vector<Txn> txns) {
  for (auto& t : txns) t.group_id = "G";
  auto b = assemble_groups(make_block(1, std::move(txns)));
  return b.groups.at(0);
}

Swap sw(std::uint64_t tin, std::uint64_t ain, std::uint64_t tout, std::uint64_t aout) {
  Swap s;
  s.pool = "P";
  s.token_in = AssetId{tin};
  s.amount_in = ain;
  s.token_out = AssetId{tout};
  s.amount_out = aout;
  return s;
}

// ---- extract_swaps -------------------------------------------------------

TEST(ExtractSwaps, PayThenAxferIsOneSwap) {
  auto g = group_of({xfer("a", "S", "P1", ALGO, 100), xfer("b", "P1", "S", TOKX, 50)});
  auto swaps = extract_swaps(g, pools());
  ASSERT_EQ(swaps.size(), 1u);
  EXPECT_EQ(swaps[0].pool, "P1");
  EXPECT_EQ(swaps[0].token_in, AssetId{ALGO});
  EXPECT_EQ(swaps[0].amount_in, 100u);
  EXPECT_EQ(swaps[0].token_out, AssetId{TOKX});
  EXPECT_EQ(swaps[0].amount_out, 50u);
  EXPECT_EQ(swaps[0].seq, 1u);
}

TEST(ExtractSwaps, PaymentToNonPoolYieldsNothing) {
  auto b = assemble_groups(make_block(1, {pay("a", "S", "FRIEND", 5)}));
  EXPECT_TRUE(extract_swaps(b.groups[0], pools()).empty());
}

TEST(ExtractSwaps, InnerTransactionsWalkedDepthFirst) {
  auto call = appl("c", "S", 999,
                   {xfer("i0", "S", "P1", ALGO, 100), xfer("i1", "P1", "S", TOKX, 60), xfer("i2", "S", "P2", TOKX, 60),
                    xfer("i3", "P2", "S", ALGO, 103)});
  auto b = assemble_groups(make_block(1, {call}));
  auto swaps = extract_swaps(b.groups[0], pools());
  ASSERT_EQ(swaps.size(), 2u);
  EXPECT_EQ(swaps[0].pool, "P1");
  EXPECT_EQ(swaps[1].pool, "P2");
  EXPECT_EQ(swaps[1].seq, 2u);
  EXPECT_TRUE(swaps[0].via_inner);
}

TEST(ExtractSwaps, SecondInboundBeforeReturnReplacesFirst) {
  auto g = group_of({xfer("a", "S", "P1", ALGO, 100), xfer("b", "S", "P1", ALGO, 40), xfer("c", "P1", "S", TOKX, 20)});
  auto swaps = extract_swaps(g, pools());
  ASSERT_EQ(swaps.size(), 1u);
  EXPECT_EQ(swaps[0].amount_in, 40u);
}

TEST(ExtractSwaps, OtherSendersAreIgnored) {
  auto g = group_of({xfer("a", "S", "P1", ALGO, 100), xfer("b", "Q", "P2", ALGO, 10), xfer("c", "P2", "Q", TOKX, 5),
                     xfer("d", "P1", "S", TOKX, 50)});
  auto swaps = extract_swaps(g, pools());
  ASSERT_EQ(swaps.size(), 1u);
  EXPECT_EQ(swaps[0].pool, "P1");
}

TEST(ExtractSwaps, NumericPoolIdResolvesToEscrow) {
  PoolRegistry r;
  r.add("1002541853", "Tinyman", "ALGO/USDC");
  const auto escrow = address::application_address(1002541853);
  auto g = group_of({xfer("a", "S", escrow, ALGO, 100), xfer("b", escrow, "S", USDC, 20)});
  auto swaps = extract_swaps(g, r);
  ASSERT_EQ(swaps.size(), 1u);
  EXPECT_EQ(swaps[0].pool, "1002541853");
}

// ---- detect_cycle --------------------------------------------------------

TEST(DetectCycle, ProfitableTwoSwapCycle) {
  std::vector<Swap> s{sw(ALGO, 100, TOKX, 60), sw(TOKX, 60, ALGO, 103)};
  auto c = detect_cycle(s);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->profit_token, AssetId{ALGO});
  EXPECT_EQ(c->profit_amount, 3);
  EXPECT_EQ(c->input_amount, 100u);
  EXPECT_EQ(fixed(c->profit_rate_pct, 2), "3.00");
}

TEST(DetectCycle, SingleSwapFailsH1) { EXPECT_FALSE(detect_cycle(std::vector<Swap>{sw(ALGO, 100, TOKX, 60)})); }

TEST(DetectCycle, LosingCycleFailsH3) {
  EXPECT_FALSE(detect_cycle(std::vector<Swap>{sw(ALGO, 100, TOKX, 60), sw(TOKX, 60, ALGO, 99)}));
}

TEST(DetectCycle, BrokenChainFailsH2) {
  EXPECT_FALSE(detect_cycle(std::vector<Swap>{sw(ALGO, 100, TOKX, 60), sw(TOKY, 60, ALGO, 130)}));
}

TEST(DetectCycle, BreakEvenIsReported) {
  auto c = detect_cycle(std::vector<Swap>{sw(ALGO, 100, TOKX, 60), sw(TOKX, 60, ALGO, 100)});
  ASSERT_TRUE(c);
  EXPECT_EQ(c->profit_amount, 0);
}

TEST(DetectCycle, IntermediateOverspendFailsH3) {
  // Swap 2 consumes more TOKX than swap 1 produced.
  EXPECT_FALSE(detect_cycle(std::vector<Swap>{sw(ALGO, 100, TOKX, 60), sw(TOKX, 61, ALGO, 130)}));
}

// Literal H1-H3 checker, independent of the detector.
bool oracle_h1(const std::vector<Swap>& s) { return s.size() > 1; }
bool oracle_h2(const std::vector<Swap>& s) {
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    if (!(s[i].token_out == s[i + 1].token_in)) return false;
  return s.back().token_out == s.front().token_in;
}
bool oracle_h3(const std::vector<Swap>& s) {
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    if (!(s[i + 1].amount_in <= s[i].amount_out)) return false;
  return s.front().amount_in <= s.back().amount_out;
}

TEST(DetectCycle, AgreesWithLiteralOracleOnRandomLists) {
  std::mt19937_64 rng(20230615);
  const std::uint64_t tokens[] = {ALGO, TOKX, TOKY, USDC};
  int positives = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    std::vector<Swap> s;
    std::uint64_t tok = tokens[rng() % 4];
    for (int i = 0; i < n; ++i) {
      // Bias toward chained, closing lists so both outcomes are exercised.
      std::uint64_t tin = (rng() % 8 == 0) ? tokens[rng() % 4] : tok;
      std::uint64_t tout = tokens[rng() % 4];
      if (i == n - 1 && rng() % 3 != 0) tout = s.empty() ? tout : s.front().token_in.value;
      if (tout == tin) tout = tokens[(std::find(std::begin(tokens), std::end(tokens), tin) - tokens + 1) % 4];
      const std::uint64_t prev_out = s.empty() ? 1000 : s.back().amount_out;
      const std::uint64_t ain = 1 + rng() % (prev_out + 2);
      s.push_back(sw(tin, ain, tout, 1 + rng() % 1200));
      tok = tout;
    }
    const bool expect = oracle_h1(s) && oracle_h2(s) && oracle_h3(s);
    auto got = detect_cycle(s);
    ASSERT_EQ(got.has_value(), expect) << "trial " << trial;
    if (got) {
      ++positives;
      EXPECT_EQ(got->profit_amount,
                static_cast<std::int64_t>(s.back().amount_out) - static_cast<std::int64_t>(s.front().amount_in));
      EXPECT_GE(got->profit_amount, 0);
      EXPECT_GE(got->profit_rate_pct, 0.0);
      EXPECT_EQ(got->swaps.front().token_in, got->profit_token);
      EXPECT_EQ(got->swaps.back().token_out, got->profit_token);
    }
  }
  EXPECT_GT(positives, 100);
}

// ---- to_usd --------------------------------------------------------------

TEST(ToUsd, StablecoinIsOneDollar) {
  PriceTable p;
  auto v = to_usd(AssetId{USDC}, 5'000'000, "2023-01-01", p, assets());
  ASSERT_TRUE(v);
  EXPECT_EQ(fixed(*v, 2), "5.00");
}

TEST(ToUsd, OtherClassIsNotConverted) {
  PriceTable p;
  p.set("2023-01-01", AssetId{ALGO}, 0.2);
  EXPECT_FALSE(to_usd(AssetId{OPUL}, 123, "2023-01-01", p, assets()));
}

TEST(ToUsd, NativeUsesDailyPrice) {
  PriceTable p;
  p.set("2023-01-01", AssetId{ALGO}, 0.15);
  auto v = to_usd(AssetId{ALGO}, 10'000'000, "2023-01-01", p, assets());
  EXPECT_EQ(fixed(*v, 2), "1.50");
}

TEST(ToUsd, MissingRowThrows) {
  PriceTable p;
  p.set("2023-01-01", AssetId{ALGO}, 0.15);
  EXPECT_THROW(to_usd(AssetId{ALGO}, 1, "2023-01-02", p, assets()), MissingPrice);
}

TEST(ToUsd, PeggedFallsBackToNativeRow) {
  PriceTable p;
  p.set("2023-01-01", AssetId{ALGO}, 0.25);
  EXPECT_EQ(fixed(*to_usd(AssetId{TOKY}, 4'000'000, "2023-01-01", p, assets()), 2), "1.00");
}

// ---- classify_execution --------------------------------------------------

TEST(ClassifyExecution, SingleApplWithInnerSwapsIsAtomic) {
  auto call = appl("c", "S", 999,
                   {xfer("i0", "S", "P1", ALGO, 100), xfer("i1", "P1", "S", TOKX, 60), xfer("i2", "S", "P2", TOKX, 60),
                    xfer("i3", "P2", "S", ALGO, 103)});
  auto b = assemble_groups(make_block(1, {call}));
  auto swaps = extract_swaps(b.groups[0], pools());
  auto c = detect_cycle(swaps);
  ASSERT_TRUE(c);
  EXPECT_EQ(classify_execution(b.groups[0], *c), Execution::atomic_app);
}

TEST(ClassifyExecution, PayAxferPairsAreGrouped) {
  auto g = group_of({xfer("a", "S", "P1", ALGO, 100), xfer("b", "P1", "S", TOKX, 60), xfer("c", "S", "P2", TOKX, 60),
                     xfer("d", "P2", "S", ALGO, 103)});
  auto c = detect_cycle(extract_swaps(g, pools()));
  ASSERT_TRUE(c);
  EXPECT_EQ(classify_execution(g, *c), Execution::grouped);
}

TEST(ClassifyExecution, SiblingTransferBreaksAtomicity) {
  auto call = appl("c", "S", 999, {xfer("i0", "S", "P1", ALGO, 100), xfer("i1", "P1", "S", TOKX, 60)});
  auto g = group_of({call, xfer("s", "S", "P2", TOKX, 60), xfer("r", "P2", "S", ALGO, 103)});
  auto c = detect_cycle(extract_swaps(g, pools()));
  ASSERT_TRUE(c);
  EXPECT_EQ(classify_execution(g, *c), Execution::grouped);
}

// ---- detect_block_arbs ---------------------------------------------------

Block planted_block() {
  std::vector<Txn> txns;
  for (int i = 0; i < 40; ++i) {
    if (i == 7 || i == 30) {
      const std::string gid = "ARB" + std::to_string(i);
      txns.push_back(grouped(xfer(gid + "a", "S", "P1", ALGO, 10'000'000), gid));
      txns.push_back(grouped(xfer(gid + "b", "P1", "S", USDC, 2'000'000), gid));
      txns.push_back(grouped(xfer(gid + "c", "S", "P2", USDC, 2'000'000), gid));
      txns.push_back(grouped(xfer(gid + "d", "P2", "S", ALGO, 10'500'000), gid));
      i += 3;
    } else {
      txns.push_back(pay("n" + std::to_string(i), "U" + std::to_string(i), "V", 1));
    }
  }
  return assemble_groups(make_block(500, txns, 1'672'531'200));  // 2023-01-01
}

TEST(DetectBlockArbs, FindsPlantedCyclesWithPositions) {
  PriceTable p;
  p.set("2023-01-01", AssetId{ALGO}, 0.2);
  auto arbs = detect_block_arbs(planted_block(), pools(), p, assets());
  ASSERT_EQ(arbs.size(), 2u);
  EXPECT_EQ(arbs[0].block_position, 8u);
  EXPECT_EQ(arbs[1].block_position, 31u);
  for (const auto& a : arbs) {
    EXPECT_EQ(a.block_len, 40u);
    EXPECT_EQ(a.searcher, "S");
    EXPECT_EQ(a.profit_amount, 500'000);
    EXPECT_EQ(a.fee_paid, 4000u);
    EXPECT_EQ(a.usd_status, UsdStatus::converted);
    EXPECT_EQ(fixed(*a.profit_usd, 2), "0.10");
  }
}

TEST(DetectBlockArbs, EmptyBlock) {
  EXPECT_TRUE(detect_block_arbs(assemble_groups(make_block(1, {})), pools(), {}, assets()).empty());
}

TEST(DetectBlockArbs, OnlyGroupFailsH3) {
  auto b = assemble_groups(make_block(
      1, {grouped(xfer("a", "S", "P1", ALGO, 100), "G"), grouped(xfer("b", "P1", "S", TOKX, 60), "G"),
          grouped(xfer("c", "S", "P2", TOKX, 60), "G"), grouped(xfer("d", "P2", "S", ALGO, 99), "G")}));
  EXPECT_TRUE(detect_block_arbs(b, pools(), {}, assets()).empty());
}

TEST(DetectBlockArbs, MissingPriceKeepsCycle) {
  auto arbs = detect_block_arbs(planted_block(), pools(), {}, assets());
  ASSERT_EQ(arbs.size(), 2u);
  EXPECT_EQ(arbs[0].usd_status, UsdStatus::missing_price);
  EXPECT_FALSE(arbs[0].profit_usd);
}

TEST(DetectBlockArbs, DeterministicAndCsvRoundTrip) {
  PriceTable p;
  p.set("2023-01-01", AssetId{ALGO}, 0.2);
  auto a = detect_block_arbs(planted_block(), pools(), p, assets());
  auto b = detect_block_arbs(planted_block(), pools(), p, assets());
  std::ostringstream x, y;
  write_arbs(x, a);
  write_arbs(y, b);
  EXPECT_EQ(x.str(), y.str());
  std::istringstream in(x.str());
  auto back = arbs_from_csv(csv::parse(in));
  ASSERT_EQ(back.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(back[i].id, a[i].id);
    EXPECT_EQ(back[i].profit_amount, a[i].profit_amount);
    EXPECT_EQ(back[i].swaps.size(), a[i].swaps.size());
    EXPECT_EQ(back[i].swaps[1].amount_out, a[i].swaps[1].amount_out);
    EXPECT_EQ(back[i].execution, a[i].execution);
    EXPECT_NEAR(*back[i].profit_usd, *a[i].profit_usd, 1e-6);
  }
}

}  // namespace
}  // namespace algomev
