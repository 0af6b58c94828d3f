#include "algomev/analytics/clusters.hpp"
#include "algomev/analytics/correlation.hpp"
#include "algomev/analytics/leaderboard.hpp"
#include "algomev/analytics/octiles.hpp"
#include "algomev/analytics/rankings.hpp"
#include "algomev/ingest/groups.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

namespace algomev {
namespace {

using namespace algomev::testing;

ArbCycle arb(std::string searcher, std::uint32_t pos, std::uint32_t len, std::optional<double> usd = std::nullopt,
             std::string proposer = "PROP", std::int64_t ts = 1'672'531'200) {
  ArbCycle a;
  a.searcher = std::move(searcher);
  a.block_position = pos;
  a.block_len = len;
  a.profit_usd = usd;
  a.usd_status = usd ? UsdStatus::converted : UsdStatus::not_convertible;
  a.proposer = std::move(proposer);
  a.block_timestamp = ts;
  a.profit_amount = 1000;
  a.input_amount = 100000;
  a.profit_rate_pct = 1.0;
  return a;
}

// ---- clustering ----------------------------------------------------------

TEST(ClusterByFunder, SingleEdge) {
  auto c = cluster_by_funder({"J4BJ"}, {{"AACC", "J4BJ", 10}});
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].members, (std::vector<std::string>{"AACC", "J4BJ"}));
  EXPECT_EQ(c[0].cluster_id, "AACC");
  EXPECT_EQ(c[0].funder, "AACC");
}

TEST(ClusterByFunder, OneFunderTwelveSearchers) {
  std::set<std::string> searchers;
  std::vector<FundingEdge> edges;
  for (int i = 0; i < 12; ++i) {
    const auto s = "S" + std::to_string(10 + i);
    searchers.insert(s);
    edges.push_back({"MDC5", s, static_cast<std::uint64_t>(i)});
  }
  auto c = cluster_by_funder(searchers, edges);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].members.size(), 13u);
  EXPECT_EQ(c[0].funder, "MDC5");
}

TEST(ClusterByFunder, UnfundedSearcherIsSingleton) {
  auto c = cluster_by_funder({"LONE"}, {});
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].members, std::vector<std::string>{"LONE"});
  EXPECT_FALSE(c[0].funder);
}

TEST(ClusterByFunder, OrderIndependentAndDisjoint) {
  std::mt19937 rng(11);
  std::set<std::string> searchers;
  std::vector<FundingEdge> edges;
  for (int i = 0; i < 60; ++i) searchers.insert("S" + std::to_string(i));
  for (int i = 0; i < 80; ++i)
    edges.push_back({"F" + std::to_string(rng() % 15), "S" + std::to_string(rng() % 60), 0});
  for (int i = 0; i < 10; ++i) edges.push_back({"S" + std::to_string(rng() % 60), "S" + std::to_string(rng() % 60), 0});
  const auto base = cluster_by_funder(searchers, edges);
  for (int k = 0; k < 10; ++k) {
    std::shuffle(edges.begin(), edges.end(), rng);
    auto got = cluster_by_funder(searchers, edges);
    ASSERT_EQ(got.size(), base.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i].cluster_id, base[i].cluster_id);
      EXPECT_EQ(got[i].members, base[i].members);
    }
  }
  std::set<std::string> seen;
  for (const auto& c : base) {
    EXPECT_EQ(c.cluster_id, c.members.front());
    for (const auto& m : c.members) EXPECT_TRUE(seen.insert(m).second);
  }
  for (const auto& s : searchers) EXPECT_TRUE(seen.count(s));
}

TEST(FundingTracker, EarliestQualifyingPaymentBeforeFirstArb) {
  FundingTracker t;
  t.observe(make_block(1, {pay("a", "DUST", "S", 5), pay("b", "S", "S", 5'000'000)}));
  t.observe(make_block(2, {pay("c", "F1", "S", 2'000'000), pay("d", "F2", "S", 9'000'000),
                           pay("e", "LATE", "T", 1'000'000)}));
  t.arbitrage("S", 3, 1);
  t.arbitrage("T", 2, 1);  // funding at position 3 comes after this arb
  t.arbitrage("U", 2, 1);  // never funded
  auto edges = t.finish();
  ASSERT_EQ(edges.size(), 1u);
  EXPECT_EQ(edges[0], (FundingEdge{"F1", "S", 2}));
}

TEST(FundingTracker, InnerPaymentsCount) {
  FundingTracker t;
  t.observe(make_block(1, {appl("x", "Q", 5, {pay("i", "APP", "S", 3'000'000, 0)})}));
  t.arbitrage("S", 4, 1);
  auto edges = t.finish();
  ASSERT_EQ(edges.size(), 1u);
  EXPECT_EQ(edges[0].funder, "APP");
}

// ---- octiles -------------------------------------------------------------

int oracle_octile(std::uint64_t pos, std::uint64_t len) {
  for (int k = 1; k <= 8; ++k)
    if (static_cast<std::uint64_t>(k) * len >= 8 * pos) return k;
  return 8;
}

TEST(Octile, Examples) {
  EXPECT_EQ(octile_of(1, 40), 1);
  EXPECT_EQ(octile_of(40, 40), 8);
  EXPECT_EQ(octile_of(21, 40), 5);
  EXPECT_EQ(octile_of(1, 1), 8);
  EXPECT_THROW(octile_of(0, 40), InvalidPosition);
  EXPECT_THROW(octile_of(41, 40), InvalidPosition);
}

TEST(Octile, MatchesOracleExhaustively) {
  for (std::uint64_t len = 1; len <= 300; ++len)
    for (std::uint64_t pos = 1; pos <= len; ++pos) ASSERT_EQ(octile_of(pos, len), oracle_octile(pos, len));
}

TEST(OctileDistribution, OnePerOctile) {
  std::vector<ArbCycle> arbs;
  for (std::uint32_t i = 1; i <= 8; ++i) arbs.push_back(arb("S", i * 5, 40, 1.0));
  auto s = octile_distribution(arbs);
  for (auto c : s.counts) EXPECT_EQ(c, 1u);
  EXPECT_EQ(s.p1_count, 0u);
}

TEST(OctileDistribution, FirstPositions) {
  std::vector<ArbCycle> arbs(3, arb("S", 1, 40));
  auto s = octile_distribution(arbs);
  EXPECT_EQ(s.counts[0], 3u);
  EXPECT_EQ(s.p1_count, 3u);
}

TEST(OctileDistribution, UniformPositionsWithinThreeSigma) {
  std::mt19937_64 rng(424242);
  std::vector<ArbCycle> arbs;
  double total_usd = 0;
  for (int i = 0; i < 10000; ++i) {
    // Lengths divisible by 8 make every octile exactly equally likely.
    const std::uint32_t len = 8 * (1 + static_cast<std::uint32_t>(rng() % 30));
    const std::uint32_t pos = 1 + static_cast<std::uint32_t>(rng() % len);
    const double usd = static_cast<double>(rng() % 1000) / 100.0;
    total_usd += usd;
    arbs.push_back(arb("S", pos, len, usd));
  }
  auto s = octile_distribution(arbs);
  const double sigma = std::sqrt(10000 * 0.125 * 0.875);
  double usd_sum = 0;
  for (int o = 0; o < 8; ++o) {
    EXPECT_NEAR(static_cast<double>(s.counts[o]), 1250.0, 3 * sigma);
    usd_sum += s.profits_usd[o];
  }
  EXPECT_EQ(s.total(), 10000u);
  EXPECT_NEAR(usd_sum, total_usd, 0.01);
  EXPECT_LE(s.p1_count, s.counts[0]);
}

// ---- correlation ---------------------------------------------------------

// Rank by counting: rank = #less + (#equal + 1) / 2; rho = Pearson on ranks.
double oracle_spearman(const std::vector<double>& x, const std::vector<double>& y) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<double> r;
    for (double a : v) {
      double less = 0, eq = 0;
      for (double b : v) {
        less += b < a;
        eq += b == a;
      }
      r.push_back(less + (eq + 1) / 2);
    }
    return r;
  };
  auto rx = ranks(x), ry = ranks(y);
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += rx[i] / n, my += ry[i] / n;
  double num = 0, dx = 0, dy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (rx[i] - mx) * (ry[i] - my);
    dx += (rx[i] - mx) * (rx[i] - mx);
    dy += (ry[i] - my) * (ry[i] - my);
  }
  return num / std::sqrt(dx * dy);
}

TEST(Spearman, IncreasingProfitsGiveOne) {
  std::vector<ArbCycle> arbs;
  for (std::uint32_t o = 1; o <= 8; ++o) arbs.push_back(arb("S", o * 5, 40, o * 1.5));
  auto r = position_profit_correlation(arbs);
  EXPECT_EQ(r.flag, CorrelationFlag::ok);
  EXPECT_EQ(fixed(r.rho, 2), "1.00");
  EXPECT_EQ(r.n, 8u);
}

TEST(Spearman, ConstantProfitIsUndefined) {
  std::vector<ArbCycle> arbs;
  for (std::uint32_t o = 1; o <= 8; ++o) arbs.push_back(arb("S", o * 5, 40, 2.0));
  auto r = position_profit_correlation(arbs);
  EXPECT_EQ(r.flag, CorrelationFlag::undefined);
  EXPECT_EQ(r.rho, 0.0);
}

TEST(Spearman, SingleSampleIsInsufficient) {
  std::vector<ArbCycle> arbs{arb("S", 1, 40, 2.0)};
  EXPECT_EQ(position_profit_correlation(arbs).flag, CorrelationFlag::insufficient);
}

TEST(Spearman, KnownValueWithoutTies) {
  // d = (0, 0, 1, -1, 0) -> 1 - 6*2/(5*24) = 0.9
  std::vector<double> x{1, 2, 3, 4, 5}, y{10, 20, 40, 30, 50};
  EXPECT_DOUBLE_EQ(spearman(x, y).rho, 0.9);
}

TEST(Spearman, MatchesOracleAndMonotoneInvariance) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + rng() % 40;
    std::vector<double> x, y, y2;
    for (std::size_t i = 0; i < n; ++i) {
      x.push_back(1 + static_cast<double>(rng() % 8));
      y.push_back(static_cast<double>(rng() % 20));
      y2.push_back(std::exp(y.back() / 3.0) + 7.0);
    }
    auto r = spearman(x, y);
    ASSERT_LE(std::abs(r.rho), 1.0);
    if (r.flag != CorrelationFlag::ok) continue;
    EXPECT_NEAR(r.rho, oracle_spearman(x, y), 1e-9);
    EXPECT_NEAR(spearman(x, y2).rho, r.rho, 1e-9);
  }
}

// ---- proposer rankings ---------------------------------------------------

std::vector<ArbCycle> month_of(const std::map<std::string, std::map<std::string, int>>& counts) {
  std::vector<ArbCycle> arbs;
  for (const auto& [proposer, by] : counts)
    for (const auto& [searcher, n] : by)
      for (int i = 0; i < n; ++i) arbs.push_back(arb(searcher, 1, 10, 1.0, proposer));
  return arbs;
}

TEST(Rankings, SameDistributionNoDeviations) {
  std::map<std::string, int> dist{{"A", 30}, {"B", 25}, {"C", 20}, {"D", 15}, {"E", 10}, {"F", 5}};
  auto m = proposer_searcher_rankings(month_of({{"P1", dist}, {"P2", dist}, {"P3", dist}}), {});
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].month, "2023-01");
  EXPECT_EQ(m[0].proposers.size(), 3u);
  EXPECT_TRUE(m[0].deviations.empty());
  EXPECT_EQ(m[0].aggregate, (std::vector<std::string>{"A", "B", "C", "D", "E"}));
}

TEST(Rankings, AdjacentSwapIsOneDeviation) {
  std::map<std::string, int> dist{{"A", 30}, {"B", 25}, {"C", 20}, {"D", 15}, {"E", 10}};
  auto swapped = dist;
  swapped["B"] = 18;  // B falls below C
  auto m = proposer_searcher_rankings(month_of({{"P1", dist}, {"P2", dist}, {"P3", swapped}}), {});
  ASSERT_EQ(m[0].deviations.size(), 1u);
  EXPECT_EQ(m[0].deviations[0], (Deviation{"2023-01", "P3", 2, "C", DeviationType::rank_swap}));
}

TEST(Rankings, AbsentAndShift) {
  auto d = compare_rankings({"A", "X", "B", "C", "D"}, {"A", "B", "C", "D", "E"});
  ASSERT_EQ(d.size(), 4u);
  EXPECT_EQ(d[0].type, DeviationType::absent);
  EXPECT_EQ(d[0].cluster, "X");
  for (std::size_t i = 1; i < 4; ++i) EXPECT_EQ(d[i].type, DeviationType::rank_shift);
}

TEST(Rankings, ProposerBelowMinimumExcluded) {
  std::map<std::string, int> dist{{"A", 30}, {"B", 25}};
  auto m = proposer_searcher_rankings(month_of({{"BIG", dist}, {"SMALL", {{"B", 40}}}}), {});
  ASSERT_EQ(m[0].proposers.size(), 1u);
  EXPECT_EQ(m[0].proposers[0].proposer, "BIG");
}

TEST(Rankings, ClustersMergeAddresses) {
  auto m = proposer_searcher_rankings(month_of({{"P", {{"A1", 20}, {"A2", 20}, {"B", 30}}}}),
                                      {{"A1", "A1"}, {"A2", "A1"}});
  EXPECT_EQ(m[0].aggregate, (std::vector<std::string>{"A1", "B"}));
}

TEST(Rankings, NoDataNoMonths) { EXPECT_TRUE(proposer_searcher_rankings({}, {}).empty()); }

// ---- leaderboard ---------------------------------------------------------

TEST(Leaderboard, OverlapOfEightGivesTwelve) {
  std::vector<ArbCycle> arbs;
  // S00..S09 lead by count; S02..S11 lead by USD.
  for (int i = 0; i < 12; ++i) {
    const auto s = "S" + std::string(i < 10 ? "0" : "") + std::to_string(i);
    const int n = i < 10 ? 100 - i : 5;
    const double usd = i < 2 ? 0.001 : 10.0 + i;
    for (int k = 0; k < n; ++k) arbs.push_back(arb(s, 1, 10, usd / n));
  }
  for (int i = 0; i < 20; ++i) arbs.push_back(arb("Z" + std::to_string(i), 1, 10, 0.0001));
  auto rows = top_searchers(arbs, {}, 10);
  EXPECT_EQ(rows.size(), 12u);
}

TEST(Leaderboard, SingleSearcher) {
  std::vector<ArbCycle> arbs{arb("S", 1, 10, 1.0), arb("S", 2, 10, 2.0), arb("S", 3, 10, 3.0)};
  arbs[0].profit_rate_pct = 1;
  arbs[1].profit_rate_pct = 5;
  arbs[2].profit_rate_pct = 2;
  auto rows = top_searchers(arbs, {}, 10);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].arbs, 3u);
  EXPECT_DOUBLE_EQ(*rows[0].profit_usd, 6.0);
  EXPECT_DOUBLE_EQ(rows[0].median_profit_rate_pct, 2.0);
}

TEST(Leaderboard, UnconvertibleProfitsKeepTokens) {
  std::vector<ArbCycle> arbs{arb("S", 1, 10), arb("S", 1, 10)};
  for (auto& a : arbs) a.profit_token = AssetId{287867876};
  auto rows = top_searchers(arbs, {}, 10);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_FALSE(rows[0].profit_usd);
  EXPECT_EQ(rows[0].profit_tokens.at(AssetId{287867876}), 2000);
  std::ostringstream out;
  write_leaderboard(out, rows);
  EXPECT_NE(out.str().find("S,2,,,287867876:2000,1.00"), std::string::npos);
}

TEST(Leaderboard, TiesBreakByClusterId) {
  std::vector<ArbCycle> arbs{arb("B", 1, 10, 1.0), arb("A", 1, 10, 1.0), arb("C", 1, 10, 1.0)};
  auto rows = top_searchers(arbs, {}, 2);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].cluster, "A");
  EXPECT_EQ(rows[1].cluster, "B");
}

}  // namespace
}  // namespace algomev
