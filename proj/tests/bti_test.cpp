#include "algomev/bti/classify.hpp"
#include "algomev/bti/csv_io.hpp"
#include "algomev/bti/detect.hpp"
#include "algomev/bti/runs.hpp"
#include "algomev/ingest/groups.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

namespace algomev {
namespace {

using namespace algomev::testing;

Block bti_block(std::uint64_t round, std::size_t len, std::size_t dominant, const std::string& sender = "REWARDS") {
  std::vector<Txn> txns;
  for (std::size_t i = 0; i < len; ++i) {
    const auto id = std::to_string(round) + "-" + std::to_string(i);
    if (i < dominant)
      txns.push_back(pay(id, sender, "R" + std::to_string(i), 1000));
    else
      txns.push_back(pay(id, "U" + std::to_string(i), "V", 1));
  }
  return assemble_groups(make_block(round, txns));
}

TEST(PatternKey, ReceiversCollapse) {
  EXPECT_EQ(pattern_key(pay("1", "A", "B", 1)), pattern_key(pay("2", "A", "C", 5)));
}

TEST(PatternKey, KindDistinguishes) {
  EXPECT_NE(pattern_key(pay("1", "A", "B", 1)), pattern_key(axfer("2", "A", "B", 0, 1)));
  EXPECT_NE(pattern_key(axfer("1", "A", "B", 5, 1)), pattern_key(axfer("2", "A", "B", 6, 1)));
  EXPECT_NE(pattern_key(pay("1", "A", "A", 1)), pattern_key(pay("2", "A", "B", 1)));
}

TEST(PatternKey, GroupSignaturesMatch) {
  auto b = assemble_groups(make_block(1, {grouped(pay("1", "A", "B", 1), "G1"), grouped(appl("2", "A", 9), "G1"),
                                          grouped(pay("3", "A", "C", 7), "G2"), grouped(appl("4", "A", 12), "G2")}));
  ASSERT_EQ(b.groups.size(), 2u);
  EXPECT_EQ(pattern_key(b.groups[0]), pattern_key(b.groups[1]));
  EXPECT_EQ(pattern_key(b.groups[0]).shape, "group=pay+appl");
}

TEST(PatternKey, EqualityMatchesCanonicalString) {
  std::mt19937 rng(7);
  std::vector<PatternKey> keys;
  for (int i = 0; i < 200; ++i) {
    const std::string s = "S" + std::to_string(rng() % 3);
    const std::string r = (rng() % 2) ? s : "R" + std::to_string(rng() % 5);
    switch (rng() % 3) {
      case 0: keys.push_back(pattern_key(pay("x", s, r, 1))); break;
      case 1: keys.push_back(pattern_key(axfer("x", s, r, rng() % 3, 1))); break;
      default: keys.push_back(pattern_key(appl("x", s, rng() % 3))); break;
    }
  }
  for (const auto& a : keys)
    for (const auto& b : keys) EXPECT_EQ(a == b, a.canonical() == b.canonical());
}

TEST(DetectBti, DominantShare085) {
  auto e = detect_bti(bti_block(1, 100, 85));
  ASSERT_TRUE(e);
  EXPECT_EQ(e->count, 85u);
  EXPECT_EQ(e->block_len, 100u);
  EXPECT_DOUBLE_EQ(e->share, 0.85);
  EXPECT_EQ(e->sender, "REWARDS");
}

TEST(DetectBti, SmallBlockFailsSize) { EXPECT_FALSE(detect_bti(bti_block(1, 30, 30))); }
TEST(DetectBti, BlockAtThresholdFailsSize) { EXPECT_FALSE(detect_bti(bti_block(1, 40, 40))); }
TEST(DetectBti, HalfShareFails) { EXPECT_FALSE(detect_bti(bti_block(1, 100, 50))); }

TEST(DetectBti, ShareBoundaryIsInclusive) {
  EXPECT_TRUE(detect_bti(bti_block(1, 100, 80)));
  EXPECT_FALSE(detect_bti(bti_block(1, 100, 79)));
  // 45 txns: 36/45 = 0.8 exactly.
  EXPECT_TRUE(detect_bti(bti_block(1, 45, 36)));
  EXPECT_FALSE(detect_bti(bti_block(1, 45, 35)));
}

TEST(DetectBti, ConfigurableThreshold) {
  EXPECT_TRUE(detect_bti(bti_block(1, 30, 30), 20));
  EXPECT_EQ(median_block_size({10, 50, 30}), 30u);
  EXPECT_EQ(median_block_size({10, 50, 30, 40}), 35u);
}

TEST(DetectBti, EventsSatisfyBothHeuristicsOnRandomBlocks) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t len = 1 + rng() % 120;
    const std::size_t dom = rng() % (len + 1);
    auto b = bti_block(1, len, dom);
    auto e = detect_bti(b);
    const bool expect = len > 40 && 5 * dom >= 4 * len;
    ASSERT_EQ(e.has_value(), expect) << len << " " << dom;
    if (e) {
      EXPECT_GT(e->block_len, 40u);
      EXPECT_GE(e->share, 0.8);
    }
  }
}

BtiEvent ev(std::uint64_t round, const std::string& sender = "A") {
  BtiEvent e;
  e.round = round;
  e.sender = sender;
  e.pattern = PatternKey{sender, TxnKind::pay, "rcv=other;asset=0"};
  return e;
}

TEST(LinkRuns, ConsecutiveRoundsFormOneRun) {
  auto s = link_runs({ev(5), ev(6), ev(7)});
  ASSERT_EQ(s.runs.size(), 1u);
  EXPECT_EQ(s.runs[0].length, 3u);
  EXPECT_EQ(s.runs[0].start_round, 5u);
  EXPECT_EQ(s.runs[0].end_round, 7u);
  EXPECT_EQ(s.histogram[1], 1u);
}

TEST(LinkRuns, GapBreaksRun) {
  auto s = link_runs({ev(5), ev(7)});
  ASSERT_EQ(s.runs.size(), 2u);
  EXPECT_EQ(s.histogram[0], 2u);
}

TEST(LinkRuns, LongRunLandsInTopBucket) {
  std::vector<BtiEvent> events;
  for (std::uint64_t r = 1000; r < 1364; ++r) events.push_back(ev(r));
  auto s = link_runs(events);
  ASSERT_EQ(s.runs.size(), 1u);
  EXPECT_EQ(s.runs[0].length, 364u);
  EXPECT_EQ(kRunBucketLabels[run_bucket(364)], ">100");
  EXPECT_EQ(s.histogram[5], 1u);
}

TEST(LinkRuns, BucketEdges) {
  EXPECT_EQ(run_bucket(1), 0u);
  EXPECT_EQ(run_bucket(2), 1u);
  EXPECT_EQ(run_bucket(19), 1u);
  EXPECT_EQ(run_bucket(20), 2u);
  EXPECT_EQ(run_bucket(29), 2u);
  EXPECT_EQ(run_bucket(30), 3u);
  EXPECT_EQ(run_bucket(49), 3u);
  EXPECT_EQ(run_bucket(50), 4u);
  EXPECT_EQ(run_bucket(100), 4u);
  EXPECT_EQ(run_bucket(101), 5u);
}

TEST(LinkRuns, RunsPartitionEventsAndAreMaximal) {
  std::mt19937 rng(3);
  std::vector<BtiEvent> events;
  for (std::uint64_t r = 1; r < 2000; ++r)
    if (rng() % 10 < 7) events.push_back(ev(r, rng() % 4 == 0 ? "B" : "A"));
  auto s = link_runs(events);
  std::uint64_t covered = 0;
  std::uint64_t hist = 0;
  for (auto h : s.histogram) hist += h;
  EXPECT_EQ(hist, s.runs.size());
  std::set<std::pair<std::string, std::uint64_t>> seen;
  for (const auto& r : s.runs) {
    EXPECT_EQ(r.length, r.end_round - r.start_round + 1);
    covered += r.length;
    for (auto x = r.start_round; x <= r.end_round; ++x) EXPECT_TRUE(seen.insert({r.sender, x}).second);
  }
  EXPECT_EQ(covered, events.size());
  for (const auto& e : events) EXPECT_TRUE(seen.count({e.sender, e.round}));
  // Maximal: no run is adjacent to another with the same key.
  for (const auto& r : s.runs) {
    for (const auto& o : s.runs)
      if (&o != &r && o.sender == r.sender) EXPECT_NE(o.start_round, r.end_round + 1);
  }
}

TEST(ClassifyBti, ArbitrageBlock) {
  std::vector<Txn> txns;
  std::vector<ArbCycle> arbs;
  for (int i = 0; i < 100; ++i) {
    if (i < 95) {
      const std::string gid = "G" + std::to_string(i);
      txns.push_back(grouped(pay(gid + "a", "SEARCHER", "P", 10), gid));
      txns.push_back(grouped(axfer(gid + "b", "P", "SEARCHER", 7, 10), gid));
      ArbCycle a;
      a.id = gid;
      a.searcher = "SEARCHER";
      a.block_round = 28328225;
      arbs.push_back(a);
    } else {
      txns.push_back(pay("x" + std::to_string(i), "U", "V", 1));
    }
  }
  auto b = assemble_groups(make_block(28328225, txns));
  auto e = detect_bti(b);
  ASSERT_TRUE(e);
  auto labeled = classify_bti(*e, {}, arbs);
  EXPECT_EQ(labeled.label, "arbitrage-block");
  // Drop one arb: no longer all units are arbitrages.
  arbs.pop_back();
  EXPECT_EQ(classify_bti(*e, {}, arbs).label, "unlabeled");
}

TEST(ClassifyBti, LabelMapAndFallback) {
  auto e = *detect_bti(bti_block(1, 100, 90, "FOLKS"));
  EXPECT_EQ(classify_bti(e, {{"FOLKS", "reward-payment"}}, {}).label, "reward-payment");
  EXPECT_EQ(classify_bti(e, {{"OTHER", "x"}}, {}).label, "unlabeled");
}

TEST(BtiCsv, EventAndRunRows) {
  auto e = classify_bti(*detect_bti(bti_block(9, 100, 85)), {}, {});
  std::ostringstream out;
  write_bti_events_header(out);
  write_bti_event(out, e);
  EXPECT_NE(out.str().find("9,REWARDS,pay|rcv=other;asset=0,85,100,0.8500,unlabeled"), std::string::npos);
  std::ostringstream runs;
  write_bti_runs(runs, link_runs({e}));
  EXPECT_NE(runs.str().find("REWARDS,pay|rcv=other;asset=0,9,9,1,1"), std::string::npos);
}

}  // namespace
}  // namespace algomev
