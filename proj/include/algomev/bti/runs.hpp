#pragma once

#include "algomev/bti/detect.hpp"

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace algomev {

struct BtiRun {
  std::string sender;
  PatternKey pattern;
  std::uint64_t start_round = 0;
  std::uint64_t end_round = 0;
  std::uint64_t length = 0;

  bool operator==(const BtiRun&) const = default;
};

// Run-length buckets: 1, 2-19, 20-29, 30-49, 50-100, >100.
inline constexpr std::array<std::string_view, 6> kRunBucketLabels{"1", "2-19", "20-30", "30-50", "50-100", ">100"};

inline std::size_t run_bucket(std::uint64_t length) {
  if (length <= 1) return 0;
  if (length < 20) return 1;
  if (length < 30) return 2;
  if (length < 50) return 3;
  if (length <= 100) return 4;
  return 5;
}

struct RunSummary {
  std::vector<BtiRun> runs;  // ordered by start round, then canonical key
  std::array<std::uint64_t, 6> histogram{};
};

// Folds round-ordered events into maximal runs of consecutive rounds per
// (sender, pattern).
inline RunSummary link_runs(const std::vector<BtiEvent>& events) {
  RunSummary s;
  std::map<std::string, BtiRun> open;
  auto close = [&](BtiRun run) {
    s.histogram[run_bucket(run.length)]++;
    s.runs.push_back(std::move(run));
  };
  for (const auto& e : events) {
    const auto key = e.pattern.canonical();
    auto it = open.find(key);
    if (it != open.end() && it->second.end_round + 1 == e.round) {
      it->second.end_round = e.round;
      it->second.length++;
      continue;
    }
    if (it != open.end()) {
      close(std::move(it->second));
      open.erase(it);
    }
    open.emplace(key, BtiRun{e.sender, e.pattern, e.round, e.round, 1});
  }
  for (auto& [_, run] : open) close(std::move(run));
  std::stable_sort(s.runs.begin(), s.runs.end(), [](const BtiRun& a, const BtiRun& b) {
    if (a.start_round != b.start_round) return a.start_round < b.start_round;
    return a.pattern.canonical() < b.pattern.canonical();
  });
  return s;
}

}  // namespace algomev
