#pragma once

#include "algomev/arb/detect.hpp"
#include "algomev/bti/detect.hpp"

#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace algomev {

using LabelMap = std::unordered_map<std::string, std::string>;

inline constexpr const char* kArbitrageBlockLabel = "arbitrage-block";
inline constexpr const char* kUnlabeled = "unlabeled";

// "arbitrage-block" when every unit of the dominant pattern is a detected
// arbitrage by the issuing sender; otherwise the label map, else "unlabeled".
inline BtiEvent classify_bti(BtiEvent event, const LabelMap& labels, std::span<const ArbCycle> block_arbs) {
  std::unordered_set<std::string> arb_units;
  for (const auto& a : block_arbs)
    if (a.block_round == event.round && a.searcher == event.sender) arb_units.insert(a.id);
  bool all_arbs = !event.unit_ids.empty();
  for (const auto& u : event.unit_ids)
    if (!arb_units.count(u)) {
      all_arbs = false;
      break;
    }
  if (all_arbs) {
    event.label = kArbitrageBlockLabel;
  } else if (auto it = labels.find(event.sender); it != labels.end()) {
    event.label = it->second;
  } else {
    event.label = kUnlabeled;
  }
  return event;
}

// CSV columns: sender,purpose
inline LabelMap label_map_from_csv(const csv::Table& t) {
  LabelMap m;
  const auto c_s = t.column("sender");
  const auto c_p = t.column("purpose");
  for (const auto& r : t.rows) m[r[c_s]] = r[c_p];
  return m;
}

}  // namespace algomev
