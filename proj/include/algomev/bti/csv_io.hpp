#pragma once

#include "algomev/bti/runs.hpp"
#include "algomev/util/csv.hpp"
#include "algomev/util/format.hpp"

namespace algomev {

inline constexpr const char* kBtiEventsSchema = "bti_events/1";
inline constexpr const char* kBtiRunsSchema = "bti_runs/1";

inline void write_bti_events_header(std::ostream& out) {
  csv::Writer(out).schema(kBtiEventsSchema).row({"round", "sender", "pattern", "count", "block_len", "share", "label"});
}

inline void write_bti_event(std::ostream& out, const BtiEvent& e) {
  csv::Writer(out).row({std::to_string(e.round), e.sender, e.pattern.pattern(), std::to_string(e.count),
                        std::to_string(e.block_len), fixed(e.share, 4), e.label});
}

inline void write_bti_runs(std::ostream& out, const RunSummary& s) {
  csv::Writer w(out);
  w.schema(kBtiRunsSchema).row({"sender", "pattern", "start_round", "end_round", "length", "bucket"});
  for (const auto& r : s.runs)
    w.row({r.sender, r.pattern.pattern(), std::to_string(r.start_round), std::to_string(r.end_round),
           std::to_string(r.length), std::string(kRunBucketLabels[run_bucket(r.length)])});
}

}  // namespace algomev
