#pragma once

#include "algomev/analytics/clusters.hpp"
#include "algomev/analytics/correlation.hpp"
#include "algomev/analytics/leaderboard.hpp"
#include "algomev/analytics/octiles.hpp"
#include "algomev/analytics/rankings.hpp"
#include "algomev/arb/csv_io.hpp"
#include "algomev/arb/detect.hpp"
#include "algomev/bti/classify.hpp"
#include "algomev/bti/csv_io.hpp"
#include "algomev/bti/runs.hpp"
#include "algomev/cli/fixture.hpp"
#include "algomev/cli/manifest.hpp"
#include "algomev/ingest/indexer.hpp"
#include "algomev/sim/applicability.hpp"
#include "algomev/sim/report.hpp"

#include <json.hpp>

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <set>
#include <string>

namespace algomev::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kSourceError = 2, kDataError = 3 };

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string out_dir = ".";
  bool quiet = false;
};

namespace detail {

inline void require_file(const std::string& path, const std::string& what) {
  if (path.empty()) throw UsageError(what + " path is empty");
  if (!std::filesystem::is_regular_file(path)) throw SourceError("cannot open " + what + " " + path);
}

inline int ingest_exit(ingest::ErrorKind k) {
  switch (k) {
    case ingest::ErrorKind::invalid_spec: return kUsage;
    case ingest::ErrorKind::source_unreachable:
    case ingest::ErrorKind::range_gap: return kSourceError;
    case ingest::ErrorKind::malformed_record: return kDataError;
  }
  return kDataError;
}

// Maps any failure to an exit code and a single diagnostic line.
template <typename F>
int guarded(const char* command, std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ingest::IngestError& e) {
    err << command << ": " << e.what() << '\n';
    return ingest_exit(e.kind());
  } catch (const UsageError& e) {
    err << command << ": " << e.what() << '\n';
    return kUsage;
  } catch (const sim::InvalidConfig& e) {
    err << command << ": invalid config: " << e.what() << '\n';
    return kUsage;
  } catch (const fixture::InvalidParams& e) {
    err << command << ": invalid parameters: " << e.what() << '\n';
    return kUsage;
  } catch (const PoolRegistryError& e) {
    err << command << ": pools: " << e.what() << '\n';
    return kUsage;
  } catch (const AssetConfigError& e) {
    err << command << ": assets: " << e.what() << '\n';
    return kUsage;
  } catch (const SourceError& e) {
    err << command << ": " << e.what() << '\n';
    return kSourceError;
  } catch (const nlohmann::json::exception& e) {
    err << command << ": malformed JSON: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    err << command << ": " << e.what() << '\n';
    return kDataError;
  }
}

inline std::optional<std::pair<std::uint64_t, std::uint64_t>> scan_fixture_rounds(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ingest::IngestError(ingest::ErrorKind::source_unreachable, "cannot open fixture " + path);
  std::optional<std::pair<std::uint64_t, std::uint64_t>> span;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::uint64_t r = 0;
    try {
      r = nlohmann::json::parse(line).at("round").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
      throw ingest::IngestError(ingest::ErrorKind::malformed_record,
                                path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (!span)
      span = {{r, r}};
    else
      span = {{std::min(span->first, r), std::max(span->second, r)}};
  }
  return span;
}

inline std::string file_or_empty(const std::string& p) {
  return p.empty() ? std::string() : std::filesystem::absolute(p).lexically_normal().string();
}

}  // namespace detail

// ---- detect --------------------------------------------------------------

struct DetectOptions {
  std::string source = "fixture";  // fixture | http
  std::string location;
  std::optional<std::uint64_t> from_round;
  std::optional<std::uint64_t> to_round;  // to = from - 1 selects an empty range
  std::string pools;
  std::string assets;
  std::string prices;
  std::string labels;
  std::string bti_threshold = "40";  // integer, or "median"
  std::string token;
  std::uint32_t page_size = 1000;
  std::uint32_t parallelism = 4;
};

inline nlohmann::json to_json(const DetectOptions& o) {
  return {{"source", o.source},
          {"location", o.source == "fixture" ? detail::file_or_empty(o.location) : o.location},
          {"from", o.from_round ? nlohmann::json(*o.from_round) : nlohmann::json(nullptr)},
          {"to", o.to_round ? nlohmann::json(*o.to_round) : nlohmann::json(nullptr)},
          {"pools", detail::file_or_empty(o.pools)},
          {"assets", detail::file_or_empty(o.assets)},
          {"prices", detail::file_or_empty(o.prices)},
          {"labels", detail::file_or_empty(o.labels)},
          {"bti_threshold", o.bti_threshold},
          {"page_size", o.page_size}};
}

struct DetectSummary {
  std::uint64_t blocks = 0;
  std::uint64_t arbs = 0;
  std::uint64_t bti_events = 0;
  std::uint64_t bti_runs = 0;
  std::size_t bti_threshold = 0;
};

inline int cmd_detect(const DetectOptions& o, const Common& c, std::ostream& out = std::cout,
                      std::ostream& err = std::cerr, DetectSummary* summary = nullptr) {
  return detail::guarded("detect", err, [&] {
    ingest::SourceSpec spec;
    if (o.source == "fixture")
      spec.mode = ingest::SourceMode::fixture_file;
    else if (o.source == "http")
      spec.mode = ingest::SourceMode::http_indexer;
    else
      throw UsageError("--source must be fixture or http, got '" + o.source + "'");
    if (o.location.empty()) throw UsageError("--location is required");
    spec.location = o.location;
    spec.token = o.token;
    spec.page_size = o.page_size;
    spec.parallelism = std::max<std::uint32_t>(1, o.parallelism);

    bool median = false;
    std::size_t threshold = kDefaultBtiSizeThreshold;
    if (o.bti_threshold == "median") {
      median = true;
    } else {
      try {
        std::size_t used = 0;
        threshold = std::stoull(o.bti_threshold, &used);
        if (used != o.bti_threshold.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw UsageError("--bti-threshold must be an integer or 'median'");
      }
    }

    // Range: explicit, or the full fixture extent.
    bool empty = false;
    if (o.from_round && o.to_round) {
      spec.from_round = *o.from_round;
      spec.to_round = *o.to_round;
      empty = *o.to_round + 1 == *o.from_round;
    } else if (o.from_round || o.to_round) {
      throw UsageError("--from and --to must be given together");
    } else if (spec.mode == ingest::SourceMode::fixture_file) {
      const auto span = detail::scan_fixture_rounds(o.location);
      if (span) {
        spec.from_round = span->first;
        spec.to_round = span->second;
      } else {
        empty = true;
      }
    } else {
      throw UsageError("--from and --to are required for the http source");
    }

    PoolRegistry pools;
    AssetRegistry assets;
    PriceTable prices;
    LabelMap labels;
    if (!o.pools.empty()) {
      detail::require_file(o.pools, "pools");
      pools = PoolRegistry::from_file(o.pools);
    } else if (!c.quiet) {
      err << "detect: no --pools given; no arbitrages can be matched\n";
    }
    if (!o.assets.empty()) {
      detail::require_file(o.assets, "assets");
      assets = AssetRegistry::from_file(o.assets);
    }
    if (!o.prices.empty()) {
      detail::require_file(o.prices, "prices");
      prices = PriceTable::from_file(o.prices);
    }
    if (!o.labels.empty()) {
      detail::require_file(o.labels, "labels");
      labels = label_map_from_csv(csv::read_file(o.labels));
    }

    OutputSet files(c.out_dir);
    auto& arbs_out = files.open("arbs.csv");
    auto& events_out = files.open("bti_events.csv");
    auto& runs_out = files.open("bti_runs.csv");
    auto& funding_out = files.open("funding.csv");
    write_arbs_header(arbs_out);
    write_bti_events_header(events_out);

    DetectSummary s;
    std::vector<BtiEvent> events;
    std::vector<std::size_t> sizes;
    FundingTracker funding;
    if (!empty) {
      auto stream = ingest::load_blocks(spec);
      while (auto b = stream->next()) {
        ++s.blocks;
        auto arbs = detect_block_arbs(*b, pools, prices, assets);
        write_arb_rows(arbs_out, arbs);
        s.arbs += arbs.size();
        funding.observe(*b);
        for (const auto& a : arbs) funding.arbitrage(a.searcher, a.block_round, a.block_position);
        sizes.push_back(b->size());
        // With a median threshold every qualifying share is kept and the
        // size cut is applied once the whole range is known.
        if (auto e = detect_bti(*b, median ? 0 : threshold)) events.push_back(classify_bti(std::move(*e), labels, arbs));
      }
    }
    if (median) {
      threshold = median_block_size(sizes);
      std::erase_if(events, [&](const BtiEvent& e) { return e.block_len <= threshold; });
    }
    for (const auto& e : events) write_bti_event(events_out, e);
    const auto runs = link_runs(events);
    write_bti_runs(runs_out, runs);
    write_funding(funding_out, funding.finish());
    s.bti_events = events.size();
    s.bti_runs = runs.runs.size();
    s.bti_threshold = threshold;

    RunManifest m;
    m.command = "detect";
    m.options = to_json(o);
    m.config_hash = config_hash(m.options);
    m.source = {{"mode", o.source}, {"location", o.location}};
    if (!empty) m.range = {{spec.from_round, spec.to_round}};
    files.commit(std::move(m));
    if (!c.quiet)
      out << "detect: " << s.blocks << " blocks, " << s.arbs << " arbitrages, " << s.bti_events << " BTIs in "
          << s.bti_runs << " runs (size threshold " << s.bti_threshold << ") -> " << c.out_dir << '\n';
    if (summary) *summary = s;
    return int(kOk);
  });
}

// ---- analyze -------------------------------------------------------------

struct AnalyzeOptions {
  std::string arbs;     // default: <out-dir>/arbs.csv
  std::string funding;  // optional; default: <out-dir>/funding.csv when present
  std::size_t top_k = 10;
  std::size_t min_arbs = kDefaultMinProposerArbs;
  bool plot_data = false;
};

inline int cmd_analyze(const AnalyzeOptions& o, const Common& c, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
  return detail::guarded("analyze", err, [&] {
    const std::filesystem::path dir(c.out_dir);
    const std::string arbs_path = o.arbs.empty() ? (dir / "arbs.csv").string() : o.arbs;
    std::string funding_path = o.funding;
    if (funding_path.empty() && std::filesystem::exists(dir / "funding.csv"))
      funding_path = (dir / "funding.csv").string();
    if (o.top_k == 0) throw UsageError("--top-k must be >= 1");

    detail::require_file(arbs_path, "arbs");
    const auto arbs = read_arbs(arbs_path);
    std::vector<FundingEdge> edges;
    if (!funding_path.empty()) {
      detail::require_file(funding_path, "funding");
      edges = funding_from_csv(csv::read_file(funding_path));
    }
    std::set<std::string> searchers;
    for (const auto& a : arbs) searchers.insert(a.searcher);
    const auto clusters = cluster_map(cluster_by_funder(searchers, edges));

    const auto board = top_searchers(arbs, clusters, o.top_k);
    const auto octiles = octile_distribution(arbs);
    const auto corr = correlations_by_cluster(arbs, clusters);
    const auto months = proposer_searcher_rankings(arbs, clusters, o.min_arbs);

    OutputSet files(c.out_dir);
    write_leaderboard(files.open("leaderboard.csv"), board);
    write_octiles(files.open("octiles.csv"), octiles);
    write_correlations(files.open("correlations.csv"), corr);
    write_latency_proxy(files.open("latency_proxy.csv"), months);
    if (o.plot_data) {
      auto& tsv = files.open("octiles.tsv");
      tsv << "# octile\tarbs\tprofit_usd\n";
      for (int i = 0; i < 8; ++i) tsv << (i + 1) << '\t' << octiles.counts[i] << '\t' << fixed(octiles.profits_usd[i], 2) << '\n';
    }

    RunManifest m;
    m.command = "analyze";
    m.options = {{"arbs", detail::file_or_empty(arbs_path)},
                 {"arbs_sha256", digest::sha256_file(arbs_path)},
                 {"funding", detail::file_or_empty(funding_path)},
                 {"top_k", o.top_k},
                 {"min_arbs", o.min_arbs},
                 {"plot_data", o.plot_data}};
    if (!funding_path.empty()) m.options["funding_sha256"] = digest::sha256_file(funding_path);
    m.config_hash = config_hash(m.options);
    files.commit(std::move(m));

    if (!c.quiet) {
      std::size_t deviations = 0;
      for (const auto& mr : months) deviations += mr.deviations.size();
      out << "analyze: " << arbs.size() << " arbitrages, " << board.size() << " leaderboard rows, "
          << corr.size() << " clusters, " << deviations << " ranking deviations -> " << c.out_dir << '\n';
    }
    return int(kOk);
  });
}

// ---- simulate ------------------------------------------------------------

struct SimulateOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  bool trace = false;
};

inline int cmd_simulate(const SimulateOptions& o, const Common& c, std::ostream& out = std::cout,
                        std::ostream& err = std::cerr) {
  return detail::guarded("simulate", err, [&] {
    if (o.config.empty()) throw UsageError("--config is required");
    detail::require_file(o.config, "config");
    std::ifstream in(o.config);
    auto j = nlohmann::json::parse(in);
    if (o.seed) j["seed"] = *o.seed;
    if (o.trace) j["trace"] = true;
    const auto cfg = sim::config_from_json(j);
    const auto report = sim::simulate(cfg);

    OutputSet files(c.out_dir);
    files.open("report.json") << sim::to_json(report, cfg.trace).dump(2) << '\n';
    sim::write_octile_tsv(files.open("octiles.tsv"), report);

    RunManifest m;
    m.command = "simulate";
    m.options = j;
    m.config_hash = config_hash(j);
    m.seed = cfg.seed;
    files.commit(std::move(m));

    if (!c.quiet) {
      out << "simulate: " << report.blocks.size() << " blocks, seed " << cfg.seed << '\n';
      out << "  backruns included " << report.backruns_included << ", adjacency " << fixed(report.backrun_adjacency_rate, 3)
          << ", octile chi-square " << fixed(sim::chi_square_uniform(report.backrun_octile_histogram), 2) << '\n';
      out << "  frontrun success fcfs " << fixed(report.frontrun_success_rate_fcfs, 3) << " (" << report.frontrun_attempts_fcfs
          << "), fee " << fixed(report.frontrun_success_rate_fee, 3) << " (" << report.frontrun_attempts_fee << ")\n";
      out << "  clog cost " << report.clog_total_cost << " microALGO, fee mode from round "
          << (report.fee_flip_round ? std::to_string(*report.fee_flip_round) : std::string("-")) << '\n';
    }
    return int(kOk);
  });
}

// ---- applicability -------------------------------------------------------

struct ApplicabilityOptions {
  std::string config;  // template; built-in default when empty
  std::optional<std::uint64_t> seed;
};

inline int cmd_applicability(const ApplicabilityOptions& o, const Common& c, std::ostream& out = std::cout,
                             std::ostream& err = std::cerr, std::vector<sim::CellResult>* result = nullptr) {
  return detail::guarded("applicability", err, [&] {
    nlohmann::json tmpl;
    if (o.config.empty()) {
      tmpl = sim::default_applicability_template();
    } else {
      detail::require_file(o.config, "template");
      std::ifstream in(o.config);
      tmpl = nlohmann::json::parse(in);
    }
    const auto cells = sim::ordering_applicability_check(tmpl, o.seed);

    OutputSet files(c.out_dir);
    files.open("applicability.json") << sim::to_json(cells).dump(2) << '\n';
    RunManifest m;
    m.command = "applicability";
    m.options = {{"template", tmpl}};
    if (o.seed) m.options["seed"] = *o.seed;
    m.config_hash = config_hash(m.options);
    m.seed = o.seed;
    files.commit(std::move(m));

    if (!c.quiet) {
      out << std::left << std::setw(22) << "technique" << std::setw(10) << "state" << std::setw(10) << "success"
          << std::setw(9) << "applies" << "expected\n";
      for (const auto& cell : cells)
        out << std::setw(22) << cell.technique << std::setw(10) << cell.state << std::setw(10)
            << fixed(cell.success_rate, 3) << std::setw(9) << (cell.applies ? "yes" : "no")
            << (cell.expected ? "yes" : "no") << (cell.applies == cell.expected ? "" : "  MISMATCH") << '\n';
    }
    if (result) *result = cells;
    return int(kOk);
  });
}

// ---- genfixture ----------------------------------------------------------

struct GenFixtureOptions {
  fixture::Params params;
  std::string bti_runs;  // empty: generator default
};

inline int cmd_genfixture(const GenFixtureOptions& o, const Common& c, std::ostream& out = std::cout,
                          std::ostream& err = std::cerr) {
  return detail::guarded("genfixture", err, [&] {
    auto p = o.params;
    if (!o.bti_runs.empty()) p.bti_runs = fixture::parse_bti_runs(o.bti_runs);

    OutputSet files(c.out_dir);
    const auto art = fixture::generate(p, files.open("chain.jsonl"));
    files.open("ground_truth.json") << art.truth.dump(1) << '\n';
    files.open("pools.csv") << art.pools_csv;
    files.open("assets.csv") << art.assets_csv;
    files.open("prices.csv") << art.prices_csv;
    files.open("labels.csv") << art.labels_csv;

    std::string runs;
    for (const auto& r : p.bti_runs) runs += (runs.empty() ? "" : ",") + std::to_string(r.length) + ":" + r.kind;
    RunManifest m;
    m.command = "genfixture";
    m.options = {{"n_blocks", p.n_blocks},
                 {"start_round", p.start_round},
                 {"arb_rate", p.arb_rate},
                 {"arb_count", p.arb_count ? nlohmann::json(*p.arb_count) : nlohmann::json(nullptr)},
                 {"distractor_rate", p.distractor_rate},
                 {"bti_distractors", p.bti_distractors},
                 {"bti_runs", runs}};
    m.config_hash = config_hash(m.options);
    m.range = {{art.from_round, art.to_round}};
    m.seed = p.seed;
    files.commit(std::move(m));

    if (!c.quiet)
      out << "genfixture: rounds " << art.from_round << ".." << art.to_round << ", " << art.truth["arbs"].size()
          << " arbitrages, " << art.truth["bti_events"].size() << " BTI blocks, " << art.truth["distractors"].size()
          << " distractors -> " << c.out_dir << '\n';
    return int(kOk);
  });
}

}  // namespace algomev::cli
