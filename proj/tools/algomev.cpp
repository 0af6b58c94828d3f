#include "algomev/cli/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using algomev::cli::UsageError;

// Reads option defaults from a JSON object; flags given on the command line win.
class JsonDefaults {
 public:
  JsonDefaults(const std::string& path, CLI::App* sub) : sub_(sub) {
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config " + path);
    j_ = nlohmann::json::parse(in);
    if (!j_.is_object()) throw UsageError("config " + path + " must be a JSON object");
  }

  template <typename T>
  void fill(const std::string& key, const std::string& flag, T& target) {
    if (wanted(key, flag)) target = get<T>(key);
  }

  template <typename T>
  void fill(const std::string& key, const std::string& flag, std::optional<T>& target) {
    if (wanted(key, flag)) target = get<T>(key);
  }

 private:
  bool wanted(const std::string& key, const std::string& flag) const {
    if (!j_.is_object() || !j_.contains(key)) return false;
    auto* opt = sub_->get_option_no_throw(flag);
    return !opt || opt->count() == 0;
  }

  template <typename T>
  T get(const std::string& key) const {
    try {
      return j_.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
      throw UsageError("config key '" + key + "' has the wrong type");
    }
  }

  CLI::App* sub_;
  nlohmann::json j_;
};

}  // namespace

int main(int argc, char** argv) {
  using namespace algomev::cli;
  CLI::App app{"Algorand MEV measurement toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  std::string config;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config, "Config file for the subcommand");
  app.add_option("--seed", seed, "Seed for every random choice");
  app.add_option("--out-dir", common.out_dir, "Directory for output files")->capture_default_str();
  app.add_flag("--quiet", common.quiet, "Suppress progress and summary output");

  DetectOptions det;
  auto* detect = app.add_subcommand("detect", "Detect arbitrages and BTIs over a round range");
  detect->add_option("--source", det.source, "fixture | http")->check(CLI::IsMember({"fixture", "http"}))->capture_default_str();
  detect->add_option("--location", det.location, "Fixture path or indexer base URL");
  detect->add_option("--from", det.from_round, "First round (inclusive)");
  detect->add_option("--to", det.to_round, "Last round (inclusive)");
  detect->add_option("--pools", det.pools, "Pool registry CSV (pool_id,platform,pair)");
  detect->add_option("--assets", det.assets, "Asset class CSV (asset_id,symbol,class[,decimals])");
  detect->add_option("--prices", det.prices, "Daily price CSV (date,asset_id,usd_price)");
  detect->add_option("--labels", det.labels, "BTI sender labels CSV (sender,purpose)");
  detect->add_option("--bti-threshold", det.bti_threshold, "Block size threshold, or 'median'")->capture_default_str();
  detect->add_option("--token", det.token, "Indexer API token");
  detect->add_option("--page-size", det.page_size, "Indexer page size")->capture_default_str();
  detect->add_option("--parallelism", det.parallelism, "Concurrent indexer fetches")->capture_default_str();

  AnalyzeOptions ana;
  auto* analyze = app.add_subcommand("analyze", "Leaderboard, octiles, correlations and proposer rankings");
  analyze->add_option("--arbs", ana.arbs, "arbs.csv from detect (default <out-dir>/arbs.csv)");
  analyze->add_option("--funding", ana.funding, "funding.csv from detect (default <out-dir>/funding.csv)");
  analyze->add_option("--top-k", ana.top_k, "Leaderboard depth")->capture_default_str();
  analyze->add_option("--min-arbs", ana.min_arbs, "Minimum arbitrages per proposer and month")->capture_default_str();
  analyze->add_flag("--plot-data", ana.plot_data, "Also write octiles.tsv");

  SimulateOptions simo;
  auto* simulate = app.add_subcommand("simulate", "Run the ordering and network simulator");
  simulate->add_flag("--trace", simo.trace, "Include the per-block trace in report.json");

  ApplicabilityOptions appo;
  app.add_subcommand("applicability", "Check which MEV techniques work under each ordering");

  GenFixtureOptions gen;
  auto* genfix = app.add_subcommand("genfixture", "Generate a synthetic chain with ground truth");
  genfix->add_option("--blocks", gen.params.n_blocks, "Number of blocks")->capture_default_str();
  genfix->add_option("--start-round", gen.params.start_round, "First round")->capture_default_str();
  genfix->add_option("--arb-rate", gen.params.arb_rate, "Planted arbitrages per ordinary block")->capture_default_str();
  genfix->add_option("--arb-count", gen.params.arb_count, "Exact number of planted arbitrages (overrides --arb-rate)");
  genfix->add_option("--distractor-rate", gen.params.distractor_rate, "Distractor groups per ordinary block")
      ->capture_default_str();
  genfix->add_option("--bti-distractors", gen.params.bti_distractors, "Blocks that narrowly miss the BTI rule")
      ->capture_default_str();
  genfix->add_option("--bti-runs", gen.bti_runs, "Planted BTI runs, e.g. 364:reward,45:airdrop,6:arbitrage");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    if (sub == detect) {
      JsonDefaults d(config, detect);
      d.fill("source", "--source", det.source);
      d.fill("location", "--location", det.location);
      d.fill("from", "--from", det.from_round);
      d.fill("to", "--to", det.to_round);
      d.fill("pools", "--pools", det.pools);
      d.fill("assets", "--assets", det.assets);
      d.fill("prices", "--prices", det.prices);
      d.fill("labels", "--labels", det.labels);
      d.fill("bti_threshold", "--bti-threshold", det.bti_threshold);
      d.fill("token", "--token", det.token);
      d.fill("page_size", "--page-size", det.page_size);
      d.fill("parallelism", "--parallelism", det.parallelism);
      return cmd_detect(det, common);
    }
    if (sub == analyze) {
      JsonDefaults d(config, analyze);
      d.fill("arbs", "--arbs", ana.arbs);
      d.fill("funding", "--funding", ana.funding);
      d.fill("top_k", "--top-k", ana.top_k);
      d.fill("min_arbs", "--min-arbs", ana.min_arbs);
      d.fill("plot_data", "--plot-data", ana.plot_data);
      return cmd_analyze(ana, common);
    }
    if (sub == simulate) {
      simo.config = config;
      simo.seed = seed;
      return cmd_simulate(simo, common);
    }
    if (sub == genfix) {
      JsonDefaults d(config, genfix);
      d.fill("n_blocks", "--blocks", gen.params.n_blocks);
      d.fill("start_round", "--start-round", gen.params.start_round);
      d.fill("arb_rate", "--arb-rate", gen.params.arb_rate);
      d.fill("arb_count", "--arb-count", gen.params.arb_count);
      d.fill("distractor_rate", "--distractor-rate", gen.params.distractor_rate);
      d.fill("bti_distractors", "--bti-distractors", gen.params.bti_distractors);
      d.fill("bti_runs", "--bti-runs", gen.bti_runs);
      if (seed) gen.params.seed = *seed;
      return cmd_genfixture(gen, common);
    }
    appo.config = config;
    appo.seed = seed;
    return cmd_applicability(appo, common);
  } catch (const UsageError& e) {
    std::cerr << sub->get_name() << ": " << e.what() << '\n';
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << sub->get_name() << ": malformed config: " << e.what() << '\n';
    return kUsage;
  }
}
