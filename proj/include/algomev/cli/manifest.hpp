#pragma once

#include "algomev/util/digest.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace algomev::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kManifestFile = "manifest.json";

struct OutputDigest {
  std::string file;
  std::string sha256;

  bool operator==(const OutputDigest&) const = default;
};

// Everything needed to re-run a command and check its outputs. No wall-clock
// fields, so identical inputs give an identical manifest.
struct RunManifest {
  std::string command;
  nlohmann::json options = nlohmann::json::object();  // effective options
  std::string config_hash;                            // sha256 of options.dump()
  nlohmann::json source;                              // null when the command reads no chain data
  std::optional<std::pair<std::uint64_t, std::uint64_t>> range;
  std::optional<std::uint64_t> seed;
  std::string tool_version = kToolVersion;
  std::vector<OutputDigest> outputs;
};

// nlohmann::json keeps object keys sorted, so dump() is canonical.
inline std::string config_hash(const nlohmann::json& options) { return digest::sha256_hex(options.dump()); }

inline nlohmann::json to_json(const RunManifest& m) {
  nlohmann::json j;
  j["command"] = m.command;
  j["options"] = m.options;
  j["config_hash"] = m.config_hash;
  j["source"] = m.source;
  j["range"] = m.range ? nlohmann::json::array({m.range->first, m.range->second}) : nlohmann::json(nullptr);
  j["seed"] = m.seed ? nlohmann::json(*m.seed) : nlohmann::json(nullptr);
  j["tool_version"] = m.tool_version;
  nlohmann::json outs = nlohmann::json::array();
  for (const auto& o : m.outputs) outs.push_back({{"file", o.file}, {"sha256", o.sha256}});
  j["outputs"] = outs;
  return j;
}

inline RunManifest manifest_from_json(const nlohmann::json& j) {
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.options = j.value("options", nlohmann::json::object());
  m.config_hash = j.at("config_hash").get<std::string>();
  m.source = j.value("source", nlohmann::json());
  if (const auto& r = j.at("range"); r.is_array()) m.range = {{r[0].get<std::uint64_t>(), r[1].get<std::uint64_t>()}};
  if (const auto& s = j.at("seed"); !s.is_null()) m.seed = s.get<std::uint64_t>();
  m.tool_version = j.at("tool_version").get<std::string>();
  for (const auto& o : j.at("outputs")) m.outputs.push_back({o.at("file"), o.at("sha256")});
  return m;
}

inline RunManifest read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return manifest_from_json(nlohmann::json::parse(in));
}

// Files whose current digest differs from the manifest (missing files count).
inline std::vector<std::string> stale_outputs(const std::filesystem::path& dir, const RunManifest& m) {
  std::vector<std::string> bad;
  for (const auto& o : m.outputs) {
    const auto p = dir / o.file;
    if (!std::filesystem::exists(p) || digest::sha256_file(p.string()) != o.sha256) bad.push_back(o.file);
  }
  return bad;
}

// Output files are written under temporary names and renamed into place only
// on commit; an uncommitted set deletes its temporaries.
class OutputSet {
 public:
  explicit OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) { std::filesystem::create_directories(dir_); }

  OutputSet(const OutputSet&) = delete;
  OutputSet& operator=(const OutputSet&) = delete;

  ~OutputSet() {
    if (committed_) return;
    for (auto& f : files_) {
      f.stream.reset();
      std::error_code ec;
      std::filesystem::remove(temp_path(f.name), ec);
    }
  }

  std::ostream& open(const std::string& name) {
    auto s = std::make_unique<std::ofstream>(temp_path(name), std::ios::binary | std::ios::trunc);
    if (!*s) throw std::runtime_error("cannot write " + (dir_ / name).string());
    files_.push_back({name, std::move(s)});
    return *files_.back().stream;
  }

  // Finalizes every file, writes the manifest last and returns it.
  RunManifest commit(RunManifest m) {
    for (auto& f : files_) {
      f.stream->flush();
      if (!*f.stream) throw std::runtime_error("write failed for " + (dir_ / f.name).string());
      f.stream->close();
      m.outputs.push_back({f.name, digest::sha256_file(temp_path(f.name).string())});
    }
    {
      std::ofstream mf(temp_path(kManifestFile), std::ios::binary | std::ios::trunc);
      mf << to_json(m).dump(2) << '\n';
      if (!mf) throw std::runtime_error("write failed for " + (dir_ / kManifestFile).string());
    }
    files_.push_back({kManifestFile, nullptr});
    for (const auto& f : files_) std::filesystem::rename(temp_path(f.name), dir_ / f.name);
    committed_ = true;
    return m;
  }

  const std::filesystem::path& dir() const { return dir_; }

 private:
  struct File {
    std::string name;
    std::unique_ptr<std::ofstream> stream;
  };

  std::filesystem::path temp_path(const std::string& name) const { return dir_ / ("." + name + ".partial"); }

  std::filesystem::path dir_;
  std::vector<File> files_;
  bool committed_ = false;
};

}  // namespace algomev::cli
