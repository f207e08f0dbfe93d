#pragma once

#include "hkcob/chern.hpp"
#include "hkcob/cobordism.hpp"

#include <json.hpp>

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace hkcob::cli {

using nlohmann::json;

/// One computed result: kind, parameters, basis label and exact values keyed by partition text.
struct ResultRecord {
  std::string kind;
  json params = json::object();
  std::string basis;
  std::vector<std::pair<std::string, Rational>> values;  // kept in computation order
  json checks = json::object();
  std::string correction = "sum_squares";
};

/// Canonical JSON: keys sorted, rationals as "p/q" strings (integers as "p").
json to_json(const ResultRecord& r, bool decimal = false);
std::string to_csv(const ResultRecord& r, bool decimal = false);
std::string to_text(const ResultRecord& r, bool decimal = false);
/// Renders in "json", "csv" or "text".
std::string render(const ResultRecord& r, const std::string& format, bool decimal);

/// Approximate decimal rendering with 15 significant digits, prefixed with "~".
std::string decimal_approx(const Rational& q);

/// FockState text form: one "bits-hex coefficient" line per term, sorted by bits.
std::string serialize_state(const FockState& s);
FockState deserialize_state(const std::string& text);

/// Content-addressed directory cache: the file name is the FNV-1a hash of the key,
/// the key itself is stored in the file and compared on load.
class FileStateStore : public StateStore {
public:
  explicit FileStateStore(std::filesystem::path dir);
  std::optional<FockState> load(const std::string& key) override;
  void save(const std::string& key, const FockState& state) override;
  const std::filesystem::path& dir() const { return dir_; }

private:
  std::filesystem::path path_for(const std::string& key) const;
  std::filesystem::path dir_;
};

/// Runs a batch of jobs on up to `threads` worker threads; rethrows the first exception.
class WorkerPool {
public:
  explicit WorkerPool(int threads) : threads_(threads < 1 ? 1 : threads) {}
  void run(std::vector<std::function<void()>>& jobs) const;
  TaskRunner runner() const {
    return [this](std::vector<std::function<void()>>& jobs) { run(jobs); };
  }
  int threads() const { return threads_; }

private:
  int threads_;
};

/// "hilb:3", "kummer:2", "og6:3", "og10:5".
struct Target {
  std::string kind;
  int n = 0;
};
Target parse_target(const std::string& text);

/// Parses the --surface flag: "k3", "c2=<rational>". Anything describing c1 != 0 is rejected.
SurfaceChoice parse_surface(const std::string& text);

/// Partition text "k1,k2,..." that must sum to n.
Partition parse_partition_of(const std::string& text, int n);

}  // namespace hkcob::cli
