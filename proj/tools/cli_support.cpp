#include "cli_support.hpp"

#include "hkcob/version.hpp"

#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace hkcob::cli {

std::string decimal_approx(const Rational& q) {
  std::ostringstream out;
  out << std::setprecision(15) << "~" << q.get_d();
  return out.str();
}

json to_json(const ResultRecord& r, bool decimal) {
  json values = json::object();
  json approx = json::object();
  for (const auto& [key, v] : r.values) {
    values[key] = to_string(v);
    if (decimal) approx[key] = decimal_approx(v);
  }
  json out = {{"kind", r.kind},
              {"params", r.params},
              {"basis", r.basis},
              {"values", values},
              {"meta", {{"engine_version", kEngineVersion}, {"conventions_hash", conventions_hash(r.correction)}}}};
  if (!r.checks.empty()) out["checks"] = r.checks;
  if (decimal) out["values_decimal_approximate"] = approx;
  return out;
}

std::string to_csv(const ResultRecord& r, bool decimal) {
  std::ostringstream out;
  out << "key,value" << (decimal ? ",approx" : "") << "\n";
  for (const auto& [key, v] : r.values) {
    out << '"' << key << "\"," << to_string(v);
    if (decimal) out << "," << decimal_approx(v);
    out << "\n";
  }
  return out.str();
}

std::string to_text(const ResultRecord& r, bool decimal) {
  std::size_t kw = r.basis.size(), vw = 5;
  for (const auto& [key, v] : r.values) {
    kw = std::max(kw, key.size());
    vw = std::max(vw, to_string(v).size());
  }
  std::ostringstream out;
  out << r.kind << " " << r.params.dump() << "\n";
  auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w > s.size() ? w - s.size() : 0, ' '); };
  out << pad(r.basis, kw) << "  " << pad("value", vw) << (decimal ? "  approx" : "") << "\n";
  for (const auto& [key, v] : r.values) {
    out << pad(key, kw) << "  " << pad(to_string(v), vw);
    if (decimal) out << "  " << decimal_approx(v);
    out << "\n";
  }
  for (const auto& [name, value] : r.checks.items()) out << "check " << name << ": " << value.dump() << "\n";
  return out.str();
}

std::string render(const ResultRecord& r, const std::string& format, bool decimal) {
  if (format == "json") return to_json(r, decimal).dump(2) + "\n";
  if (format == "csv") return to_csv(r, decimal);
  if (format == "text") return to_text(r, decimal);
  throw std::invalid_argument("unknown format '" + format + "'");
}

// ------------------------------------------------------------ state cache

std::string serialize_state(const FockState& s) {
  std::ostringstream out;
  char buf[17];
  for (const auto& [m, c] : s.sorted_terms()) {
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(m.bits()));
    out << buf << ' ' << to_string(c) << '\n';
  }
  return out.str();
}

FockState deserialize_state(const std::string& text) {
  FockState s;
  std::istringstream in(text);
  std::string bits, coeff;
  while (in >> bits >> coeff) {
    if (bits.size() != 16) throw std::invalid_argument("malformed state line");
    s.add(Monomial::from_bits(std::stoull(bits, nullptr, 16)), parse_rational(coeff));
  }
  return s;
}

namespace {
constexpr const char* kStateHeader = "hkcob-state 1";
}

FileStateStore::FileStateStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::filesystem::path FileStateStore::path_for(const std::string& key) const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(key)));
  return dir_ / (std::string(buf) + ".state");
}

std::optional<FockState> FileStateStore::load(const std::string& key) {
  std::ifstream in(path_for(key));
  if (!in) return std::nullopt;
  std::string header, stored_key;
  if (!std::getline(in, header) || header != kStateHeader) return std::nullopt;
  if (!std::getline(in, stored_key) || stored_key != key) return std::nullopt;  // hash collision or stale file
  std::stringstream rest;
  rest << in.rdbuf();
  try {
    return deserialize_state(rest.str());
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void FileStateStore::save(const std::string& key, const FockState& state) {
  if (key.find('\n') != std::string::npos) throw std::invalid_argument("cache keys must be single-line");
  const auto final_path = path_for(key);
  auto tmp = final_path;
  tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << kStateHeader << '\n' << key << '\n' << serialize_state(state);
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, final_path);
}

// ------------------------------------------------------------ worker pool

void WorkerPool::run(std::vector<std::function<void()>>& jobs) const {
  if (threads_ == 1 || jobs.size() <= 1) {
    for (auto& job : jobs) job();
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        jobs[i]();
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(threads_), jobs.size());
  for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

// ------------------------------------------------------------ parsing

Target parse_target(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("target must look like kind:n, got '" + text + "'");
  Target t;
  t.kind = text.substr(0, colon);
  const std::string num = text.substr(colon + 1);
  std::size_t used = 0;
  try {
    t.n = std::stoi(num, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (num.empty() || used != num.size()) throw std::invalid_argument("bad dimension in target '" + text + "'");
  if (t.n < 1) throw std::invalid_argument("N >= 1 required");
  if (t.kind != "hilb" && t.kind != "kummer" && t.kind != "og6" && t.kind != "og10")
    throw std::invalid_argument("unknown target kind '" + t.kind + "' (hilb, kummer, og6, og10)");
  if (t.kind == "og6" && t.n != 3) throw std::invalid_argument("og6 has n = 3");
  if (t.kind == "og10" && t.n != 5) throw std::invalid_argument("og10 has n = 5");
  return t;
}

SurfaceChoice parse_surface(const std::string& text) {
  if (text == "k3") return SurfaceChoice::k3();
  if (text.rfind("c2=", 0) == 0) return SurfaceChoice::generic_c2(parse_rational(text.substr(3)));
  if (text.rfind("c1=", 0) == 0) {
    if (parse_rational(text.substr(3)) == 0) throw std::invalid_argument("c1 = 0 is implied; give c2=<rational>");
    throw std::domain_error("surfaces with c1 != 0 are not supported: the tangent-bundle operators need c1 = 0");
  }
  throw std::invalid_argument("unknown surface '" + text + "' (k3 or c2=<rational>)");
}

Partition parse_partition_of(const std::string& text, int n) {
  Partition p;
  try {
    p = Partition::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument("invalid partition '" + text + "': " + e.what());
  }
  if (p.size() != n)
    throw std::invalid_argument("invalid partition '" + text + "': parts must sum to " + std::to_string(n));
  return p;
}

}  // namespace hkcob::cli
