#include "hkcob/combinatorics.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hkcob {

// ---------------------------------------------------------------- Partition

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int p : parts_)
    if (p <= 0) throw std::invalid_argument("partition parts must be positive");
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

int Partition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

Integer Partition::multiplicity_factorial() const {
  Integer out = 1;
  std::size_t i = 0;
  while (i < parts_.size()) {
    std::size_t j = i;
    while (j < parts_.size() && parts_[j] == parts_[i]) ++j;
    out *= factorial(static_cast<long>(j - i));
    i = j;
  }
  return out;
}

Partition Partition::scaled(int factor) const {
  std::vector<int> out = parts_;
  for (int& p : out) p *= factor;
  return Partition(std::move(out));
}

Partition Partition::with_part(int part) const {
  std::vector<int> out = parts_;
  out.push_back(part);
  return Partition(std::move(out));
}

bool Partition::all_parts_even() const {
  return std::all_of(parts_.begin(), parts_.end(), [](int p) { return p % 2 == 0; });
}

std::string Partition::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out;
}

Partition Partition::parse(const std::string& text) {
  std::vector<int> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) {
      if (text.find_first_not_of(" \t") == std::string::npos) break;
      throw std::invalid_argument("empty part in partition '" + text + "'");
    }
    item = item.substr(b, e - b + 1);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed partition '" + text + "'");
    }
    if (used != item.size() || v <= 0) throw std::invalid_argument("malformed partition '" + text + "'");
    parts.push_back(v);
  }
  return Partition(std::move(parts));
}

std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  // reverse lexicographic within one size
  return std::lexicographical_compare_three_way(b.parts_.begin(), b.parts_.end(), a.parts_.begin(),
                                                a.parts_.end());
}

std::vector<Partition> partitions_of(int n, int max_part) {
  if (n < 0) throw std::invalid_argument("partitions_of: n must be non-negative");
  std::vector<Partition> out;
  std::vector<int> current;
  std::function<void(int, int)> rec = [&](int remaining, int cap) {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    for (int p = std::min(remaining, cap); p >= 1; --p) {
      current.push_back(p);
      rec(remaining - p, p);
      current.pop_back();
    }
  };
  rec(n, max_part);
  return out;
}

std::vector<Partition> partitions_of(int n) { return partitions_of(n, n); }

// ---------------------------------------------------- GeneralizedPartition

GeneralizedPartition::GeneralizedPartition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int p : parts_)
    if (p == 0) throw std::invalid_argument("generalized partition parts must be nonzero");
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

GeneralizedPartition::GeneralizedPartition(const Partition& positive, const Partition& negative) {
  parts_ = positive.parts();
  for (auto it = negative.parts().rbegin(); it != negative.parts().rend(); ++it) parts_.push_back(-*it);
}

int GeneralizedPartition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

Integer GeneralizedPartition::factorial() const {
  Integer out = 1;
  std::size_t i = 0;
  while (i < parts_.size()) {
    std::size_t j = i;
    while (j < parts_.size() && parts_[j] == parts_[i]) ++j;
    out *= hkcob::factorial(static_cast<long>(j - i));
    i = j;
  }
  return out;
}

Partition GeneralizedPartition::positive_part() const {
  std::vector<int> out;
  for (int p : parts_)
    if (p > 0) out.push_back(p);
  return Partition(std::move(out));
}

Partition GeneralizedPartition::negative_part() const {
  std::vector<int> out;
  for (int p : parts_)
    if (p < 0) out.push_back(-p);
  return Partition(std::move(out));
}

GeneralizedPartition GeneralizedPartition::negated() const {
  std::vector<int> out = parts_;
  for (int& p : out) p = -p;
  return GeneralizedPartition(std::move(out));
}

std::string GeneralizedPartition::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out + ")";
}

std::vector<GeneralizedPartition> generalized_partitions(int length, int size, int part_cap) {
  if (part_cap < 1) throw std::invalid_argument("generalized_partitions: part_cap must be >= 1");
  std::vector<GeneralizedPartition> out;
  if (length < 0) return out;
  // positive partition of a into k parts, negative partition of a - size into length - k parts
  int max_pos = length * part_cap;
  for (int k = 0; k <= length; ++k) {
    for (int a = 0; a <= max_pos; ++a) {
      int b = a - size;
      if (b < 0) continue;
      for (const auto& pos : partitions_of(a, part_cap)) {
        if (pos.length() != k) continue;
        for (const auto& neg : partitions_of(b, part_cap)) {
          if (neg.length() != length - k) continue;
          out.emplace_back(pos, neg);
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::vector<std::vector<std::vector<int>>> set_partitions(int n) {
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<int> block_of(static_cast<std::size_t>(n), 0);
  // restricted growth strings
  std::function<void(int, int)> rec = [&](int i, int blocks) {
    if (i == n) {
      std::vector<std::vector<int>> p(static_cast<std::size_t>(blocks));
      for (int j = 0; j < n; ++j) p[static_cast<std::size_t>(block_of[static_cast<std::size_t>(j)])].push_back(j);
      out.push_back(std::move(p));
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      block_of[static_cast<std::size_t>(i)] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  rec(0, 0);
  return out;
}

// ----------------------------------------------------------- identities

std::pair<Rational, Rational> identity_sides(int id, int n, int k) {
  if (n < 1) throw std::invalid_argument("identity_sides: n must be >= 1");
  Rational lhs = 0, rhs = 0;
  Rational central(binomial(2 * n, n));
  switch (id) {
    case 1:
      for (int i = 0; i <= n; ++i) lhs += binomial(n, i) * binomial(n, i);
      rhs = central;
      break;
    case 2:
      for (int i = 0; i <= n; ++i) lhs += i * binomial(n, i) * binomial(n, i);
      rhs = frac(n, 2) * central;
      break;
    case 3:
      for (int i = 0; i <= n; ++i) lhs += Integer(i) * i * binomial(n, i) * binomial(n, i);
      rhs = Rational(Integer(n) * n * n, Integer(2 * (2 * n - 1))) * central;
      break;
    case 4:
      if (k < 0 || k > n) throw std::invalid_argument("identity 4 requires 0 <= k <= n");
      for (int i = 0; i <= k; ++i) lhs += sign_power(i) * Rational(binomial(n, i));
      rhs = sign_power(k) * Rational(binomial(n - 1, k));
      break;
    case 5:
      if (k < 0 || k > n) throw std::invalid_argument("identity 5 requires 0 <= k <= n");
      for (int i = 0; i <= k; ++i) lhs += sign_power(i) * i * Rational(binomial(n, i));
      rhs = sign_power(k) * n * Rational(binomial(n - 2, k - 1));
      break;
    default:
      throw std::invalid_argument("identity id must be in 1..5");
  }
  return {lhs, rhs};
}

bool identity_check(int id, int n, int k) {
  auto [lhs, rhs] = identity_sides(id, n, k);
  return lhs == rhs;
}

std::pair<Rational, Rational> double_sum_identity(int n) {
  if (n < 1) throw std::invalid_argument("double_sum_identity: n must be >= 1");
  Rational lhs = 0;
  for (int l = 0; l <= n; ++l)
    for (int m = 0; m < l; ++m)
      lhs += sign_power(m + l + 1) * (l - m) * inverse_factorial(m) * inverse_factorial(l) *
             inverse_factorial(n - m) * inverse_factorial(n - l);
  Rational fn(factorial(n));
  Rational rhs = Rational(n, 2 * (2 * n - 1)) * Rational(factorial(2 * n)) / (fn * fn * fn * fn);
  return {lhs, rhs};
}

// ------------------------------------------------- symmetric functions

namespace {

using Poly = std::map<Partition, Rational>;

void add_scaled(Poly& acc, const Poly& p, const Rational& s) {
  for (const auto& [m, c] : p) {
    auto& slot = acc[m];
    slot += c * s;
    if (slot == 0) acc.erase(m);
  }
}

Poly multiply(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      std::vector<int> parts = ma.parts();
      parts.insert(parts.end(), mb.parts().begin(), mb.parts().end());
      Partition m(std::move(parts));
      auto& slot = out[m];
      slot += ca * cb;
      if (slot == 0) out.erase(m);
    }
  return out;
}

Poly generator(int k) {
  if (k == 0) return Poly{{Partition{}, Rational(1)}};
  return Poly{{Partition{k}, Rational(1)}};
}

// Newton: p_k = sum_{i=1}^{k-1} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k
std::vector<Poly> single_power_sums(int d) {
  std::vector<Poly> p(static_cast<std::size_t>(d + 1));
  for (int k = 1; k <= d; ++k) {
    Poly acc;
    for (int i = 1; i < k; ++i)
      add_scaled(acc, multiply(generator(i), p[static_cast<std::size_t>(k - i)]), sign_power(i - 1));
    add_scaled(acc, generator(k), sign_power(k - 1) * k);
    p[static_cast<std::size_t>(k)] = std::move(acc);
  }
  return p;
}

// k e_k = sum_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i
std::vector<Poly> single_elementary(int d) {
  std::vector<Poly> e(static_cast<std::size_t>(d + 1));
  e[0] = generator(0);
  for (int k = 1; k <= d; ++k) {
    Poly acc;
    for (int i = 1; i <= k; ++i)
      add_scaled(acc, multiply(e[static_cast<std::size_t>(k - i)], generator(i)), sign_power(i - 1));
    Poly scaled;
    add_scaled(scaled, acc, frac(1, k));
    e[static_cast<std::size_t>(k)] = std::move(scaled);
  }
  return e;
}

std::map<Partition, SymmetricExpansion> expand_monomials(int d, const std::vector<Poly>& singles) {
  std::map<Partition, SymmetricExpansion> out;
  for (const auto& mu : partitions_of(d)) {
    Poly acc = generator(0);
    for (int part : mu.parts()) acc = multiply(acc, singles[static_cast<std::size_t>(part)]);
    out[mu] = SymmetricExpansion{d, std::move(acc)};
  }
  return out;
}

template <class Builder>
const std::map<Partition, SymmetricExpansion>& cached(std::map<int, std::map<Partition, SymmetricExpansion>>& cache,
                                                      std::mutex& mu, int d, Builder build) {
  if (d < 0) throw std::invalid_argument("symmetric expansion degree must be non-negative");
  std::lock_guard lock(mu);
  auto it = cache.find(d);
  if (it == cache.end()) it = cache.emplace(d, build(d)).first;
  return it->second;
}

}  // namespace

const std::map<Partition, SymmetricExpansion>& power_to_elementary(int d) {
  static std::map<int, std::map<Partition, SymmetricExpansion>> cache;
  static std::mutex mu;
  return cached(cache, mu, d, [](int deg) { return expand_monomials(deg, single_power_sums(deg)); });
}

const std::map<Partition, SymmetricExpansion>& elementary_to_power(int d) {
  static std::map<int, std::map<Partition, SymmetricExpansion>> cache;
  static std::mutex mu;
  return cached(cache, mu, d, [](int deg) { return expand_monomials(deg, single_elementary(deg)); });
}

}  // namespace hkcob
