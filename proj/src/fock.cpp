#include "hkcob/fock.hpp"

#include "hkcob/koszul.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hkcob {

// -------------------------------------------------------------- Monomial

int Monomial::size() const {
  int n = 0;
  while (n < kMaxFactors && key(n) != 0) ++n;
  return n;
}

std::vector<Factor> Monomial::factors() const {
  std::vector<Factor> out;
  for (int i = 0; i < size(); ++i) out.push_back(factor(i));
  return out;
}

int Monomial::weight() const {
  int w = 0;
  for (int i = 0; i < size(); ++i) w += factor(i).m;
  return w;
}

Monomial Monomial::from_sorted_keys(std::span<const std::uint8_t> keys) {
  if (keys.size() > static_cast<std::size_t>(kMaxFactors))
    throw std::out_of_range("Fock monomial exceeds 8 factors");
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < keys.size(); ++i) bits |= static_cast<std::uint64_t>(keys[i]) << (8 * i);
  return from_bits(bits);
}

// ------------------------------------------------------------- FockState

FockState FockState::vacuum() {
  FockState s;
  s.add(Monomial{}, 1);
  return s;
}

void FockState::add(const Monomial& m, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

void FockState::add_scaled(const FockState& other, const Rational& scale) {
  if (scale == 0) return;
  for (const auto& [m, c] : other.terms_) add(m, c * scale);
}

FockState& FockState::operator+=(const FockState& other) {
  for (const auto& [m, c] : other.terms_) add(m, c);
  return *this;
}

FockState& FockState::operator-=(const FockState& other) {
  for (const auto& [m, c] : other.terms_) add(m, -c);
  return *this;
}

FockState& FockState::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

Rational FockState::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::vector<std::pair<Monomial, Rational>> FockState::sorted_terms() const {
  std::vector<std::pair<Monomial, Rational>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::optional<int> FockState::homogeneous_weight() const {
  std::optional<int> w;
  for (const auto& [m, c] : terms_) {
    int mw = m.weight();
    if (w && *w != mw) return std::nullopt;
    w = mw;
  }
  return w;
}

// ------------------------------------------------------------- FockSpace

FockSpace::FockSpace(const SurfaceModel& model) : model_(&model) {
  if (model.dimension() > Monomial::kMaxBasis + 1)
    throw std::invalid_argument("surface model too large for the packed Fock monomial");
  for (int i = 0; i < model.dimension(); ++i)
    if (model.odd(i)) odd_mask_ |= 1u << i;
}

std::optional<std::pair<int, Monomial>> FockSpace::normal_order(std::span<std::uint8_t> keys) const {
  int sign = koszul_sort(keys, std::less<>(), [this](std::uint8_t k) { return odd_key(k); });
  for (std::size_t i = 1; i < keys.size(); ++i)
    if (keys[i] == keys[i - 1] && odd_key(keys[i])) return std::nullopt;
  return std::make_pair(sign, Monomial::from_sorted_keys(keys));
}

std::optional<std::pair<int, Monomial>> FockSpace::normal_order(const std::vector<Factor>& factors) const {
  std::vector<std::uint8_t> keys;
  keys.reserve(factors.size());
  for (const auto& f : factors) {
    if (f.m < 1 || f.m > Monomial::kMaxPart) throw std::out_of_range("creation index out of supported range 1..7");
    if (f.basis < 0 || f.basis >= model_->dimension()) throw std::out_of_range("basis index out of range");
    keys.push_back(Monomial::key_of(f));
  }
  return normal_order(std::span<std::uint8_t>(keys));
}

std::optional<std::pair<int, Monomial>> FockSpace::merge(std::span<const std::uint8_t> front,
                                                         const Monomial& m) const {
  std::uint8_t out[Monomial::kMaxFactors];
  const int msize = m.size();
  if (static_cast<int>(front.size()) + msize > Monomial::kMaxFactors)
    throw std::out_of_range("Fock monomial exceeds 8 factors");
  int sign = 1;
  std::size_t i = 0;
  int j = 0, k = 0, odd_taken_from_m = 0;
  while (i < front.size() || j < msize) {
    if (j == msize || (i < front.size() && front[i] <= m.key(j))) {
      std::uint8_t f = front[i++];
      if (j < msize && f == m.key(j) && odd_key(f)) return std::nullopt;
      // f passes the odd factors of m already placed before it
      if (odd_key(f) && (odd_taken_from_m & 1)) sign = -sign;
      out[k++] = f;
    } else {
      std::uint8_t g = m.key(j++);
      if (odd_key(g)) ++odd_taken_from_m;
      out[k++] = g;
    }
  }
  return std::make_pair(sign, Monomial::from_sorted_keys(std::span<const std::uint8_t>(out, static_cast<std::size_t>(k))));
}

int FockSpace::real_degree(const Monomial& m) const {
  int d = 0;
  for (int i = 0; i < m.size(); ++i) {
    Factor f = m.factor(i);
    d += 2 * (f.m - 1) + model_->degree(f.basis);
  }
  return d;
}

std::optional<int> FockSpace::homogeneous_real_degree(const FockState& s) const {
  std::optional<int> d;
  for (const auto& [m, c] : s.terms()) {
    int md = real_degree(m);
    if (d && *d != md) return std::nullopt;
    d = md;
  }
  return d;
}

std::string FockSpace::to_string(const Monomial& m) const {
  std::string out;
  for (int i = 0; i < m.size(); ++i) {
    Factor f = m.factor(i);
    out += "q" + std::to_string(f.m) + "(" + model_->basis(f.basis).name + ")";
  }
  return out.empty() ? "|0>" : out + "|0>";
}

std::string FockSpace::to_string(const FockState& s) const {
  if (s.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : s.sorted_terms()) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str() << "*" << to_string(m);
  }
  return os.str();
}

// ---------------------------------------------------------- operations

FockState unit_class(const FockSpace& fock, int n) {
  if (n < 0) throw std::invalid_argument("unit_class: n must be >= 0");
  std::vector<Factor> factors(static_cast<std::size_t>(n), Factor{1, fock.model().unit_index()});
  auto ordered = fock.normal_order(factors);
  FockState s;
  s.add(ordered->second, Rational(ordered->first) * inverse_factorial(n));
  return s;
}

FockState apply_q(const FockSpace& fock, int m, const GradedClass& gamma, const FockState& s) {
  if (m == 0) throw std::invalid_argument("apply_q: q_0 is not defined");
  const SurfaceModel& model = fock.model();
  FockState out;
  if (m > 0) {
    if (m > Monomial::kMaxPart) throw std::out_of_range("creation index out of supported range 1..7");
    for (const auto& [b, cb] : gamma.terms()) {
      std::uint8_t key = Monomial::key_of({m, b});
      for (const auto& [mono, c] : s.terms()) {
        auto merged = fock.merge(std::span<const std::uint8_t>(&key, 1), mono);
        if (merged) out.add(merged->second, c * cb * merged->first);
      }
    }
    return out;
  }
  const int n = -m;
  for (const auto& [mono, c] : s.terms()) {
    const int size = mono.size();
    int odd_before = 0;
    for (int j = 0; j < size; ++j) {
      Factor f = mono.factor(j);
      const bool odd_j = model.odd(f.basis);
      if (f.m == n) {
        Rational contraction = 0;
        for (const auto& [b, cb] : gamma.terms()) contraction += cb * model.pairing(b, f.basis);
        if (contraction != 0) {
          // move factor j to the front, then [q_{-n}(y), q_n(beta)] = -n int y beta
          Rational coeff = c * contraction * (-n);
          if (odd_j && (odd_before & 1)) coeff = -coeff;
          std::uint8_t rest[Monomial::kMaxFactors];
          int k = 0;
          for (int t = 0; t < size; ++t)
            if (t != j) rest[k++] = mono.key(t);
          out.add(Monomial::from_sorted_keys(std::span<const std::uint8_t>(rest, static_cast<std::size_t>(k))), coeff);
        }
      }
      if (odd_j) ++odd_before;
    }
  }
  return out;
}

Rational integrate(const FockSpace& fock, const FockState& s, int n) {
  for (const auto& [m, c] : s.terms())
    if (m.weight() != n)
      throw std::logic_error("integrate: state has weight " + std::to_string(m.weight()) + ", expected " +
                             std::to_string(n));
  std::vector<std::uint8_t> keys(static_cast<std::size_t>(n), Monomial::key_of({1, fock.model().point_index()}));
  return s.coefficient(Monomial::from_sorted_keys(keys));
}

Rational integrate_by_annihilation(const FockSpace& fock, const FockState& s, int n) {
  for (const auto& [m, c] : s.terms())
    if (m.weight() != n) throw std::logic_error("integrate_by_annihilation: weight mismatch");
  FockState t = s;
  for (int i = 0; i < n; ++i) t = apply_q(fock, -1, fock.model().unit(), t);
  return t.coefficient(Monomial{}) * sign_power(n) * inverse_factorial(n);
}

}  // namespace hkcob
