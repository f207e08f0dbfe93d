#pragma once

#include "hkcob/rational.hpp"
#include "hkcob/surface.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hkcob {

/// One creation factor q_m(b) with m >= 1 and b a basis index of the surface model.
struct Factor {
  int m = 0;
  int basis = 0;
  friend bool operator==(const Factor&, const Factor&) = default;
};

/// Normal-ordered creation monomial q_{m_1}(b_1) ... q_{m_r}(b_r) |0>.
///
/// Packed into one 64-bit word, one byte per factor in canonical order
/// (m non-increasing, then basis index increasing). Limits: m <= 7,
/// basis index <= 31, at most 8 factors.
class Monomial {
public:
  static constexpr int kMaxFactors = 8;
  static constexpr int kMaxPart = 7;
  static constexpr int kMaxBasis = 31;

  Monomial() = default;
  static Monomial from_bits(std::uint64_t bits) {
    Monomial m;
    m.bits_ = bits;
    return m;
  }

  static std::uint8_t key_of(Factor f) {
    return static_cast<std::uint8_t>(((8 - f.m) << 5) | f.basis);
  }
  static Factor factor_of(std::uint8_t key) { return Factor{8 - (key >> 5), key & 31}; }

  std::uint64_t bits() const { return bits_; }
  int size() const;
  std::uint8_t key(int i) const { return static_cast<std::uint8_t>(bits_ >> (8 * i)); }
  Factor factor(int i) const { return factor_of(key(i)); }
  std::vector<Factor> factors() const;
  int weight() const;

  /// Assumes `keys` already sorted ascending.
  static Monomial from_sorted_keys(std::span<const std::uint8_t> keys);

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.bits_ < b.bits_; }

private:
  std::uint64_t bits_ = 0;
};

}  // namespace hkcob

template <>
struct std::hash<hkcob::Monomial> {
  std::size_t operator()(const hkcob::Monomial& m) const noexcept {
    std::uint64_t x = m.bits();
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    return static_cast<std::size_t>(x);
  }
};

namespace hkcob {

/// Sparse exact linear combination of normal-ordered monomials.
class FockState {
public:
  FockState() = default;

  static FockState vacuum();

  void add(const Monomial& m, const Rational& coeff);
  void add_scaled(const FockState& other, const Rational& scale);
  FockState& operator+=(const FockState& other);
  FockState& operator-=(const FockState& other);
  FockState& operator*=(const Rational& s);
  friend FockState operator+(FockState a, const FockState& b) { return a += b; }
  friend FockState operator-(FockState a, const FockState& b) { return a -= b; }
  friend FockState operator*(FockState a, const Rational& s) { return a *= s; }
  friend FockState operator*(const Rational& s, FockState a) { return a *= s; }
  bool operator==(const FockState& other) const { return terms_ == other.terms_; }

  Rational coefficient(const Monomial& m) const;
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  const std::unordered_map<Monomial, Rational>& terms() const { return terms_; }
  /// Terms sorted by monomial bits, for deterministic output.
  std::vector<std::pair<Monomial, Rational>> sorted_terms() const;

  /// Weight of every monomial if the state is weight-homogeneous (empty state: nullopt).
  std::optional<int> homogeneous_weight() const;

  void reserve(std::size_t n) { terms_.reserve(n); }

private:
  std::unordered_map<Monomial, Rational> terms_;
};

/// Fock-space bookkeeping for one surface model: parities, normal ordering and grading.
class FockSpace {
public:
  /// Keeps a pointer to `model`, which must outlive the Fock space.
  explicit FockSpace(const SurfaceModel& model);
  explicit FockSpace(SurfaceModel&&) = delete;

  const SurfaceModel& model() const { return *model_; }
  bool odd_key(std::uint8_t key) const { return (odd_mask_ >> (key & 31)) & 1u; }

  /// Normal orders an arbitrary factor sequence (read left to right as an
  /// operator product applied to |0>). Returns nullopt when the monomial
  /// vanishes (repeated odd factor), else the Koszul sign and the monomial.
  std::optional<std::pair<int, Monomial>> normal_order(std::span<std::uint8_t> keys) const;
  std::optional<std::pair<int, Monomial>> normal_order(const std::vector<Factor>& factors) const;

  /// Multiplies the creation word `front` (already sorted) onto `m` from the left.
  std::optional<std::pair<int, Monomial>> merge(std::span<const std::uint8_t> front, const Monomial& m) const;

  /// Real cohomological degree: sum over factors of 2(m - 1) + deg b.
  int real_degree(const Monomial& m) const;
  std::optional<int> homogeneous_real_degree(const FockState& s) const;

  std::string to_string(const Monomial& m) const;
  std::string to_string(const FockState& s) const;

private:
  const SurfaceModel* model_;
  std::uint32_t odd_mask_ = 0;
};

/// q_1(1)^n / n! |0>: the unit of H^*(S^[n]).
FockState unit_class(const FockSpace& fock, int n);

/// Nakajima operator q_m(gamma), m != 0, with [q_m(a), q_n(b)] = m delta_{m+n,0} (int ab).
FockState apply_q(const FockSpace& fock, int m, const GradedClass& gamma, const FockState& s);

/// Poincare integral over S^[n]: the coefficient of q_1(p)^n |0>.
/// Throws std::logic_error if some monomial has weight != n.
Rational integrate(const FockSpace& fock, const FockState& s, int n);

/// Same functional by the annihilation recipe (1/n!)(-1)^n <0| q_{-1}(1)^n s.
Rational integrate_by_annihilation(const FockSpace& fock, const FockState& s, int n);

}  // namespace hkcob
