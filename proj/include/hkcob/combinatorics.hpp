#pragma once

#include "hkcob/rational.hpp"

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace hkcob {

/// An integer partition, parts kept non-increasing.
///
/// Ordering is the canonical listing order used everywhere in the library:
/// smaller size first, and within one size reverse lexicographic, so the
/// partitions of 4 come out as (4), (3,1), (2,2), (2,1,1), (1,1,1,1).
class Partition {
public:
  Partition() = default;
  /// Sorts the parts; throws std::invalid_argument on a non-positive part.
  explicit Partition(std::vector<int> parts);
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  int size() const;
  bool empty() const { return parts_.empty(); }
  int operator[](int i) const { return parts_[static_cast<std::size_t>(i)]; }

  /// Product over distinct part values of (multiplicity)!.
  Integer multiplicity_factorial() const;
  /// Multiplies every part by `factor`.
  Partition scaled(int factor) const;
  Partition with_part(int part) const;
  bool all_parts_even() const;

  /// "2,1,1"; the empty partition renders as "".
  std::string to_string() const;
  /// Inverse of to_string; accepts surrounding whitespace.
  static Partition parse(const std::string& text);

  friend bool operator==(const Partition&, const Partition&) = default;
  friend std::strong_ordering operator<=>(const Partition& a, const Partition& b);

private:
  std::vector<int> parts_;
};

/// All partitions of n in canonical order. partitions_of(0) = { () }.
std::vector<Partition> partitions_of(int n);

/// Partitions of n into parts no larger than max_part.
std::vector<Partition> partitions_of(int n, int max_part);

/// Finite multiset of nonzero integers, stored non-increasing.
class GeneralizedPartition {
public:
  GeneralizedPartition() = default;
  explicit GeneralizedPartition(std::vector<int> parts);
  /// Builds lambda = positive parts of `positive` and negated parts of `negative`.
  GeneralizedPartition(const Partition& positive, const Partition& negative);

  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  int size() const;
  /// lambda! : product of multiplicity factorials (not of the parts).
  Integer factorial() const;
  Partition positive_part() const;
  /// Absolute values of the negative parts.
  Partition negative_part() const;
  GeneralizedPartition negated() const;

  std::string to_string() const;
  friend bool operator==(const GeneralizedPartition&, const GeneralizedPartition&) = default;
  friend auto operator<=>(const GeneralizedPartition&, const GeneralizedPartition&) = default;

private:
  std::vector<int> parts_;
};

/// Every multiset of `length` nonzero integers with |part| <= part_cap summing to `size`.
/// Enumerated as (positive partition, negative partition) pairs.
std::vector<GeneralizedPartition> generalized_partitions(int length, int size, int part_cap);

/// Set partitions of {0, ..., n-1}; blocks sorted internally and ordered by their minimum.
std::vector<std::vector<std::vector<int>>> set_partitions(int n);

// Combinatorial identities, both sides by direct summation.
//   1: sum C(n,i)^2 = C(2n,n)
//   2: sum i C(n,i)^2 = n/2 C(2n,n)
//   3: sum i^2 C(n,i)^2 = n^3/(2(2n-1)) C(2n,n)
//   4: sum_{i<=k} (-1)^i C(n,i) = (-1)^k C(n-1,k)
//   5: sum_{i<=k} (-1)^i i C(n,i) = (-1)^k n C(n-2,k-1)
std::pair<Rational, Rational> identity_sides(int id, int n, int k = 0);
bool identity_check(int id, int n, int k = 0);

/// (double sum over 0 <= m < l <= n, closed form n/(2(2n-1)) (2n)!/n!^4).
std::pair<Rational, Rational> double_sum_identity(int n);

/// A polynomial in one family of symmetric generators (p_k or e_k),
/// monomials indexed by partitions of `degree`.
struct SymmetricExpansion {
  int degree = 0;
  std::map<Partition, Rational> coefficients;
};

/// For every partition mu of d: p_mu written in the elementary monomials e_nu.
const std::map<Partition, SymmetricExpansion>& power_to_elementary(int d);
/// For every partition nu of d: e_nu written in the power-sum monomials p_mu.
const std::map<Partition, SymmetricExpansion>& elementary_to_power(int d);

}  // namespace hkcob
