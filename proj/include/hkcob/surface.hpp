#pragma once

#include "hkcob/rational.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace hkcob {

/// Square matrix of exact rationals, row-major.
struct RationalMatrix {
  int size = 0;
  std::vector<Rational> entries;

  RationalMatrix() = default;
  explicit RationalMatrix(int n) : size(n), entries(static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {}
  Rational& operator()(int i, int j) { return entries[static_cast<std::size_t>(i * size + j)]; }
  const Rational& operator()(int i, int j) const { return entries[static_cast<std::size_t>(i * size + j)]; }
  bool operator==(const RationalMatrix&) const = default;

  static RationalMatrix identity(int n);
};

/// Exact inverse by Gauss-Jordan elimination; throws std::domain_error if singular.
RationalMatrix inverse(const RationalMatrix& m);

/// Element of H^*(S; Q): sparse coefficients over the model's basis.
class GradedClass {
public:
  GradedClass() = default;
  static GradedClass basis(int index, Rational coeff = 1);

  const std::map<int, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(int index) const;

  void add(int index, const Rational& coeff);
  GradedClass& operator+=(const GradedClass& other);
  GradedClass& operator*=(const Rational& s);
  friend GradedClass operator+(GradedClass a, const GradedClass& b) { return a += b; }
  friend GradedClass operator*(GradedClass a, const Rational& s) { return a *= s; }
  friend GradedClass operator*(const Rational& s, GradedClass a) { return a *= s; }
  friend bool operator==(const GradedClass&, const GradedClass&) = default;

private:
  std::map<int, Rational> terms_;
};

/// One term coeff * (b_{slots[0]} x ... x b_{slots[d-1]}) of a Kunneth decomposition.
struct KunnethTerm {
  Rational coeff;
  std::vector<int> slots;
};

/// Finite super-graded Frobenius algebra modelling H^*(S; Q) of a compact surface.
///
/// Basis elements carry a real degree 0..4 (odd degree = odd parity). The
/// product of basis elements is a precomputed table; integration takes the
/// coefficient of the point class. Immutable after construction; Kunneth
/// decompositions of small diagonals are memoised internally behind a mutex.
class SurfaceModel {
public:
  struct BasisElement {
    std::string name;
    int degree = 0;  // real degree
  };

  /// K3 lattice model with H^2 pairing U^3 + E8(-1)^2.
  static SurfaceModel k3();
  /// K3-type model with any invertible symmetric 22x22 H^2 pairing.
  static SurfaceModel k3(const RationalMatrix& h2_pairing);
  /// Surface with b1 = b3 = 0, c1 = 0 and the given H^2 pairing (any rank);
  /// Euler number rank + 2. With rank 22 this is k3(h2_pairing).
  static SurfaceModel even_surface(const RationalMatrix& h2_pairing, std::string name = {});
  /// Diagonal pairing diag(1, -1, -1, ...) of the given rank.
  static SurfaceModel even_surface(int b2);
  /// Abelian surface: exterior algebra on four odd degree-1 generators a1..a4, p = a1a2a3a4.
  static SurfaceModel abelian();

  /// The default U^3 + E8(-1)^2 lattice, as a 22x22 matrix.
  static RationalMatrix k3_lattice();

  const std::string& name() const { return name_; }
  int dimension() const { return static_cast<int>(basis_.size()); }
  const BasisElement& basis(int i) const { return basis_[static_cast<std::size_t>(i)]; }
  int degree(int i) const { return basis_[static_cast<std::size_t>(i)].degree; }
  bool odd(int i) const { return (basis_[static_cast<std::size_t>(i)].degree & 1) != 0; }
  int unit_index() const { return unit_; }
  int point_index() const { return point_; }
  int index_of(const std::string& name) const;

  bool c1_zero() const { return c1_zero_; }
  /// Topological Euler number; equals c2(S) because c1 = 0 for every built-in model.
  const Rational& euler_number() const { return euler_; }
  const Rational& c2() const { return euler_; }

  GradedClass unit() const { return GradedClass::basis(unit_); }
  GradedClass point() const { return GradedClass::basis(point_); }
  GradedClass euler_class() const { return GradedClass::basis(point_, euler_); }
  GradedClass basis_class(int i) const { return GradedClass::basis(i); }

  /// Product of two basis elements.
  const GradedClass& basis_product(int i, int j) const {
    return products_[static_cast<std::size_t>(i * dimension() + j)];
  }
  /// Integral of b_i b_j.
  const Rational& pairing(int i, int j) const { return pairing_(i, j); }
  /// Nonzero entries of row i of the inverse pairing matrix.
  const std::vector<std::pair<int, Rational>>& inverse_pairing_row(int i) const {
    return inverse_rows_[static_cast<std::size_t>(i)];
  }

  GradedClass cup(const GradedClass& a, const GradedClass& b) const;
  Rational integrate(const GradedClass& a) const;
  /// Real-degree homogeneous part.
  GradedClass homogeneous_part(const GradedClass& a, int degree) const;

  /// Kunneth terms of the diagonal class in H^*(S x S).
  std::vector<KunnethTerm> diagonal_pairs() const;
  /// Kunneth decomposition of the push-forward of gamma along S -> S^d.
  /// d = 0 yields a single slot-less term with coefficient int gamma; d = 1 gives gamma.
  std::vector<KunnethTerm> small_diagonal_push(int d, const GradedClass& gamma) const;
  /// Same for a basis element; the returned reference is stable for the model's lifetime.
  const std::vector<KunnethTerm>& small_diagonal_push_basis(int d, int basis_index) const;

  /// Stable text identifying the algebra (basis, degrees, pairing); used for cache keys.
  std::string fingerprint() const;

private:
  SurfaceModel() = default;
  void finalize();

  std::string name_;
  std::vector<BasisElement> basis_;
  std::vector<GradedClass> products_;
  RationalMatrix pairing_;
  std::vector<std::vector<std::pair<int, Rational>>> inverse_rows_;
  int unit_ = -1;
  int point_ = -1;
  bool c1_zero_ = true;
  Rational euler_;

  struct Cache;
  std::shared_ptr<Cache> cache_;
};

}  // namespace hkcob
