#pragma once

#include "hkcob/chern.hpp"
#include "hkcob/combinatorics.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace hkcob {

// ------------------------------------------------------------ products

/// Chern-character numbers of a product X x Y.
ChernVector product(const ChernVector& a, const ChernVector& b);

/// int ch_dim(T): zero for every product of two positive-dimensional factors.
Rational milnor_genus(const ChernVector& v);

/// P^r with every ch-monomial (ch(T) = (r+1) e^h - 1).
ChernVector projective_class(int r);

/// Sum of coeff * vector; all vectors must share one dimension.
ChernVector linear_combination(const std::vector<std::pair<Rational, ChernVector>>& terms, std::string label = {});

// ------------------------------------------------------------ exact linear algebra

using DenseMatrix = std::vector<std::vector<Rational>>;

/// Determinant by fraction-free (Bareiss) elimination after clearing row denominators.
Rational determinant(const DenseMatrix& m);

/// Solves m x = rhs exactly; throws std::domain_error if m is singular.
std::vector<Rational> solve(const DenseMatrix& m, const std::vector<Rational>& rhs);

// ------------------------------------------------------------ basis families

enum class Family { hilb, kummer };

std::string to_string(Family f);
/// "hilb" or "kummer"; throws std::invalid_argument otherwise.
Family parse_family(const std::string& text);

/// Runs a batch of independent jobs; the default runs them in order on the calling thread.
using TaskRunner = std::function<void(std::vector<std::function<void()>>&)>;
void run_sequential(std::vector<std::function<void()>>& jobs);

/// Square system for one family in dimension 2n: rows are ch_{2ks} monomials,
/// columns the product classes X_I, both over partitions of n in canonical order.
struct BasisMatrix {
  int n = 0;
  Family family = Family::hilb;
  std::vector<Partition> rows;
  std::vector<Partition> columns;
  DenseMatrix entries;  // entries[row][column]
};

/// Products S^[I] or Kum_I(A) over a Chern engine; generators are computed once and kept.
class CobordismBasis {
public:
  explicit CobordismBasis(std::shared_ptr<ChernEngine> engine, TaskRunner runner = run_sequential);

  ChernEngine& engine() { return *engine_; }
  void set_runner(TaskRunner runner) { runner_ = std::move(runner); }

  /// S^[k] on a K3 surface or Kum_k(A).
  const ChernVector& generator(Family f, int k);
  /// X_{n_1} x ... x X_{n_r} for I = (n_1, ..., n_r).
  ChernVector member(Family f, const Partition& I);

  BasisMatrix basis_matrix(int n, Family f);
  /// Coefficients alpha_I with v = sum alpha_I X_I. Throws std::domain_error on a singular system.
  std::map<Partition, Rational> expand(const ChernVector& v, Family f);
  /// sum alpha_I X_I.
  ChernVector synthesize(const std::map<Partition, Rational>& coeffs, Family f, std::string label = {});

  /// Computes every generator of degree <= n, scheduling the ch-monomials through the runner.
  void prefetch(Family f, int n);

private:
  std::shared_ptr<ChernEngine> engine_;
  TaskRunner runner_;
  std::mutex mu_;
  std::map<std::pair<Family, int>, ChernVector> generators_;
};

/// Affine relation from chi(O) = n + 1 on every factor: n + 1 = sum alpha_I prod (n_i + 1).
bool euler_affine_check(const std::map<Partition, Rational>& coeffs, int n);

// ------------------------------------------------------------ independence

/// Matrix of (-1)^p-free chi^p values, p = 1..n, over the products of Hilbert schemes
/// of a surface with only algebraic cohomology; columns over partitions of n.
struct ChiMatrix {
  std::vector<Partition> columns;
  DenseMatrix entries;  // entries[p - 1][column]
  Rational det;
};

/// chi^p of Sigma^[I] from Goettsche's Betti numbers and multiplicativity of chi_y,
/// with Sigma = P^2 blown up in nine points.
ChiMatrix small_dimension_chi_matrix(int n);

struct IndependenceReport {
  int n = 0;
  Family family = Family::hilb;
  Rational chern_determinant;
  std::optional<ChiMatrix> chi_matrix;  // hilb family, n <= 3
  bool independent() const { return chern_determinant != 0 && (!chi_matrix || chi_matrix->det != 0); }
};

IndependenceReport independence_report(CobordismBasis& basis, int n, Family f);

/// Rows c_2^3, c_2 c_4, c_6 (c-monomials in that order) of a list of 6-dimensional vectors.
DenseMatrix chern_number_matrix_dim6(const std::vector<ChernVector>& vs);

// ------------------------------------------------------------ fixtures

namespace fixtures {

/// Chern numbers c_2^3 = 36800, c_2 c_4 = 14720, c_6 = 3200.
ChernVector k3_hilb3();
/// c_2^3 = 30208, c_2 c_4 = 6784, c_6 = 448.
ChernVector kummer3();
/// O'Grady's six-dimensional example: c_2^3 = 30720, c_2 c_4 = 7680, c_6 = 1920.
ChernVector og6();

/// Reference Kummer-basis coefficients of O'Grady's ten-dimensional example.
std::map<Partition, Rational> og10_kummer_coefficients();
/// Derived (not independent) data: the synthesis of og10_kummer_coefficients.
ChernVector og10(CobordismBasis& basis);

/// Reference basis-change tables, keyed by target dimension n.
std::map<Partition, Rational> hilb_in_kummer_basis(int n);  // n = 2..5
std::map<Partition, Rational> kummer_in_hilb_basis(int n);  // n = 2..5
std::map<Partition, Rational> og6_kummer_coefficients();

/// (-1)^p chi(Omega^p), p = 0..n.
std::vector<Rational> og6_signed_hodge_euler();
std::vector<Rational> og10_signed_hodge_euler();

}  // namespace fixtures

}  // namespace hkcob
