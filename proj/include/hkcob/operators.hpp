#pragma once

#include "hkcob/combinatorics.hpp"
#include "hkcob/fock.hpp"

#include <functional>
#include <map>
#include <memory>
#include <string>

namespace hkcob {

/// Coefficient function s(lambda) entering the correction term of G_d.
using CorrectionFunction = std::function<Rational(const GeneralizedPartition&)>;

/// s(lambda) = sum of squared parts (the default).
Rational correction_sum_of_squares(const GeneralizedPartition& lambda);
/// Alternative candidates, kept for calibration: sum |lambda_i| and l(lambda).
Rational correction_sum_of_abs(const GeneralizedPartition& lambda);
Rational correction_length(const GeneralizedPartition& lambda);
/// Looks up "sum_squares", "sum_abs" or "length"; throws std::invalid_argument otherwise.
CorrectionFunction correction_by_name(const std::string& name);

/// Composite operators on the Fock space of one surface model: q_lambda of small
/// diagonal pushes, the tautological operators G_d, multiplication by ch_k(T)
/// and the generalized Kummer class.
///
/// Applying q_lambda(Delta_* gamma) to a monomial only needs, for every choice
/// of factors to annihilate, the push of gamma times the annihilated classes to
/// the creation slots. Those creation words are cached per (basis class, mu).
/// The cache is guarded by a mutex, so one instance may be shared between threads.
class OperatorAlgebra {
public:
  /// `model` must outlive the algebra.
  explicit OperatorAlgebra(const SurfaceModel& model, CorrectionFunction s = correction_sum_of_squares);
  OperatorAlgebra(SurfaceModel&&, CorrectionFunction = {}) = delete;

  const SurfaceModel& model() const { return fock_.model(); }
  const FockSpace& fock() const { return fock_; }

  /// q_{lambda_1} ... q_{lambda_l}(Delta_* gamma) s with parts non-increasing from the left.
  FockState apply_q_lambda(const GeneralizedPartition& lambda, const GradedClass& gamma, const FockState& s) const;
  /// Same operator, composed factor by factor over the Kunneth terms.
  FockState apply_q_lambda_literal(const GeneralizedPartition& lambda, const GradedClass& gamma,
                                   const FockState& s) const;

  /// G_d(gamma). Throws std::domain_error unless c1(S) = 0.
  FockState apply_G(int d, const GradedClass& gamma, const FockState& s) const;
  /// G_d by summing apply_q_lambda_literal over generalized partitions with parts bounded by part_cap.
  FockState apply_G_literal(int d, const GradedClass& gamma, const FockState& s, int part_cap) const;

  /// Multiplication by ch_k of the tangent bundle of S^[n]; k >= 1.
  FockState apply_mult_ch(int k, const FockState& s) const;

private:
  struct Contraction;
  using Fragment = std::vector<std::pair<Monomial, Rational>>;

  template <class Fn>
  void for_each_contraction(const Monomial& m, Fn&& fn) const;
  const Fragment& creation_fragment(int basis_index, const Partition& mu) const;
  void add_created(FockState& out, const Partition& mu, const GradedClass& cls, const Monomial& rest,
                   const Rational& coeff) const;
  void check_c1() const;

  FockSpace fock_;
  CorrectionFunction s_;
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

/// [Kum_n(A)] = G_2(a1) G_2(a2) G_2(a3) G_2(a4) 1 in H^4(A^[n+1]); `ops` must be over the abelian model.
FockState kummer_class(const OperatorAlgebra& ops, int n);

/// The same class from its set-partition expansion in q_1 operators.
FockState kummer_class_by_set_partitions(const FockSpace& fock, int n);

}  // namespace hkcob
