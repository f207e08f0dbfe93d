#pragma once

#include "hkcob/combinatorics.hpp"
#include "hkcob/operators.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

namespace hkcob {

/// Chern-character numbers of a stably complex manifold of complex dimension `dim`:
/// ch[kappa] = int ch_{kappa_1} ... ch_{kappa_r}(T) for every partition kappa of dim.
///
/// Even-only vectors (odd Chern classes vanish) store the all-even partitions only;
/// every other entry is zero by convention.
struct ChernVector {
  int dim = 0;
  bool even_only = true;
  std::map<Partition, Rational> ch;
  std::string label;

  /// ch[kappa]; zero for odd-index monomials of even-only vectors. Throws if kappa is not a partition of dim.
  Rational value(const Partition& kappa) const;
  /// Value of ch_{2k_1} ... ch_{2k_r} for a partition ks of dim / 2.
  Rational even(const Partition& ks) const { return value(ks.scaled(2)); }
  /// Throws std::invalid_argument unless every required partition is present.
  void validate() const;

  friend bool operator==(const ChernVector& a, const ChernVector& b) {
    return a.dim == b.dim && a.even_only == b.even_only && a.ch == b.ch;
  }
};

/// The point: dimension 0, value 1.
ChernVector unit_chern_vector();

/// Chern numbers int c_nu for partitions nu of dim (all-even nu only for even-only vectors).
std::map<Partition, Rational> ch_to_c(const ChernVector& v);
/// Inverse of ch_to_c.
ChernVector c_to_ch(int dim, const std::map<Partition, Rational>& c_values, bool even_only = true,
                    std::string label = {});

// Closed forms.
Rational closed_form_hilb_top(int n, const Rational& c2);
Rational closed_form_kummer_top(int n);
/// int ch_{2k} ch_{2n-2k} over Kum_n; 0 < k < n.
Rational closed_form_kummer_double(int n, int k);

/// A multiplicative genus as a universal polynomial in Chern classes, keyed by c-index partitions.
struct GenusPolynomial {
  int dim = 0;
  std::string name;
  std::map<Partition, YPolynomial> coefficients;
};

/// Q(x) = 1 + sum_{k>=1} q_k x^k, coefficients possibly depending on y.
struct CharacteristicSeries {
  std::string name;
  std::function<YPolynomial(int)> coefficient;  // coefficient(k) of x^k, coefficient(0) == 1
};

CharacteristicSeries todd_series();
/// Hirzebruch's normalized series x(1+y)/(1 - e^{-x(1+y)}) - xy: T_y = sum_p chi(Omega^p) y^p.
CharacteristicSeries chi_y_series();

Rational bernoulli(int k);

/// Degree-dim part of prod Q(x_i) in elementary symmetric (Chern) monomials.
GenusPolynomial genus_polynomial(const CharacteristicSeries& series, int dim);
/// The Milnor genus ch_dim = p_dim / dim! as a Chern polynomial.
GenusPolynomial milnor_genus_polynomial(int dim);

/// Pairs the genus with the Chern numbers of v. Throws on a dimension mismatch.
YPolynomial evaluate_genus(const GenusPolynomial& g, const ChernVector& v);

/// (-1)^p chi^p for p = 0..dim from a chi_y evaluation.
std::vector<Rational> signed_hodge_euler_list(const YPolynomial& chi_y);

/// Backing store for intermediate Fock states, keyed by a content string.
class StateStore {
public:
  virtual ~StateStore() = default;
  virtual std::optional<FockState> load(const std::string& key) = 0;
  virtual void save(const std::string& key, const FockState& state) = 0;
};

/// Which surface a Hilbert-scheme computation runs on.
struct SurfaceChoice {
  enum class Kind { k3, model, generic_c2 } kind = Kind::k3;
  std::shared_ptr<const SurfaceModel> model;  // Kind::model
  Rational c2 = 24;                           // Kind::generic_c2

  static SurfaceChoice k3() { return {}; }
  static SurfaceChoice of(std::shared_ptr<const SurfaceModel> m);
  /// A c1 = 0 surface known only through c2; values are interpolated from small models.
  static SurfaceChoice generic_c2(const Rational& c2);
  std::string describe() const;
};

/// Computes Chern-character numbers by composing ch-multiplication operators.
///
/// States obtained after applying a prefix ch_{a_1} ... ch_{a_j} to the start
/// class are memoised, so all partitions of one dimension share work. The memo
/// is guarded by a mutex: one engine may serve several worker threads.
class ChernEngine {
public:
  explicit ChernEngine(CorrectionFunction s = correction_sum_of_squares, std::string s_name = "sum_squares");
  ~ChernEngine();
  ChernEngine(const ChernEngine&) = delete;
  ChernEngine& operator=(const ChernEngine&) = delete;

  void set_store(std::shared_ptr<StateStore> store) { store_ = std::move(store); }

  /// int_{S^[n]} prod ch_{2 k_i}(T); ks a partition of n.
  Rational hilb_ch_number(int n, const Partition& ks, const SurfaceChoice& surface = SurfaceChoice::k3());
  /// int_{Kum_n(A)} prod ch_{2 k_i}(T); ks a partition of n.
  Rational kummer_ch_number(int n, const Partition& ks);

  ChernVector hilb_vector(int n, const SurfaceChoice& surface = SurfaceChoice::k3());
  ChernVector kummer_vector(int n);

  /// Degree bound used by generic-c2 interpolation (values are polynomials in c2 of degree <= n).
  static int interpolation_degree(int n) { return n; }

private:
  struct Context;
  Context& context_for(const std::string& key, const std::function<std::shared_ptr<const SurfaceModel>()>& make);
  Rational run(Context& ctx, const FockState& start, const std::string& start_key, int weight, const Partition& ks);
  Rational hilb_on_model(int n, const Partition& ks, const std::shared_ptr<const SurfaceModel>& model,
                         const std::string& key);

  CorrectionFunction s_;
  std::string s_name_;
  std::shared_ptr<StateStore> store_;
  std::mutex mu_;
  std::map<std::string, std::unique_ptr<Context>> contexts_;
};

}  // namespace hkcob
