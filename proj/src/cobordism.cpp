#include "hkcob/cobordism.hpp"

#include "hkcob/genfun.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

namespace hkcob {

namespace {

std::vector<Partition> required_keys(int dim, bool even_only) {
  if (!even_only) return partitions_of(dim);
  std::vector<Partition> out;
  if (dim % 2 != 0) return out;
  for (const auto& p : partitions_of(dim / 2)) out.push_back(p.scaled(2));
  return out;
}

// Calls fn(taken, rest, multiplicity) for every sub-multiset `taken` of kappa.
template <class Fn>
void for_each_submultiset(const Partition& kappa, Fn&& fn) {
  std::vector<std::pair<int, int>> groups;  // (value, count)
  for (int p : kappa.parts()) {
    if (!groups.empty() && groups.back().first == p)
      ++groups.back().second;
    else
      groups.emplace_back(p, 1);
  }
  std::vector<int> take(groups.size(), 0);
  while (true) {
    std::vector<int> a, b;
    Integer mult = 1;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const auto [value, count] = groups[g];
      for (int i = 0; i < take[g]; ++i) a.push_back(value);
      for (int i = take[g]; i < count; ++i) b.push_back(value);
      mult *= binomial(count, take[g]);
    }
    fn(Partition(a), Partition(b), mult);
    std::size_t g = 0;
    while (g < groups.size() && take[g] == groups[g].second) take[g++] = 0;
    if (g == groups.size()) break;
    ++take[g];
  }
}

}  // namespace

ChernVector product(const ChernVector& a, const ChernVector& b) {
  ChernVector out;
  out.dim = a.dim + b.dim;
  out.even_only = a.even_only && b.even_only;
  out.label = a.label.empty() || b.label.empty() ? a.label + b.label : a.label + " x " + b.label;
  for (const auto& kappa : required_keys(out.dim, out.even_only)) {
    Rational total = 0;
    for_each_submultiset(kappa, [&](const Partition& x, const Partition& y, const Integer& mult) {
      if (x.size() != a.dim) return;
      total += Rational(mult) * a.value(x) * b.value(y);
    });
    out.ch[kappa] = total;
  }
  return out;
}

Rational milnor_genus(const ChernVector& v) {
  if (v.dim == 0) return v.value(Partition{});
  return v.value(Partition{v.dim});
}

ChernVector projective_class(int r) {
  if (r < 1) throw std::invalid_argument("projective_class: r >= 1 required");
  ChernVector out;
  out.dim = r;
  out.even_only = false;
  out.label = "P" + std::to_string(r);
  for (const auto& kappa : partitions_of(r)) {
    Rational value = 1;
    for (int k : kappa.parts()) value *= Rational(r + 1) * inverse_factorial(k);
    out.ch[kappa] = value;
  }
  return out;
}

ChernVector linear_combination(const std::vector<std::pair<Rational, ChernVector>>& terms, std::string label) {
  if (terms.empty()) throw std::invalid_argument("linear_combination: no terms");
  ChernVector out;
  out.dim = terms.front().second.dim;
  out.even_only = true;
  for (const auto& [c, v] : terms) {
    if (v.dim != out.dim) throw std::invalid_argument("linear_combination: dimension mismatch");
    out.even_only = out.even_only && v.even_only;
  }
  out.label = std::move(label);
  for (const auto& kappa : required_keys(out.dim, out.even_only)) {
    Rational total = 0;
    for (const auto& [c, v] : terms) total += c * v.value(kappa);
    out.ch[kappa] = total;
  }
  return out;
}

// ------------------------------------------------------------ linear algebra

namespace {

using IntegerMatrix = std::vector<std::vector<Integer>>;

// Multiplies each row by the lcm of its denominators; returns the product of the multipliers.
Integer clear_denominators(const DenseMatrix& m, IntegerMatrix& out) {
  Integer scale = 1;
  out.clear();
  for (const auto& row : m) {
    Integer l = 1;
    for (const auto& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Integer> irow;
    irow.reserve(row.size());
    for (const auto& x : row) irow.emplace_back(x.get_num() * (l / x.get_den()));
    out.push_back(std::move(irow));
    scale *= l;
  }
  return scale;
}

// In-place Bareiss elimination on the first `pivots` columns. Returns the sign of the row
// permutation, or 0 if a pivot column is entirely zero.
int bareiss(IntegerMatrix& a, std::size_t pivots) {
  const std::size_t rows = a.size();
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k < pivots; ++k) {
    std::size_t p = k;
    while (p < rows && a[p][k] == 0) ++p;
    if (p == rows) return 0;
    if (p != k) {
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < rows; ++i) {
      for (std::size_t j = k + 1; j < a[i].size(); ++j) {
        Integer t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign;
}

void check_square(const DenseMatrix& m) {
  for (const auto& row : m)
    if (row.size() != m.size()) throw std::invalid_argument("matrix is not square");
}

}  // namespace

Rational determinant(const DenseMatrix& m) {
  check_square(m);
  if (m.empty()) return 1;
  IntegerMatrix a;
  const Integer scale = clear_denominators(m, a);
  const int sign = bareiss(a, a.size());
  if (sign == 0) return 0;
  Rational det(a.back().back() * sign, scale);
  det.canonicalize();
  return det;
}

std::vector<Rational> solve(const DenseMatrix& m, const std::vector<Rational>& rhs) {
  check_square(m);
  if (rhs.size() != m.size()) throw std::invalid_argument("right-hand side has the wrong length");
  const std::size_t n = m.size();
  DenseMatrix aug = m;
  for (std::size_t i = 0; i < n; ++i) aug[i].push_back(rhs[i]);
  IntegerMatrix a;
  clear_denominators(aug, a);
  if (bareiss(a, n) == 0 || (n > 0 && a[n - 1][n - 1] == 0)) throw std::domain_error("singular system");
  std::vector<Rational> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational acc(a[i][n]);
    for (std::size_t j = i + 1; j < n; ++j) acc -= Rational(a[i][j]) * x[j];
    x[i] = acc / Rational(a[i][i]);
  }
  return x;
}

// ------------------------------------------------------------ families

std::string to_string(Family f) { return f == Family::hilb ? "hilb" : "kummer"; }

Family parse_family(const std::string& text) {
  if (text == "hilb") return Family::hilb;
  if (text == "kummer") return Family::kummer;
  throw std::invalid_argument("unknown family '" + text + "' (expected hilb or kummer)");
}

void run_sequential(std::vector<std::function<void()>>& jobs) {
  for (auto& job : jobs) job();
}

CobordismBasis::CobordismBasis(std::shared_ptr<ChernEngine> engine, TaskRunner runner)
    : engine_(std::move(engine)), runner_(std::move(runner)) {
  if (!engine_) throw std::invalid_argument("CobordismBasis needs an engine");
  if (!runner_) runner_ = run_sequential;
}

void CobordismBasis::prefetch(Family f, int n) {
  struct Slot {
    int k;
    Partition ks;
    Rational value;
  };
  std::vector<Slot> slots;
  {
    std::lock_guard lock(mu_);
    for (int k = 1; k <= n; ++k) {
      if (generators_.count({f, k})) continue;
      for (const auto& ks : partitions_of(k)) slots.push_back({k, ks, 0});
    }
  }
  if (slots.empty()) return;
  std::vector<std::function<void()>> jobs;
  for (auto& slot : slots)
    jobs.emplace_back([this, f, &slot] {
      slot.value = f == Family::hilb ? engine_->hilb_ch_number(slot.k, slot.ks) : engine_->kummer_ch_number(slot.k, slot.ks);
    });
  runner_(jobs);
  std::map<int, ChernVector> built;
  for (const auto& slot : slots) {
    auto& v = built[slot.k];
    v.dim = 2 * slot.k;
    v.label = (f == Family::hilb ? "S^[" : "Kum_") + std::to_string(slot.k) + (f == Family::hilb ? "]" : "");
    v.ch[slot.ks.scaled(2)] = slot.value;
  }
  std::lock_guard lock(mu_);
  for (auto& [k, v] : built) generators_.emplace(std::make_pair(f, k), std::move(v));
}

const ChernVector& CobordismBasis::generator(Family f, int k) {
  if (k < 1) throw std::invalid_argument("generator index must be >= 1");
  {
    std::lock_guard lock(mu_);
    if (auto it = generators_.find({f, k}); it != generators_.end()) return it->second;
  }
  prefetch(f, k);
  std::lock_guard lock(mu_);
  return generators_.at({f, k});
}

ChernVector CobordismBasis::member(Family f, const Partition& I) {
  ChernVector out = unit_chern_vector();
  for (int part : I.parts()) out = product(out, generator(f, part));
  out.label = (f == Family::hilb ? "S^[" : "Kum_[") + I.to_string() + "]";
  return out;
}

BasisMatrix CobordismBasis::basis_matrix(int n, Family f) {
  if (n < 1) throw std::invalid_argument("n >= 1 required");
  prefetch(f, n);
  BasisMatrix bm;
  bm.n = n;
  bm.family = f;
  bm.rows = partitions_of(n);
  bm.columns = bm.rows;
  bm.entries.assign(bm.rows.size(), std::vector<Rational>(bm.columns.size()));
  for (std::size_t c = 0; c < bm.columns.size(); ++c) {
    const ChernVector m = member(f, bm.columns[c]);
    for (std::size_t r = 0; r < bm.rows.size(); ++r) bm.entries[r][c] = m.even(bm.rows[r]);
  }
  return bm;
}

std::map<Partition, Rational> CobordismBasis::expand(const ChernVector& v, Family f) {
  if (!v.even_only) throw std::invalid_argument("expand: target must have vanishing odd Chern classes");
  if (v.dim < 2 || v.dim % 2 != 0) throw std::invalid_argument("expand: target dimension must be even and positive");
  const int n = v.dim / 2;
  const BasisMatrix bm = basis_matrix(n, f);
  std::vector<Rational> rhs;
  for (const auto& ks : bm.rows) rhs.push_back(v.even(ks));
  std::vector<Rational> x;
  try {
    x = solve(bm.entries, rhs);
  } catch (const std::domain_error&) {
    throw std::domain_error("singular " + to_string(f) + " basis matrix in dimension " + std::to_string(v.dim));
  }
  std::map<Partition, Rational> out;
  for (std::size_t c = 0; c < bm.columns.size(); ++c) out[bm.columns[c]] = x[c];
  return out;
}

ChernVector CobordismBasis::synthesize(const std::map<Partition, Rational>& coeffs, Family f, std::string label) {
  std::vector<std::pair<Rational, ChernVector>> terms;
  for (const auto& [I, c] : coeffs) terms.emplace_back(c, member(f, I));
  return linear_combination(terms, std::move(label));
}

bool euler_affine_check(const std::map<Partition, Rational>& coeffs, int n) {
  Rational total = 0;
  for (const auto& [I, alpha] : coeffs) {
    if (I.size() != n) return false;
    Rational prod = 1;
    for (int part : I.parts()) prod *= part + 1;
    total += alpha * prod;
  }
  return total == n + 1;
}

// ------------------------------------------------------------ independence

ChiMatrix small_dimension_chi_matrix(int n) {
  if (n < 1) throw std::invalid_argument("n >= 1 required");
  std::vector<YPolynomial> chi(static_cast<std::size_t>(n + 1));
  for (int m = 1; m <= n; ++m)
    chi[static_cast<std::size_t>(m)] = chi_y_from_betti(gottsche_betti(BettiVector::rational_elliptic(), m));
  ChiMatrix out;
  out.columns = partitions_of(n);
  out.entries.assign(static_cast<std::size_t>(n), std::vector<Rational>(out.columns.size()));
  for (std::size_t c = 0; c < out.columns.size(); ++c) {
    YPolynomial p(Rational(1));
    for (int part : out.columns[c].parts()) p *= chi[static_cast<std::size_t>(part)];
    for (int i = 1; i <= n; ++i) out.entries[static_cast<std::size_t>(i - 1)][c] = p[i];
  }
  out.det = determinant(out.entries);
  return out;
}

IndependenceReport independence_report(CobordismBasis& basis, int n, Family f) {
  IndependenceReport r;
  r.n = n;
  r.family = f;
  r.chern_determinant = determinant(basis.basis_matrix(n, f).entries);
  if (f == Family::hilb && n <= 3) r.chi_matrix = small_dimension_chi_matrix(n);
  return r;
}

DenseMatrix chern_number_matrix_dim6(const std::vector<ChernVector>& vs) {
  DenseMatrix out;
  for (const auto& v : vs) {
    if (v.dim != 6) throw std::invalid_argument("chern_number_matrix_dim6: dimension 6 required");
    const auto c = ch_to_c(v);
    out.push_back({c.at(Partition{2, 2, 2}), c.at(Partition{4, 2}), c.at(Partition{6})});
  }
  return out;
}

// ------------------------------------------------------------ fixtures

namespace fixtures {

namespace {

ChernVector from_c_dim6(long c222, long c42, long c6, const std::string& label) {
  return c_to_ch(6, {{Partition{2, 2, 2}, c222}, {Partition{4, 2}, c42}, {Partition{6}, c6}}, true, label);
}

std::map<Partition, Rational> table(int n, const std::vector<std::pair<long, long>>& values) {
  const auto parts = partitions_of(n);
  if (parts.size() != values.size()) throw std::logic_error("fixture table size mismatch");
  std::map<Partition, Rational> out;
  for (std::size_t i = 0; i < parts.size(); ++i) out[parts[i]] = frac(values[i].first, values[i].second);
  return out;
}

std::vector<Rational> ints(std::initializer_list<long> xs) {
  std::vector<Rational> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

ChernVector k3_hilb3() { return from_c_dim6(36800, 14720, 3200, "K3^[3]"); }
ChernVector kummer3() { return from_c_dim6(30208, 6784, 448, "Kum_3"); }
ChernVector og6() { return from_c_dim6(30720, 7680, 1920, "OG6"); }

std::map<Partition, Rational> og10_kummer_coefficients() {
  return table(5, {{25, 168}, {67, 700}, {3, 700}, {163, 1600}, {2617, 37800}, {493, 12600}, {17, 1920}});
}

ChernVector og10(CobordismBasis& basis) {
  return basis.synthesize(og10_kummer_coefficients(), Family::kummer, "OG10 (derived from Kummer expansion)");
}

std::map<Partition, Rational> hilb_in_kummer_basis(int n) {
  switch (n) {
    case 2: return table(2, {{1, 3}, {1, 2}});
    case 3: return table(3, {{1, 5}, {14, 45}, {1, 6}});
    case 4: return table(4, {{1, 7}, {7, 40}, {1, 21}, {47, 315}, {1, 24}});
    case 5: return table(5, {{1, 9}, {62, 525}, {4, 75}, {49, 600}, {23, 525}, {151, 3150}, {1, 120}});
    default: throw std::out_of_range("no reference expansion for n = " + std::to_string(n));
  }
}

std::map<Partition, Rational> kummer_in_hilb_basis(int n) {
  switch (n) {
    case 2: return table(2, {{3, 1}, {-3, 2}});
    case 3: return table(3, {{5, 1}, {-14, 3}, {3, 2}});
    case 4: return table(4, {{7, 1}, {-49, 8}, {-3, 1}, {67, 12}, {-21, 16}});
    case 5: return table(5, {{9, 1}, {-186, 25}, {-36, 5}, {1287, 200}, {159, 25}, {-577, 100}, {423, 400}});
    default: throw std::out_of_range("no reference expansion for n = " + std::to_string(n));
  }
}

std::map<Partition, Rational> og6_kummer_coefficients() { return table(3, {{6, 5}, {-16, 45}, {1, 6}}); }

std::vector<Rational> og6_signed_hodge_euler() { return ints({4, 24, 348, 1168}); }
std::vector<Rational> og10_signed_hodge_euler() { return ints({6, 111, 1062, 7173, 33534, 93132}); }

}  // namespace fixtures

}  // namespace hkcob
