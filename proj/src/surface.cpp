#include "hkcob/surface.hpp"

#include "hkcob/koszul.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace hkcob {

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix inverse(const RationalMatrix& m) {
  const int n = m.size;
  RationalMatrix a = m;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (a(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw std::domain_error("matrix is singular");
    if (pivot != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    Rational scale = 1 / a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) *= scale;
      inv(col, j) *= scale;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      Rational f = a(r, col);
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

// ----------------------------------------------------------- GradedClass

GradedClass GradedClass::basis(int index, Rational coeff) {
  GradedClass c;
  c.add(index, coeff);
  return c;
}

Rational GradedClass::coefficient(int index) const {
  auto it = terms_.find(index);
  return it == terms_.end() ? Rational(0) : it->second;
}

void GradedClass::add(int index, const Rational& coeff) {
  if (coeff == 0) return;
  auto& slot = terms_[index];
  slot += coeff;
  if (slot == 0) terms_.erase(index);
}

GradedClass& GradedClass::operator+=(const GradedClass& other) {
  for (const auto& [i, c] : other.terms_) add(i, c);
  return *this;
}

GradedClass& GradedClass::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [i, c] : terms_) c *= s;
  return *this;
}

// ---------------------------------------------------------- SurfaceModel

struct SurfaceModel::Cache {
  std::mutex mu;
  std::map<std::pair<int, int>, std::vector<KunnethTerm>> pushes;
};

RationalMatrix SurfaceModel::k3_lattice() {
  RationalMatrix m(22);
  for (int b = 0; b < 3; ++b) {
    m(2 * b, 2 * b + 1) = 1;
    m(2 * b + 1, 2 * b) = 1;
  }
  // E8 Dynkin edges (Bourbaki labels 1..8): 1-3, 3-4, 4-5, 5-6, 6-7, 7-8, 2-4
  const int edges[7][2] = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}};
  for (int copy = 0; copy < 2; ++copy) {
    int off = 6 + 8 * copy;
    for (int i = 0; i < 8; ++i) m(off + i, off + i) = -2;
    for (const auto& e : edges) {
      m(off + e[0], off + e[1]) = 1;
      m(off + e[1], off + e[0]) = 1;
    }
  }
  return m;
}

SurfaceModel SurfaceModel::k3() { return k3(k3_lattice()); }

SurfaceModel SurfaceModel::k3(const RationalMatrix& h2_pairing) {
  if (h2_pairing.size != 22) throw std::invalid_argument("K3 model needs a 22x22 H^2 pairing");
  return even_surface(h2_pairing, "k3");
}

SurfaceModel SurfaceModel::even_surface(int b2) {
  if (b2 < 0) throw std::invalid_argument("b2 must be non-negative");
  RationalMatrix m(b2);
  for (int i = 0; i < b2; ++i) m(i, i) = (i == 0) ? 1 : -1;
  return even_surface(m, "even_b2=" + std::to_string(b2));
}

SurfaceModel SurfaceModel::even_surface(const RationalMatrix& h2_pairing, std::string name) {
  const int r = h2_pairing.size;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (h2_pairing(i, j) != h2_pairing(j, i)) throw std::invalid_argument("H^2 pairing must be symmetric");
  (void)inverse(h2_pairing);  // throws if degenerate

  SurfaceModel s;
  s.name_ = name.empty() ? "even_b2=" + std::to_string(r) : std::move(name);
  s.basis_.push_back({"1", 0});
  for (int i = 0; i < r; ++i) s.basis_.push_back({"e" + std::to_string(i + 1), 2});
  s.basis_.push_back({"p", 4});
  s.unit_ = 0;
  s.point_ = r + 1;
  const int n = r + 2;
  s.products_.assign(static_cast<std::size_t>(n * n), GradedClass{});
  for (int i = 0; i < n; ++i) {
    s.products_[static_cast<std::size_t>(0 * n + i)] = GradedClass::basis(i);
    s.products_[static_cast<std::size_t>(i * n + 0)] = GradedClass::basis(i);
  }
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (h2_pairing(i, j) != 0)
        s.products_[static_cast<std::size_t>((i + 1) * n + (j + 1))] = GradedClass::basis(s.point_, h2_pairing(i, j));
  s.euler_ = r + 2;
  s.finalize();
  return s;
}

SurfaceModel SurfaceModel::abelian() {
  SurfaceModel s;
  s.name_ = "abelian";
  // basis: subsets of {0,1,2,3} ordered by size, then lexicographically
  std::vector<unsigned> masks;
  for (int size = 0; size <= 4; ++size)
    for (unsigned m = 0; m < 16; ++m)
      if (__builtin_popcount(m) == size) masks.push_back(m);
  std::map<unsigned, int> index;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    unsigned m = masks[i];
    std::string name;
    for (int g = 0; g < 4; ++g)
      if (m & (1u << g)) name += "a" + std::to_string(g + 1);
    if (name.empty()) name = "1";
    s.basis_.push_back({name, __builtin_popcount(m)});
    index[m] = static_cast<int>(i);
  }
  s.unit_ = index[0];
  s.point_ = index[15];
  const int n = 16;
  s.products_.assign(static_cast<std::size_t>(n * n), GradedClass{});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      unsigned a = masks[static_cast<std::size_t>(i)], b = masks[static_cast<std::size_t>(j)];
      if (a & b) continue;
      // sign of merging the increasing generator words a and b
      int inversions = 0;
      for (int g = 0; g < 4; ++g)
        if (b & (1u << g)) inversions += __builtin_popcount(a >> (g + 1));
      Rational sign = (inversions % 2 == 0) ? 1 : -1;
      s.products_[static_cast<std::size_t>(i * n + j)] = GradedClass::basis(index[a | b], sign);
    }
  s.euler_ = 0;
  s.finalize();
  return s;
}

void SurfaceModel::finalize() {
  const int n = dimension();
  pairing_ = RationalMatrix(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) pairing_(i, j) = basis_product(i, j).coefficient(point_);
  RationalMatrix inv = inverse(pairing_);
  inverse_rows_.assign(static_cast<std::size_t>(n), {});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (inv(i, j) != 0) inverse_rows_[static_cast<std::size_t>(i)].emplace_back(j, inv(i, j));
  cache_ = std::make_shared<Cache>();
}

int SurfaceModel::index_of(const std::string& name) const {
  for (int i = 0; i < dimension(); ++i)
    if (basis_[static_cast<std::size_t>(i)].name == name) return i;
  throw std::invalid_argument("no basis class named '" + name + "' in model " + name_);
}

GradedClass SurfaceModel::cup(const GradedClass& a, const GradedClass& b) const {
  GradedClass out;
  for (const auto& [i, ci] : a.terms())
    for (const auto& [j, cj] : b.terms())
      for (const auto& [k, ck] : basis_product(i, j).terms()) out.add(k, ci * cj * ck);
  return out;
}

Rational SurfaceModel::integrate(const GradedClass& a) const { return a.coefficient(point_); }

GradedClass SurfaceModel::homogeneous_part(const GradedClass& a, int deg) const {
  GradedClass out;
  for (const auto& [i, c] : a.terms())
    if (degree(i) == deg) out.add(i, c);
  return out;
}

const std::vector<KunnethTerm>& SurfaceModel::small_diagonal_push_basis(int d, int basis_index) const {
  if (d < 0) throw std::invalid_argument("small_diagonal_push: d must be >= 0");
  std::lock_guard lock(cache_->mu);
  auto key = std::make_pair(d, basis_index);
  if (auto it = cache_->pushes.find(key); it != cache_->pushes.end()) return it->second;

  // Coefficients C_a of b_{a_1} x ... x b_{a_d} are fixed by
  //   int_{S^d} Delta_*(x) (u_1 x ... x u_d) = int_S x u_1 ... u_d,
  // which gives C_a = eps(a) sum_t T_t prod_i Pinv(t_i, a_i), with
  // T_t = int x b_{t_1} ... b_{t_d} and eps(a) the Koszul sign of the odd slots.
  std::map<std::vector<int>, Rational> acc;
  const int n = dimension();
  std::vector<int> t(static_cast<std::size_t>(d));
  std::function<void(int, const GradedClass&)> walk = [&](int slot, const GradedClass& running) {
    if (running.is_zero()) return;
    if (slot == d) {
      Rational value = integrate(running);
      if (value == 0) return;
      std::vector<int> a(static_cast<std::size_t>(d));
      std::function<void(int, Rational)> expand = [&](int i, Rational coeff) {
        if (i == d) {
          // eps(a) = (-1)^{sum_{i>j} |a_i||a_j|}
          if (pairwise_odd_sign(std::span<const int>(a), [this](int k) { return odd(k); }) < 0) coeff = -coeff;
          auto& slot_value = acc[a];
          slot_value += coeff;
          if (slot_value == 0) acc.erase(a);
          return;
        }
        for (const auto& [ai, pinv] : inverse_pairing_row(t[static_cast<std::size_t>(i)])) {
          a[static_cast<std::size_t>(i)] = ai;
          expand(i + 1, coeff * pinv);
        }
      };
      expand(0, value);
      return;
    }
    for (int b = 0; b < n; ++b) {
      t[static_cast<std::size_t>(slot)] = b;
      walk(slot + 1, cup(running, GradedClass::basis(b)));
    }
  };
  walk(0, GradedClass::basis(basis_index));

  std::vector<KunnethTerm> terms;
  terms.reserve(acc.size());
  for (auto& [slots, c] : acc) terms.push_back({c, slots});
  return cache_->pushes.emplace(key, std::move(terms)).first->second;
}

std::vector<KunnethTerm> SurfaceModel::small_diagonal_push(int d, const GradedClass& gamma) const {
  std::map<std::vector<int>, Rational> acc;
  for (const auto& [i, c] : gamma.terms())
    for (const auto& term : small_diagonal_push_basis(d, i)) {
      auto& slot = acc[term.slots];
      slot += c * term.coeff;
      if (slot == 0) acc.erase(term.slots);
    }
  std::vector<KunnethTerm> out;
  for (auto& [slots, c] : acc) out.push_back({c, slots});
  return out;
}

std::vector<KunnethTerm> SurfaceModel::diagonal_pairs() const { return small_diagonal_push(2, unit()); }

std::string SurfaceModel::fingerprint() const {
  std::ostringstream os;
  os << name_ << ';';
  for (const auto& b : basis_) os << b.name << ':' << b.degree << ',';
  os << ';';
  for (int i = 0; i < dimension(); ++i)
    for (int j = 0; j < dimension(); ++j) {
      const auto& prod = basis_product(i, j);
      if (prod.is_zero()) continue;
      os << i << '*' << j << '=';
      for (const auto& [k, c] : prod.terms()) os << c.get_str() << '@' << k << ' ';
      os << ';';
    }
  os << "chi=" << euler_.get_str();
  return os.str();
}

}  // namespace hkcob
