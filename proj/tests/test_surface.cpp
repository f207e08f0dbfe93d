#include "doctest.h"
#include "hkcob/surface.hpp"

#include <functional>
#include <map>
#include <vector>

using namespace hkcob;

namespace {

std::map<std::vector<int>, Rational> as_map(const std::vector<KunnethTerm>& terms) {
  std::map<std::vector<int>, Rational> out;
  for (const auto& t : terms) {
    out[t.slots] += t.coeff;
    if (out[t.slots] == 0) out.erase(t.slots);
  }
  return out;
}

// int_{S^d} (sum C_a b_a) (u_1 x ... x u_d), multiplying tensors slotwise with Koszul signs.
Rational pair_with_tensor(const SurfaceModel& s, const std::vector<KunnethTerm>& terms, const std::vector<int>& u) {
  Rational total = 0;
  for (const auto& t : terms) {
    int odd_swaps = 0;
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (s.odd(t.slots[i]) && s.odd(u[j])) ++odd_swaps;
    Rational v = t.coeff * ((odd_swaps % 2) ? -1 : 1);
    for (std::size_t i = 0; i < u.size() && v != 0; ++i)
      v *= s.integrate(s.basis_product(t.slots[i], u[i]));
    total += v;
  }
  return total;
}

void all_tuples(int n, int d, std::vector<int>& cur, const std::function<void()>& f) {
  if (static_cast<int>(cur.size()) == d) {
    f();
    return;
  }
  for (int i = 0; i < n; ++i) {
    cur.push_back(i);
    all_tuples(n, d, cur, f);
    cur.pop_back();
  }
}

}  // namespace

TEST_CASE("abelian cup products") {
  auto a = SurfaceModel::abelian();
  auto g = [&](const char* name) { return a.basis_class(a.index_of(name)); };
  auto prod = a.cup(a.cup(g("a1"), g("a2")), a.cup(g("a3"), g("a4")));
  CHECK(prod == a.point());
  CHECK(a.cup(g("a1"), g("a1")).is_zero());
  CHECK(a.integrate(prod) == 1);
  CHECK(a.integrate(a.unit()) == 0);
  CHECK(a.cup(g("a2"), g("a1")) == a.cup(g("a1"), g("a2")) * Rational(-1));
  CHECK(a.euler_number() == 0);
}

TEST_CASE("k3 lattice model") {
  auto k = SurfaceModel::k3();
  CHECK(k.dimension() == 24);
  CHECK(k.euler_number() == 24);
  auto lat = SurfaceModel::k3_lattice();
  for (int i = 0; i < 22; ++i)
    for (int j = 0; j < 22; ++j) CHECK(k.pairing(i + 1, j + 1) == lat(i, j));
  CHECK(k.integrate(k.point()) == 1);
  CHECK_THROWS(SurfaceModel::k3(RationalMatrix(3)));
}

TEST_CASE("cup product is associative and supercommutative") {
  for (const auto& s : {SurfaceModel::abelian(), SurfaceModel::even_surface(4)}) {
    const int n = s.dimension();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Rational sign = (s.odd(i) && s.odd(j)) ? -1 : 1;
        CHECK(s.basis_product(i, j) == s.basis_product(j, i) * sign);
        CHECK(s.basis_product(s.unit_index(), i) == s.basis_class(i));
        for (int k = 0; k < n; ++k)
          CHECK(s.cup(s.cup(s.basis_class(i), s.basis_class(j)), s.basis_class(k)) ==
                s.cup(s.basis_class(i), s.cup(s.basis_class(j), s.basis_class(k))));
      }
  }
}

TEST_CASE("diagonal contraction equals Euler number") {
  // term count equals the dimension only when the pairing is a signed permutation
  CHECK(SurfaceModel::even_surface(22).diagonal_pairs().size() == 24);
  CHECK(SurfaceModel::abelian().diagonal_pairs().size() == 16);
  for (const auto& s : {SurfaceModel::k3(), SurfaceModel::abelian(), SurfaceModel::even_surface(22)}) {
    auto diag = s.diagonal_pairs();
    Rational contraction = 0;
    for (const auto& t : diag) contraction += t.coeff * s.pairing(t.slots[0], t.slots[1]);
    CHECK(contraction == s.euler_number());
    auto m = as_map(diag);
    CHECK(m.at({s.unit_index(), s.point_index()}) == 1);
    CHECK(m.at({s.point_index(), s.unit_index()}) == 1);
  }
}

TEST_CASE("small diagonal push basics") {
  auto k = SurfaceModel::k3();
  auto pp = k.small_diagonal_push(2, k.point());
  REQUIRE(pp.size() == 1);
  CHECK(pp[0].slots == std::vector<int>{k.point_index(), k.point_index()});
  CHECK(pp[0].coeff == 1);
  auto id = k.small_diagonal_push(1, k.basis_class(3));
  REQUIRE(id.size() == 1);
  CHECK(id[0].slots == std::vector<int>{3});
  auto zero = k.small_diagonal_push(0, k.point());
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].slots.empty());
  CHECK(zero[0].coeff == 1);
}

TEST_CASE("Kunneth decomposition is dual to cup-then-integrate") {
  auto a = SurfaceModel::abelian();
  for (int d = 1; d <= 3; ++d)
    for (int x = 0; x < a.dimension(); ++x) {
      const auto& terms = a.small_diagonal_push_basis(d, x);
      std::vector<int> u;
      all_tuples(a.dimension(), d, u, [&] {
        GradedClass prod = a.basis_class(x);
        for (int ui : u) prod = a.cup(prod, a.basis_class(ui));
        CHECK(pair_with_tensor(a, terms, u) == a.integrate(prod));
      });
    }
  auto e = SurfaceModel::even_surface(3);
  for (int x = 0; x < e.dimension(); ++x) {
    const auto& terms = e.small_diagonal_push_basis(3, x);
    std::vector<int> u;
    all_tuples(e.dimension(), 3, u, [&] {
      GradedClass prod = e.basis_class(x);
      for (int ui : u) prod = e.cup(prod, e.basis_class(ui));
      CHECK(pair_with_tensor(e, terms, u) == e.integrate(prod));
    });
  }
}

TEST_CASE("self-intersection of small diagonals") {
  // Multiplying the last two slots gives the push of gamma e(S) to one fewer slot;
  // pairing them off gives the push to two fewer slots.
  for (const auto& s : {SurfaceModel::k3(), SurfaceModel::abelian()}) {
    for (int d = 2; d <= 4; ++d)
      for (int x : {s.unit_index(), 1, s.point_index()}) {
        GradedClass gx = s.basis_class(x);
        GradedClass ge = s.cup(gx, s.euler_class());
        std::map<std::vector<int>, Rational> merged, paired;
        for (const auto& t : s.small_diagonal_push(d, gx)) {
          std::vector<int> head(t.slots.begin(), t.slots.end() - 2);
          int l = t.slots[d - 2], r = t.slots[d - 1];
          for (const auto& [k, c] : s.basis_product(l, r).terms()) {
            auto slots = head;
            slots.push_back(k);
            merged[slots] += t.coeff * c;
          }
          paired[head] += t.coeff * s.pairing(l, r);
        }
        std::erase_if(merged, [](const auto& kv) { return kv.second == 0; });
        std::erase_if(paired, [](const auto& kv) { return kv.second == 0; });
        CHECK(merged == as_map(s.small_diagonal_push(d - 1, ge)));
        CHECK(paired == as_map(s.small_diagonal_push(d - 2, ge)));
      }
  }
}

TEST_CASE("matrix inverse") {
  RationalMatrix m(2);
  m(0, 0) = 2;
  m(0, 1) = 1;
  m(1, 0) = 1;
  m(1, 1) = 1;
  auto inv = inverse(m);
  CHECK(inv(0, 0) == 1);
  CHECK(inv(0, 1) == -1);
  CHECK(inv(1, 1) == 2);
  RationalMatrix sing(2);
  CHECK_THROWS_AS(inverse(sing), std::domain_error);
}
