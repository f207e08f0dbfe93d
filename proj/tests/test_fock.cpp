#include "doctest.h"
#include "hkcob/fock.hpp"

#include <functional>
#include <random>

using namespace hkcob;

namespace {

// All normal-ordered monomials of weight exactly w over the given basis subset.
std::vector<Monomial> monomials_of_weight(const FockSpace& fock, int w, const std::vector<int>& basis) {
  std::vector<Monomial> out;
  std::vector<Factor> cur;
  std::function<void(int, int, int)> rec = [&](int remaining, int max_m, int min_b) {
    if (remaining == 0) {
      if (auto o = fock.normal_order(cur)) out.push_back(o->second);
      return;
    }
    for (int m = std::min(max_m, remaining); m >= 1; --m)
      for (std::size_t bi = 0; bi < basis.size(); ++bi) {
        if (m == max_m && static_cast<int>(bi) < min_b) continue;
        cur.push_back({m, basis[bi]});
        rec(remaining - m, m, static_cast<int>(bi));
        cur.pop_back();
      }
  };
  rec(w, w, 0);
  return out;
}

FockState single(const Monomial& m, Rational c = 1) {
  FockState s;
  s.add(m, c);
  return s;
}

void check_commutators(const SurfaceModel& model, const std::vector<int>& basis, int max_weight, int max_m) {
  FockSpace fock(model);
  std::vector<Monomial> states;
  for (int w = 0; w <= max_weight; ++w)
    for (const auto& m : monomials_of_weight(fock, w, basis)) states.push_back(m);
  int checked = 0;
  for (int a : basis)
    for (int b : basis)
      for (int m = -max_m; m <= max_m; ++m)
        for (int n = -max_m; n <= max_m; ++n) {
          if (m == 0 || n == 0) continue;
          Rational sign = (model.odd(a) && model.odd(b)) ? -1 : 1;
          Rational central = (m + n == 0) ? Rational(m) * model.pairing(a, b) : Rational(0);
          for (const auto& mono : states) {
            if (mono.weight() + std::max(m, 0) + std::max(n, 0) > 9) continue;
            FockState s = single(mono);
            FockState lhs = apply_q(fock, m, model.basis_class(a), apply_q(fock, n, model.basis_class(b), s));
            FockState rhs = apply_q(fock, n, model.basis_class(b), apply_q(fock, m, model.basis_class(a), s));
            FockState diff = lhs - rhs * sign;
            CHECK(diff == s * central);
            ++checked;
          }
        }
  CHECK(checked > 0);
}

}  // namespace

TEST_CASE("monomial packing") {
  Factor f{3, 17};
  CHECK(Monomial::factor_of(Monomial::key_of(f)) == f);
  auto k3 = SurfaceModel::k3();
  FockSpace fock(k3);
  auto o = fock.normal_order(std::vector<Factor>{{1, 0}, {2, 5}, {1, 23}});
  REQUIRE(o);
  CHECK(o->first == 1);
  CHECK(o->second.size() == 3);
  CHECK(o->second.factor(0) == Factor{2, 5});
  CHECK(o->second.weight() == 4);
  CHECK(fock.real_degree(o->second) == 2 + 2 + 0 + 4);
}

TEST_CASE("odd factors anticommute and square to zero") {
  auto ab = SurfaceModel::abelian();
  FockSpace fock(ab);
  int a1 = ab.index_of("a1"), a2 = ab.index_of("a2");
  auto x = fock.normal_order(std::vector<Factor>{{1, a1}, {1, a2}});
  auto y = fock.normal_order(std::vector<Factor>{{1, a2}, {1, a1}});
  REQUIRE(x);
  REQUIRE(y);
  CHECK(x->second == y->second);
  CHECK(x->first == -y->first);
  CHECK_FALSE(fock.normal_order(std::vector<Factor>{{1, a1}, {2, a2}, {1, a1}}));
  CHECK(fock.normal_order(std::vector<Factor>{{2, a1}, {1, a1}}));
}

TEST_CASE("vacuum, unit class and integration") {
  auto k3 = SurfaceModel::k3();
  FockSpace fock(k3);
  CHECK(unit_class(fock, 0) == FockState::vacuum());
  auto u2 = unit_class(fock, 2);
  REQUIRE(u2.term_count() == 1);
  CHECK(u2.terms().begin()->second == frac(1, 2));
  for (int n = 1; n <= 5; ++n) {
    auto u = unit_class(fock, n);
    CHECK(u.homogeneous_weight() == n);
    CHECK(fock.homogeneous_real_degree(u) == 0);
    CHECK(integrate(fock, u, n) == 0);
    FockState top = FockState::vacuum();
    for (int i = 0; i < n; ++i) top = apply_q(fock, 1, k3.point(), top);
    CHECK(integrate(fock, top, n) == 1);
    CHECK(integrate_by_annihilation(fock, top, n) == 1);
  }
  FockState s = apply_q(fock, 1, k3.point(), apply_q(fock, 2, k3.basis_class(1), FockState::vacuum()));
  CHECK(integrate(fock, s, 3) == 0);
  CHECK_THROWS_AS(integrate(fock, s, 2), std::logic_error);
}

TEST_CASE("annihilation examples") {
  auto k3 = SurfaceModel::k3();
  FockSpace fock(k3);
  FockState s = apply_q(fock, 1, k3.unit(), apply_q(fock, 1, k3.point(), FockState::vacuum()));
  FockState got = apply_q(fock, -1, k3.point(), s);
  CHECK(got == apply_q(fock, 1, k3.point(), FockState::vacuum()) * Rational(-1));
  CHECK(apply_q(fock, -2, k3.point(), unit_class(fock, 3)).is_zero());
  CHECK(apply_q(fock, -1, k3.unit(), FockState::vacuum()).is_zero());

  // a + b = n contractions of the unit give (-1)^n
  for (int n = 1; n <= 5; ++n)
    for (int b = 0; b <= n; ++b) {
      int a = n - b;
      FockState t = unit_class(fock, n);
      for (int i = 0; i < b; ++i) t = apply_q(fock, -1, k3.point(), t);
      for (int i = 0; i < b; ++i) t = apply_q(fock, 1, k3.point(), t);
      for (int i = 0; i < a; ++i) t = apply_q(fock, -1, k3.point(), t);
      for (int i = 0; i < a; ++i) t = apply_q(fock, 1, k3.point(), t);
      CHECK(integrate(fock, t, n) == sign_power(n));
    }
}

TEST_CASE("integration functionals agree on random top-degree states") {
  auto ab = SurfaceModel::abelian();
  FockSpace fock(ab);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    FockState s = FockState::vacuum();
    int n = 0;
    while (n < 4) {
      int m = 1 + static_cast<int>(rng() % 2);
      if (n + m > 4) m = 1;
      s = apply_q(fock, m, ab.basis_class(static_cast<int>(rng() % 16)), s);
      n += m;
    }
    CHECK(integrate(fock, s, n) == integrate_by_annihilation(fock, s, n));
  }
}

TEST_CASE("grading of creation operators") {
  auto ab = SurfaceModel::abelian();
  FockSpace fock(ab);
  FockState s = apply_q(fock, 2, ab.basis_class(3), unit_class(fock, 1));
  CHECK(s.homogeneous_weight() == 3);
  CHECK(fock.homogeneous_real_degree(s) == 2 + 1);
}

TEST_CASE("super-commutation relations: abelian") {
  auto ab = SurfaceModel::abelian();
  std::vector<int> basis;
  for (int i = 0; i < ab.dimension(); ++i) basis.push_back(i);
  check_commutators(ab, basis, 2, 3);
}

TEST_CASE("super-commutation relations: abelian generators, larger weight") {
  auto ab = SurfaceModel::abelian();
  std::vector<int> basis = {ab.unit_index(), ab.index_of("a1"), ab.index_of("a2"), ab.index_of("a3a4"),
                            ab.index_of("a2a3a4"), ab.point_index()};
  check_commutators(ab, basis, 5, 4);
}

TEST_CASE("super-commutation relations: k3") {
  auto k3 = SurfaceModel::k3();
  std::vector<int> basis = {k3.unit_index(), 1, 2, 7, 8, k3.point_index()};
  check_commutators(k3, basis, 5, 4);
}
