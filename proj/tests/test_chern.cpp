#include "doctest.h"
#include "hkcob/chern.hpp"
#include "hkcob/cobordism.hpp"
#include "hkcob/genfun.hpp"

#include <random>

using namespace hkcob;

namespace {

ChernEngine& engine() {
  static ChernEngine e;
  return e;
}

ChernVector random_vector(int dim, bool even_only, std::mt19937& rng) {
  ChernVector v;
  v.dim = dim;
  v.even_only = even_only;
  for (const auto& k : partitions_of(dim)) {
    if (even_only && !k.all_parts_even()) continue;
    v.ch[k] = frac(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 9));
  }
  return v;
}

}  // namespace

TEST_CASE("closed forms at small n") {
  CHECK(closed_form_hilb_top(1, 24) == -24);
  CHECK(closed_form_hilb_top(2, 24) == 15);
  CHECK(closed_form_hilb_top(3, 24) == frac(-56, 9));
  CHECK(closed_form_kummer_top(1) == 24 * -1);
  CHECK(closed_form_kummer_top(2) == 45);
  CHECK(closed_form_kummer_top(3) == frac(-280, 9));
  CHECK(closed_form_kummer_double(2, 1) == 756);
  // ch_{2k} ch_{2n-2k} is symmetric in k <-> n - k
  for (int n = 2; n <= 8; ++n)
    for (int k = 1; k < n; ++k) CHECK(closed_form_kummer_double(n, k) == closed_form_kummer_double(n, n - k));
  // k = 1 against its separate closed form
  for (int n = 2; n <= 8; ++n) {
    Rational nf(factorial(n));
    Rational expected = sign_power(n) * Rational(factorial(2 * n)) / (nf * nf * nf * nf) * 4 * n * (n + 1) * (n + 1) *
                        (n * n + n + 1);
    CHECK(closed_form_kummer_double(n, 1) == expected);
  }
}

TEST_CASE("ch <-> c conversion") {
  SUBCASE("projective space: c_nu = prod binom(r+1, nu_i)") {
    for (int r = 1; r <= 8; ++r) {
      const auto c = ch_to_c(projective_class(r));
      for (const auto& nu : partitions_of(r)) {
        Integer expected = 1;
        for (int part : nu.parts()) expected *= binomial(r + 1, part);
        CHECK(c.at(nu) == Rational(expected));
      }
    }
  }
  SUBCASE("round trip") {
    std::mt19937 rng(7);
    for (int dim = 1; dim <= 12; ++dim) {
      for (bool even_only : {false, true}) {
        if (even_only && dim % 2) continue;
        const ChernVector v = random_vector(dim, even_only, rng);
        CHECK(c_to_ch(dim, ch_to_c(v), even_only) == v);
      }
    }
  }
  SUBCASE("dimension 2 by hand") {
    ChernVector v;
    v.dim = 2;
    v.ch[Partition{2}] = -24;
    const auto c = ch_to_c(v);
    CHECK(c.at(Partition{2}) == 24);  // ch_2 = -c_2 when c_1 = 0
  }
}

TEST_CASE("chern vector access") {
  ChernVector v;
  v.dim = 4;
  v.ch[Partition{4}] = 15;
  CHECK_THROWS_AS(v.validate(), std::invalid_argument);
  v.ch[Partition{2, 2}] = 828;
  v.validate();
  CHECK(v.value(Partition{3, 1}) == 0);
  CHECK(v.even(Partition{1, 1}) == 828);
  CHECK_THROWS_AS(v.value(Partition{3}), std::invalid_argument);
}

TEST_CASE("genus polynomials") {
  SUBCASE("todd genus of projective space is one") {
    for (int r = 1; r <= 7; ++r) CHECK(evaluate_genus(genus_polynomial(todd_series(), r), projective_class(r)) == YPolynomial(Rational(1)));
  }
  SUBCASE("chi_y of projective space is 1 - y + ... + (-y)^r") {
    for (int r = 1; r <= 6; ++r) {
      std::vector<Rational> expected;
      for (int p = 0; p <= r; ++p) expected.push_back(sign_power(p));
      CHECK(evaluate_genus(genus_polynomial(chi_y_series(), r), projective_class(r)) == YPolynomial(expected));
    }
  }
  SUBCASE("milnor genus polynomial agrees with the top ch value") {
    for (int r = 1; r <= 6; ++r)
      CHECK(evaluate_genus(milnor_genus_polynomial(r), projective_class(r)) == YPolynomial(milnor_genus(projective_class(r))));
  }
  SUBCASE("chi_y at y = 0 is the todd genus") {
    std::mt19937 rng(3);
    for (int dim = 2; dim <= 8; dim += 2) {
      const auto v = random_vector(dim, true, rng);
      CHECK(evaluate_genus(genus_polynomial(chi_y_series(), dim), v)[0] ==
            evaluate_genus(genus_polynomial(todd_series(), dim), v)[0]);
    }
  }
  SUBCASE("chi_y at y = -1 is the top chern number") {
    std::mt19937 rng(5);
    for (int dim = 1; dim <= 8; ++dim) {
      const auto v = random_vector(dim, false, rng);
      CHECK(evaluate_genus(genus_polynomial(chi_y_series(), dim), v).evaluate(-1) == ch_to_c(v).at(Partition{dim}));
    }
  }
  CHECK_THROWS_AS(evaluate_genus(genus_polynomial(todd_series(), 4), projective_class(3)), std::invalid_argument);
}

TEST_CASE("bernoulli numbers") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(1) == frac(-1, 2));
  CHECK(bernoulli(2) == frac(1, 6));
  CHECK(bernoulli(3) == 0);
  CHECK(bernoulli(4) == frac(-1, 30));
  CHECK(bernoulli(12) == frac(-691, 2730));
}

TEST_CASE("engine: K3 surface and small Hilbert schemes") {
  auto& e = engine();
  const auto k3 = e.hilb_vector(1);
  CHECK(k3.even(Partition{1}) == -24);
  const auto chi = evaluate_genus(genus_polynomial(chi_y_series(), 2), k3);
  CHECK(signed_hodge_euler_list(chi) == std::vector<Rational>{2, 20, 2});
  const auto h2 = e.hilb_vector(2);
  CHECK(h2.even(Partition{2}) == 15);
  CHECK(h2.even(Partition{1, 1}) == 828);
  for (int n = 1; n <= 3; ++n) {
    CHECK(e.hilb_ch_number(n, Partition{n}) == closed_form_hilb_top(n, 24));
    CHECK(evaluate_genus(genus_polynomial(todd_series(), 2 * n), e.hilb_vector(n)) == YPolynomial(Rational(n + 1)));
  }
}

TEST_CASE("engine: Serre duality symmetry of chi^p") {
  auto& e = engine();
  for (int n = 1; n <= 3; ++n) {
    for (const auto& v : {e.hilb_vector(n), e.kummer_vector(n)}) {
      const auto list = evaluate_genus(genus_polynomial(chi_y_series(), 2 * n), v);
      REQUIRE(list.degree() == 2 * n);
      for (int p = 0; p <= 2 * n; ++p) CHECK(list[p] == list[2 * n - p]);
    }
  }
}

TEST_CASE("engine: generalized Kummer varieties") {
  auto& e = engine();
  for (int n = 1; n <= 3; ++n) CHECK(e.kummer_ch_number(n, Partition{n}) == closed_form_kummer_top(n));
  CHECK(e.kummer_ch_number(2, Partition{1, 1}) == closed_form_kummer_double(2, 1));
  CHECK(e.kummer_ch_number(3, Partition{2, 1}) == closed_form_kummer_double(3, 1));
  // Kum_1(A) is a K3 surface
  CHECK(e.kummer_vector(1).ch == e.hilb_vector(1).ch);
  CHECK_THROWS_AS(e.kummer_ch_number(2, Partition{1}), std::invalid_argument);
  CHECK_THROWS_AS(e.hilb_ch_number(0, Partition{}), std::invalid_argument);
}

TEST_CASE("engine: values depend only on c2") {
  auto& e = engine();
  SUBCASE("a different H^2 pairing on a K3-type model") {
    RationalMatrix diag(22);
    for (int i = 0; i < 22; ++i) diag(i, i) = i < 3 ? Rational(2) : frac(-1, 3);
    auto model = std::make_shared<const SurfaceModel>(SurfaceModel::k3(diag));
    for (int n = 1; n <= 3; ++n)
      for (const auto& ks : partitions_of(n)) CHECK(e.hilb_ch_number(n, ks, SurfaceChoice::of(model)) == e.hilb_ch_number(n, ks));
  }
  SUBCASE("generic c2 interpolation reproduces K3") {
    for (int n = 1; n <= 3; ++n)
      for (const auto& ks : partitions_of(n))
        CHECK(e.hilb_ch_number(n, ks, SurfaceChoice::generic_c2(24)) == e.hilb_ch_number(n, ks));
  }
  SUBCASE("generic c2 top value matches the closed form") {
    for (int n = 1; n <= 3; ++n)
      for (int c2 : {-6, 0, 12, 48}) CHECK(e.hilb_ch_number(n, Partition{n}, SurfaceChoice::generic_c2(c2)) == closed_form_hilb_top(n, c2));
  }
}

TEST_CASE("engine: chi_y of the blown-up plane's Hilbert schemes matches Goettsche") {
  // c1^2 = 0 and c2 = 12 for P^2 blown up in nine points; all cohomology is algebraic,
  // so chi^p = (-1)^p b_2p.
  auto& e = engine();
  for (int n = 1; n <= 3; ++n) {
    const auto v = e.hilb_vector(n, SurfaceChoice::generic_c2(12));
    CHECK(evaluate_genus(genus_polynomial(chi_y_series(), 2 * n), v) ==
          chi_y_from_betti(gottsche_betti(BettiVector::rational_elliptic(), n)));
  }
}
