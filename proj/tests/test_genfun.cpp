#include "doctest.h"
#include "hkcob/genfun.hpp"

using namespace hkcob;

namespace {

std::vector<long> to_longs(const std::vector<Integer>& v) {
  std::vector<long> out;
  for (const auto& x : v) out.push_back(x.get_si());
  return out;
}

// Euler numbers of S^[n] from prod_m (1 - t^m)^{-e}, expanded by repeated series multiplication.
std::vector<long> euler_series(long e, int n) {
  std::vector<long> f(static_cast<std::size_t>(n + 1), 0);
  f[0] = 1;
  for (int m = 1; m <= n; ++m)
    for (long rep = 0; rep < e; ++rep)
      for (int t = m; t <= n; ++t) f[static_cast<std::size_t>(t)] += f[static_cast<std::size_t>(t - m)];
  return f;
}

YPolynomial ypoly(std::initializer_list<long> xs) {
  std::vector<Rational> c;
  for (long x : xs) c.emplace_back(x);
  return YPolynomial(c);
}

}  // namespace

TEST_CASE("gottsche betti numbers of the blown-up plane") {
  auto b2 = to_longs(gottsche_betti(BettiVector::rational_elliptic(), 2));
  CHECK(b2 == std::vector<long>{1, 0, 11, 0, 66, 0, 11, 0, 1});
  auto b3 = to_longs(gottsche_betti(BettiVector::rational_elliptic(), 3));
  REQUIRE(b3.size() == 13);
  CHECK(b3[2] == 11);
  CHECK(b3[4] == 77);
  CHECK(b3[6] == 342);
}

TEST_CASE("gottsche betti numbers for K3") {
  CHECK(to_longs(gottsche_betti(BettiVector::k3(), 1)) == std::vector<long>{1, 0, 22, 0, 1});
  CHECK(to_longs(gottsche_betti(BettiVector::k3(), 2)) == std::vector<long>{1, 0, 23, 0, 276, 0, 23, 0, 1});
  const auto euler = euler_series(24, 6);
  for (int n = 1; n <= 6; ++n) {
    long total = 0;
    for (const auto& b : gottsche_betti(BettiVector::k3(), n)) total += b.get_si();
    CHECK(total == euler[static_cast<std::size_t>(n)]);
  }
}

TEST_CASE("gottsche output satisfies Poincare duality") {
  for (const BettiVector& bv : {BettiVector::k3(), BettiVector::rational_elliptic(), BettiVector{{1, 4, 6, 4, 1}}}) {
    for (int n = 1; n <= 5; ++n) {
      const auto b = gottsche_betti(bv, n);
      REQUIRE(b.size() == static_cast<std::size_t>(4 * n + 1));
      for (std::size_t i = 0; i < b.size(); ++i) CHECK(b[i] == b[b.size() - 1 - i]);
    }
  }
}

TEST_CASE("abelian surface: Euler number of the Hilbert scheme vanishes") {
  for (int n = 1; n <= 5; ++n) {
    Integer alternating = 0;
    const auto b = gottsche_betti(BettiVector{{1, 4, 6, 4, 1}}, n);
    for (std::size_t i = 0; i < b.size(); ++i) alternating += (i % 2 == 0 ? b[i] : -b[i]);
    CHECK(alternating == 0);
  }
}

TEST_CASE("betti vector parsing") {
  CHECK(BettiVector::parse("1,0,10,0,1").b == BettiVector::rational_elliptic().b);
  CHECK_THROWS_AS(BettiVector::parse("1,0,10,0"), std::invalid_argument);
  CHECK_THROWS_AS(BettiVector::parse("1,0,x,0,1"), std::invalid_argument);
  CHECK_THROWS_AS(BettiVector::parse("1,2,10,0,1"), std::invalid_argument);
  CHECK_THROWS_AS(BettiVector::parse("1,0,-3,0,1"), std::invalid_argument);
}

TEST_CASE("chi_y from betti numbers") {
  auto p = chi_y_from_betti(gottsche_betti(BettiVector::rational_elliptic(), 2));
  CHECK(p == ypoly({1, -11, 66, -11, 1}));
  CHECK_THROWS_AS(chi_y_from_betti(gottsche_betti(BettiVector{{1, 4, 6, 4, 1}}, 1)), std::invalid_argument);
}

TEST_CASE("gottsche-soergel expansion") {
  CHECK(gottsche_soergel_kummer_chi(3) == ypoly({3, 6, 90, 6, 3}));
  CHECK(gottsche_soergel_kummer_chi(2) == ypoly({2, 20, 2}));  // Kum_1(A) is a K3 surface
  for (int N = 1; N <= 8; ++N) {
    const auto p = gottsche_soergel_kummer_chi(N);
    CHECK(p[0] == N);
    CHECK(p.degree() == 2 * (N - 1));
    for (int i = 0; i <= p.degree(); ++i) CHECK(p[i] == p[p.degree() - i]);
    CHECK(increasing_check(p, N - 1));
  }
  CHECK_THROWS_AS(gottsche_soergel_kummer_chi(0), std::invalid_argument);
}

TEST_CASE("increasing check") {
  CHECK(increasing_check(std::vector<Rational>{3, 6, 90}, 2));
  CHECK(increasing_check(std::vector<Rational>{4, 24, 348, 1168}, 3));
  CHECK(increasing_check(std::vector<Rational>{5, 5, 5, 5}, 3));
  CHECK_FALSE(increasing_check(std::vector<Rational>{3, 6, 5}, 2));
  CHECK(increasing_check(std::vector<Rational>{3, 6, 5}, 1));
}

TEST_CASE("hilbert schemes of the blown-up plane have increasing even betti numbers up to the middle") {
  for (int n = 1; n <= 6; ++n) {
    const auto b = gottsche_betti(BettiVector::rational_elliptic(), n);
    std::vector<Rational> even;
    for (int k = 0; k <= n; ++k) even.emplace_back(b[static_cast<std::size_t>(2 * k)]);
    CHECK(increasing_check(even, n));
  }
}
