#include "hkcob/genfun.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hkcob {

void BettiVector::validate() const {
  for (long v : b)
    if (v < 0) throw std::invalid_argument("Betti numbers must be non-negative");
  if (b[0] != b[4] || b[1] != b[3]) throw std::invalid_argument("Betti vector violates Poincare duality");
  if (b[0] == 0) throw std::invalid_argument("empty surface (b0 = 0)");
}

BettiVector BettiVector::parse(const std::string& text) {
  BettiVector out;
  std::stringstream ss(text);
  std::string item;
  std::size_t i = 0;
  while (std::getline(ss, item, ',')) {
    if (i >= 5) throw std::invalid_argument("Betti vector needs exactly 5 entries: " + text);
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed Betti entry '" + item + "'");
    }
    while (used < item.size() && item[used] == ' ') ++used;
    if (used != item.size()) throw std::invalid_argument("malformed Betti entry '" + item + "'");
    out.b[i++] = v;
  }
  if (i != 5) throw std::invalid_argument("Betti vector needs exactly 5 entries: " + text);
  out.validate();
  return out;
}

std::vector<Integer> gottsche_betti(const BettiVector& bv, int n) {
  bv.validate();
  if (n < 0) throw std::invalid_argument("n >= 0 required");
  // poly[t][z]: coefficient of t^t z^z, z tracking real cohomological degree
  const int zmax = 4 * n;
  std::vector<std::vector<Integer>> poly(static_cast<std::size_t>(n + 1),
                                         std::vector<Integer>(static_cast<std::size_t>(zmax + 1), 0));
  poly[0][0] = 1;
  for (int m = 1; m <= n; ++m) {
    for (int i = 0; i <= 4; ++i) {
      const long bi = bv.b[static_cast<std::size_t>(i)];
      if (bi == 0) continue;
      const int zstep = 2 * m - 2 + i;
      // even i: (1 - z^a t^m)^{-b_i}; odd i: (1 + z^a t^m)^{b_i}
      std::vector<Integer> series;
      for (int k = 0; k * m <= n; ++k)
        series.push_back(i % 2 == 0 ? binomial(bi + k - 1, k) : binomial(bi, k));
      auto next = poly;
      for (auto& row : next)
        for (auto& c : row) c = 0;
      for (int t = 0; t <= n; ++t)
        for (int z = 0; z <= zmax; ++z) {
          const Integer& c = poly[static_cast<std::size_t>(t)][static_cast<std::size_t>(z)];
          if (c == 0) continue;
          for (std::size_t k = 0; k < series.size(); ++k) {
            const int tt = t + static_cast<int>(k) * m;
            const int zz = z + static_cast<int>(k) * zstep;
            if (tt > n || zz > zmax) break;
            next[static_cast<std::size_t>(tt)][static_cast<std::size_t>(zz)] += c * series[k];
          }
        }
      poly = std::move(next);
    }
  }
  return poly[static_cast<std::size_t>(n)];
}

YPolynomial chi_y_from_betti(const std::vector<Integer>& betti) {
  std::vector<Rational> coeffs;
  for (std::size_t d = 0; d < betti.size(); ++d) {
    if (d % 2 == 1) {
      if (betti[d] != 0) throw std::invalid_argument("odd cohomology present; chi_y is not determined by Betti numbers");
      continue;
    }
    const std::size_t k = d / 2;
    coeffs.emplace_back(k % 2 == 0 ? Rational(betti[d]) : Rational(-betti[d]));
  }
  return YPolynomial(std::move(coeffs));
}

YPolynomial gottsche_soergel_kummer_chi(int N) {
  if (N < 1) throw std::invalid_argument("N >= 1 required");
  YPolynomial total;
  for (int d = 1; d <= N; ++d) {
    if (N % d != 0) continue;
    const int len = N / d;
    std::vector<Rational> ones(static_cast<std::size_t>(len), Rational(1));
    YPolynomial geo(ones);
    std::vector<Rational> shift(static_cast<std::size_t>(N - len + 1), Rational(0));
    shift.back() = Rational(d) * d * d;
    total += geo * geo * YPolynomial(shift);
  }
  return total * Rational(N);
}

bool increasing_check(const std::vector<Rational>& values, int range_end) {
  const int last = std::min(range_end, static_cast<int>(values.size()) - 1);
  for (int i = 1; i <= last; ++i)
    if (values[static_cast<std::size_t>(i)] < values[static_cast<std::size_t>(i - 1)]) return false;
  return true;
}

bool increasing_check(const YPolynomial& p, int range_end) {
  std::vector<Rational> values;
  for (int i = 0; i <= std::min(range_end, p.degree()); ++i) values.push_back(p[i]);
  return increasing_check(values, range_end);
}

}  // namespace hkcob
