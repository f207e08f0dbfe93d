#pragma once

#include "hkcob/rational.hpp"

#include <array>
#include <string>
#include <vector>

namespace hkcob {

/// Betti numbers b0..b4 of a compact surface.
struct BettiVector {
  std::array<long, 5> b{1, 0, 0, 0, 1};

  /// Throws std::invalid_argument on negative entries or a failure of Poincare symmetry.
  void validate() const;
  /// Parses "b0,b1,b2,b3,b4".
  static BettiVector parse(const std::string& text);

  static BettiVector k3() { return {{1, 0, 22, 0, 1}}; }
  /// P^2 blown up in nine points.
  static BettiVector rational_elliptic() { return {{1, 0, 10, 0, 1}}; }
};

/// Betti numbers b_0 .. b_{4n} of the Hilbert scheme of n points, from Goettsche's product formula.
std::vector<Integer> gottsche_betti(const BettiVector& b, int n);

/// sum_k (-1)^k b_{2k} y^k. Equals chi_y for varieties whose cohomology is all of type (p,p);
/// throws std::invalid_argument if an odd Betti number is nonzero.
YPolynomial chi_y_from_betti(const std::vector<Integer>& betti);

/// N sum_{d | N} d^3 (1 + y + ... + y^{N/d - 1})^2 y^{N - N/d}.
/// With N = n + 1 this is sum_i (-1)^i chi(Kum_n, Omega^i) y^i.
YPolynomial gottsche_soergel_kummer_chi(int N);

/// True iff values[0..range_end] is non-decreasing (range clipped to the available entries).
bool increasing_check(const std::vector<Rational>& values, int range_end);
bool increasing_check(const YPolynomial& p, int range_end);

}  // namespace hkcob
