#pragma once

#include <cstddef>
#include <span>
#include <utility>

namespace hkcob {

/// Stable insertion sort of `items` by `less`, returning the Koszul sign (+1/-1)
/// of the permutation: every transposition of two odd items contributes -1.
///
/// This is the single place where reordering signs are computed; both the
/// Kunneth decompositions and the Fock-space normal ordering go through it.
template <class T, class Less, class IsOdd>
int koszul_sort(std::span<T> items, Less less, IsOdd is_odd) {
  int sign = 1;
  for (std::size_t i = 1; i < items.size(); ++i) {
    std::size_t j = i;
    while (j > 0 && less(items[j], items[j - 1])) {
      if (is_odd(items[j]) && is_odd(items[j - 1])) sign = -sign;
      std::swap(items[j], items[j - 1]);
      --j;
    }
  }
  return sign;
}

/// (-1)^{sum_{i<j} odd_i odd_j} = (-1)^{k(k-1)/2} for k odd items, i.e. the
/// Koszul sign of reversing the sequence.
template <class T, class IsOdd>
int pairwise_odd_sign(std::span<const T> items, IsOdd is_odd) {
  std::size_t odd = 0;
  for (const auto& x : items)
    if (is_odd(x)) ++odd;
  return ((odd * (odd - (odd ? 1 : 0)) / 2) % 2 == 0) ? 1 : -1;
}

}  // namespace hkcob
