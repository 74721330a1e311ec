#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "lincat/scalar.hpp"

namespace lincat {

using IntMatrix = std::vector<std::vector<BigInt>>;

// Invariant factors d1 | d2 | ... of an integer matrix with `cols` columns.
// The result always has `cols` entries; trailing zeros count the free rank of
// Z^cols / rowspace.
inline std::vector<BigInt> smith_normal_form(IntMatrix a, std::size_t cols) {
  const std::size_t rows = a.size();
  for (const auto& r : a) {
    if (r.size() != cols) throw InputError("ragged integer matrix");
  }
  auto abs_big = [](const BigInt& x) { return x < 0 ? BigInt(-x) : x; };

  std::size_t t = 0;
  while (t < rows && t < cols) {
    // Pick the nonzero entry of least absolute value in the trailing block.
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (a[i][j] != 0 && (pi == rows || abs_big(a[i][j]) < abs_big(a[pi][pj]))) {
          pi = i;
          pj = j;
        }
      }
    }
    if (pi == rows) break;
    std::swap(a[t], a[pi]);
    for (auto& r : a) std::swap(r[t], r[pj]);

    bool clean = true;
    for (std::size_t i = t + 1; i < rows; ++i) {
      BigInt q = a[i][t] / a[t][t];
      if (q != 0) {
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
      }
      if (a[i][t] != 0) clean = false;
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      BigInt q = a[t][j] / a[t][t];
      if (q != 0) {
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
      }
      if (a[t][j] != 0) clean = false;
    }
    if (!clean) continue;  // a smaller remainder exists; re-pivot

    // Divisibility: fold any entry not divisible by the pivot into row t.
    bool divisible = true;
    for (std::size_t i = t + 1; i < rows && divisible; ++i) {
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[i][j] % a[t][t] != 0) {
          for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
          divisible = false;
          break;
        }
      }
    }
    if (!divisible) continue;
    ++t;
  }

  std::vector<BigInt> factors(cols, BigInt(0));
  for (std::size_t i = 0; i < t; ++i) factors[i] = abs_big(a[i][i]);
  return factors;
}

}  // namespace lincat
