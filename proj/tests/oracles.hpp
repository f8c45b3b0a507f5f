#pragma once

// Test-only reference computations.  Each one takes a route independent of
// the library code it is used to check.

#include "crk/matrix.hpp"
#include "crk/rational.hpp"
#include "crk/uni_poly.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace oracle {

using crk::MatrixQ;
using crk::Rational;
using crk::UniPoly;

/// Laplace expansion along the first row, no memoization.
inline Rational cofactor_det(const MatrixQ& a) {
  const std::size_t n = a.rows();
  if (n == 0) return Rational(1);
  if (n == 1) return a(0, 0);
  Rational acc(0);
  for (std::size_t j = 0; j < n; ++j) {
    if (a(0, j).is_zero()) continue;
    MatrixQ sub = crk::zeros(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, c = 0; k < n; ++k)
        if (k != j) sub(i - 1, c++) = a(i, k);
    Rational term = a(0, j) * cofactor_det(sub);
    acc += (j % 2 ? -term : term);
  }
  return acc;
}

/// Row echelon form with ordinary division and pivot chosen as the last
/// nonzero entry in the column (deliberately unlike the library's scan order).
inline std::size_t echelon_rank(MatrixQ a) {
  const std::size_t m = a.rows(), n = a.cols();
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t piv = m;
    for (std::size_t i = m; i-- > row;)
      if (!a(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv == m) continue;
    for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(row, j));
    for (std::size_t i = row + 1; i < m; ++i) {
      const Rational f = a(i, col) / a(row, col);
      for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(row, j);
    }
    ++row;
  }
  return row;
}

/// Sum over perfect matchings with the crossing-number sign.
inline Rational matching_pfaffian(const MatrixQ& a) {
  const std::size_t n = a.rows();
  if (n % 2) return Rational(0);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<bool> used(n, false);
  Rational total(0);
  auto sign_of = [&]() {
    // permutation (i1 j1 i2 j2 ...) parity by inversion count
    std::vector<std::size_t> perm;
    for (auto [i, j] : pairs) {
      perm.push_back(i);
      perm.push_back(j);
    }
    std::size_t inv = 0;
    for (std::size_t x = 0; x < perm.size(); ++x)
      for (std::size_t y = x + 1; y < perm.size(); ++y)
        if (perm[x] > perm[y]) ++inv;
    return inv % 2 ? -1 : 1;
  };
  auto rec = [&](auto&& self) -> void {
    std::size_t i = 0;
    while (i < n && used[i]) ++i;
    if (i == n) {
      Rational prod(1);
      for (auto [p, q] : pairs) prod *= a(p, q);
      total += sign_of() > 0 ? prod : -prod;
      return;
    }
    used[i] = true;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (used[j]) continue;
      used[j] = true;
      pairs.emplace_back(i, j);
      self(self);
      pairs.pop_back();
      used[j] = false;
    }
    used[i] = false;
  };
  rec(rec);
  return total;
}

/// Characteristic polynomial det(sI - A) by the Faddeev-LeVerrier recursion.
inline UniPoly charpoly(const MatrixQ& a) {
  const std::size_t n = a.rows();
  std::vector<Rational> c(n + 1);
  c[n] = Rational(1);
  MatrixQ m = crk::zeros(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    MatrixQ prod = a * m;
    for (std::size_t i = 0; i < n; ++i) prod(i, i) += c[n - k + 1];
    m = prod;
    MatrixQ am = a * m;
    Rational tr(0);
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / Rational(static_cast<long>(k));
  }
  return UniPoly(c);
}

/// Descartes' rule counts positive roots exactly when all roots are real,
/// which holds for characteristic polynomials of symmetric matrices.
inline std::size_t descartes_positive(const UniPoly& p) {
  std::size_t changes = 0;
  int prev = 0;
  for (const auto& c : p.coeffs()) {
    int sg = c.sign();
    if (sg == 0) continue;
    if (prev && sg != prev) ++changes;
    prev = sg;
  }
  return changes;
}

/// (positive, negative) eigenvalue counts of a symmetric matrix.
inline std::pair<std::size_t, std::size_t> descartes_inertia(const MatrixQ& a) {
  const UniPoly p = charpoly(a);
  return {descartes_positive(p), descartes_positive(p.reflect())};
}

/// Product of (s - k) over the given integer roots.
inline UniPoly from_roots(const std::vector<long>& roots) {
  UniPoly p(Rational(1));
  for (long k : roots) p *= UniPoly(std::vector<Rational>{Rational(-k), Rational(1)});
  return p;
}

/// Rank as the largest size of a nonzero minor, by exhaustive enumeration.
inline std::size_t minor_rank(const MatrixQ& a) {
  const std::size_t m = a.rows(), n = a.cols();
  for (std::size_t k = std::min(m, n); k > 0; --k) {
    std::vector<bool> rsel(m, false), csel(n, false);
    std::fill(rsel.begin(), rsel.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + static_cast<std::ptrdiff_t>(k), true);
      do {
        MatrixQ sub = crk::zeros(k, k);
        for (std::size_t i = 0, si = 0; i < m; ++i) {
          if (!rsel[i]) continue;
          for (std::size_t j = 0, sj = 0; j < n; ++j)
            if (csel[j]) sub(si, sj++) = a(i, j);
          ++si;
        }
        if (!cofactor_det(sub).is_zero()) return k;
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
  }
  return 0;
}

}  // namespace oracle
