#pragma once

// Symbolic determinants of polynomial matrices: line pencils M0 + s D over
// Q[s], and full parameterized matrices over Q[t_1..t_d].

#include "crk/matrix.hpp"
#include "crk/multi_poly.hpp"
#include "crk/uni_poly.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace crk {

using UniPolyMatrix = Matrix<UniPoly>;
using MultiPolyMatrix = Matrix<MultiPoly>;

/// M0 + s D as a matrix over Q[s].
inline UniPolyMatrix pencil(const MatrixQ& m0, const MatrixQ& d) {
  if (m0.rows() != d.rows() || m0.cols() != d.cols()) throw std::invalid_argument("pencil: shape mismatch");
  std::vector<UniPoly> e;
  e.reserve(m0.rows() * m0.cols());
  for (std::size_t k = 0; k < m0.data().size(); ++k) e.emplace_back(std::vector<Rational>{m0.data()[k], d.data()[k]});
  return UniPolyMatrix::from_data(m0.rows(), m0.cols(), std::move(e));
}

/// Fraction-free elimination over Q[s]; every division is exact.
inline UniPoly poly_det(const UniPolyMatrix& p) {
  if (!p.is_square()) throw std::invalid_argument("poly_det: matrix is not square");
  const std::size_t n = p.rows();
  if (n == 0) return UniPoly(Rational(1));
  UniPolyMatrix a = p;
  UniPoly prev(Rational(1));
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a(piv, k).is_zero()) ++piv;
    if (piv == n) return UniPoly();
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(k, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = exact_div(a(i, j) * a(k, k) - a(i, k) * a(k, j), prev);
      a(i, k) = UniPoly();
    }
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

/// Memoized Laplace expansion: every minor det(rows R, cols C) is cached by
/// the bitmask pair (R, C), so enumerating all minors of a given size shares
/// the lower-order subproblems.  Masks are 0-based; size is limited to 16.
template <typename T>
class MinorTable {
public:
  MinorTable(const Matrix<T>& a, T zero, T one) : a_(a), zero_(std::move(zero)), one_(std::move(one)) {
    if (a.rows() > 16 || a.cols() > 16) throw std::invalid_argument("MinorTable: matrix larger than 16");
  }

  const T& minor(std::uint32_t rows, std::uint32_t cols) {
    if (std::popcount(rows) != std::popcount(cols)) throw std::invalid_argument("MinorTable: non-square minor");
    const std::uint32_t key = (rows << 16) | cols;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    T acc = zero_;
    if (rows == 0) {
      acc = one_;
    } else {
      const auto r0 = static_cast<std::size_t>(std::countr_zero(rows));
      const std::uint32_t rest = rows & (rows - 1);
      int sign = 1;
      for (std::uint32_t c = cols; c; c &= c - 1) {
        const auto j = static_cast<std::size_t>(std::countr_zero(c));
        const T& e = a_(r0, j);
        if (!e.is_zero()) {
          const T& sub = minor(rest, cols & ~(1u << j));
          if (!sub.is_zero()) {
            if (sign > 0)
              acc += e * sub;
            else
              acc -= e * sub;
          }
        }
        sign = -sign;
      }
    }
    return memo_.emplace(key, std::move(acc)).first->second;
  }

  std::size_t cached() const { return memo_.size(); }

private:
  const Matrix<T>& a_;
  T zero_;
  T one_;
  std::unordered_map<std::uint32_t, T> memo_;
};

inline MultiPoly poly_det(const MultiPolyMatrix& p, std::size_t arity) {
  if (!p.is_square()) throw std::invalid_argument("poly_det: matrix is not square");
  MinorTable<MultiPoly> table(p, MultiPoly(arity), MultiPoly(arity, Rational(1)));
  const std::uint32_t full = p.rows() == 0 ? 0u : static_cast<std::uint32_t>((1u << p.rows()) - 1);
  return table.minor(full, full);
}

/// All k-element subsets of {0..n-1} as bitmasks, in lexicographic order of
/// their sorted index lists.
inline std::vector<std::uint32_t> subsets(std::size_t n, std::size_t k) {
  std::vector<std::uint32_t> out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return out;
  for (;;) {
    std::uint32_t m = 0;
    for (auto i : idx) m |= 1u << i;
    out.push_back(m);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

/// 1-based index list of a bitmask.
inline std::vector<std::size_t> mask_indices(std::uint32_t m) {
  std::vector<std::size_t> out;
  for (; m; m &= m - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(m)) + 1);
  return out;
}

}  // namespace crk
