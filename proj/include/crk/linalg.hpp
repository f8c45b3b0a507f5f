#pragma once

// Exact linear algebra over Q: rank, determinant, inverse, kernels,
// Pfaffian, skew congruence normal form and symmetric inertia.

#include "crk/matrix.hpp"

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace crk {

namespace detail {

// Fraction-free (Bareiss) forward elimination in place.  Pivots are the first
// nonzero entry found scanning columns left to right and, within a column,
// rows top to bottom.  Returns the rank; `sign` tracks row swaps.
inline std::size_t bareiss(MatrixQ& a, int& sign) {
  sign = 1;
  const std::size_t m = a.rows(), n = a.cols();
  std::size_t row = 0;
  Rational prev(1);
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t piv = row;
    while (piv < m && a(piv, col).is_zero()) ++piv;
    if (piv == m) continue;
    if (piv != row) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(row, j));
      sign = -sign;
    }
    const Rational p = a(row, col);
    for (std::size_t i = row + 1; i < m; ++i) {
      const Rational f = a(i, col);
      for (std::size_t j = col + 1; j < n; ++j) a(i, j) = (a(i, j) * p - f * a(row, j)) / prev;
      a(i, col) = Rational(0);
    }
    prev = p;
    ++row;
  }
  return row;
}

}  // namespace detail

inline std::size_t rank(const MatrixQ& a) {
  MatrixQ w = a;
  int sign;
  return detail::bareiss(w, sign);
}

inline Rational det(const MatrixQ& a) {
  if (!a.is_square()) throw std::invalid_argument("det: matrix is not square");
  const std::size_t n = a.rows();
  if (n == 0) return Rational(1);
  MatrixQ w = a;
  int sign;
  if (detail::bareiss(w, sign) < n) return Rational(0);
  // With no skipped columns the last Bareiss pivot is the determinant up to swaps.
  return sign > 0 ? w(n - 1, n - 1) : -w(n - 1, n - 1);
}

/// A^{(cols)}_{(rows)} with 1-based indices, order preserved.
template <typename T>
Matrix<T> submatrix(const Matrix<T>& a, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  std::vector<T> d;
  d.reserve(rows.size() * cols.size());
  for (auto i : rows) {
    if (i < 1 || i > a.rows()) throw std::out_of_range("submatrix: row index out of range");
    for (auto j : cols) {
      if (j < 1 || j > a.cols()) throw std::out_of_range("submatrix: column index out of range");
      d.push_back(a(i - 1, j - 1));
    }
  }
  return Matrix<T>::from_data(rows.size(), cols.size(), std::move(d));
}

inline MatrixQ inverse(const MatrixQ& a) {
  if (!a.is_square()) throw std::invalid_argument("inverse: matrix is not square");
  const std::size_t n = a.rows();
  MatrixQ w = a, inv = identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && w(piv, col).is_zero()) ++piv;
    if (piv == n) throw std::domain_error("inverse: matrix is singular");
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(w(piv, j), w(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    const Rational p = w(col, col).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      w(col, j) *= p;
      inv(col, j) *= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || w(i, col).is_zero()) continue;
      const Rational f = w(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        w(i, j) -= f * w(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

/// Reduced row echelon form; returns the pivot columns.
inline std::vector<std::size_t> rref(MatrixQ& w) {
  const std::size_t m = w.rows(), n = w.cols();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t piv = row;
    while (piv < m && w(piv, col).is_zero()) ++piv;
    if (piv == m) continue;
    if (piv != row)
      for (std::size_t j = 0; j < n; ++j) std::swap(w(piv, j), w(row, j));
    const Rational p = w(row, col).inverse();
    for (std::size_t j = col; j < n; ++j) w(row, j) *= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || w(i, col).is_zero()) continue;
      const Rational f = w(i, col);
      for (std::size_t j = col; j < n; ++j) w(i, j) -= f * w(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

/// Basis of {x : A x = 0}.
inline std::vector<std::vector<Rational>> nullspace(const MatrixQ& a) {
  MatrixQ w = a;
  const auto pivots = rref(w);
  const std::size_t n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(n, Rational(0));
    v[free] = Rational(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -w(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Stacks equal-length vectors as the rows of a matrix.
inline MatrixQ rows_matrix(const std::vector<std::vector<Rational>>& vs, std::size_t width) {
  MatrixQ m = zeros(vs.size(), width);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i].size() != width) throw std::invalid_argument("rows_matrix: vector has wrong length");
    for (std::size_t j = 0; j < width; ++j) m(i, j) = vs[i][j];
  }
  return m;
}

inline std::size_t span_dimension(const std::vector<std::vector<Rational>>& vs, std::size_t width) {
  return rank(rows_matrix(vs, width));
}

inline std::vector<Rational> mat_vec(const MatrixQ& a, const std::vector<Rational>& x) {
  if (x.size() != a.cols()) throw std::invalid_argument("mat_vec: size mismatch");
  std::vector<Rational> y(a.rows(), Rational(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero()) y[i] += a(i, j) * x[j];
  return y;
}

inline Rational dot(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("dot: size mismatch");
  Rational acc(0);
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

namespace detail {

inline Rational pfaffian_rec(const MatrixQ& a, std::uint32_t mask, std::unordered_map<std::uint32_t, Rational>& memo) {
  if (mask == 0) return Rational(1);
  if (auto it = memo.find(mask); it != memo.end()) return it->second;
  std::size_t first = 0;
  while (!(mask & (1u << first))) ++first;
  const std::uint32_t rest = mask & ~(1u << first);
  Rational acc(0);
  int sign = 1;
  for (std::size_t j = first + 1; j < a.rows(); ++j) {
    if (!(rest & (1u << j))) continue;
    if (!a(first, j).is_zero()) {
      Rational term = a(first, j) * pfaffian_rec(a, rest & ~(1u << j), memo);
      if (sign > 0)
        acc += term;
      else
        acc -= term;
    }
    sign = -sign;
  }
  memo.emplace(mask, acc);
  return acc;
}

}  // namespace detail

/// Pfaffian by expansion along the first row, Pf(J ⊕ ... ⊕ J) = +1.
/// Odd sizes give 0.
inline Rational pfaffian(const SkewMatrixQ& s) {
  const MatrixQ& a = s.matrix();
  const std::size_t n = a.rows();
  if (n % 2) return Rational(0);
  if (n > 30) throw std::invalid_argument("pfaffian: matrix too large for expansion");
  std::unordered_map<std::uint32_t, Rational> memo;
  const std::uint32_t full = n == 0 ? 0u : static_cast<std::uint32_t>((1ull << n) - 1);
  return detail::pfaffian_rec(a, full, memo);
}

struct SkewNormalForm {
  MatrixQ q;        // invertible, q^T M q = Jbar_{2k} ⊕ 0
  std::size_t k = 0;  // half rank
};

/// Symplectic Gram-Schmidt over Q.  Columns of Q are e_1, f_1, ..., e_k, f_k
/// followed by a basis of the radical, with w(e_i, f_i) = 1.
inline SkewNormalForm skew_normal_form(const SkewMatrixQ& s) {
  const MatrixQ& m = s.matrix();
  const std::size_t n = m.rows();
  auto form = [&](const std::vector<Rational>& x, const std::vector<Rational>& y) {
    return dot(x, mat_vec(m, y));
  };
  std::vector<std::vector<Rational>> pool;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> e(n, Rational(0));
    e[i] = Rational(1);
    pool.push_back(std::move(e));
  }
  std::vector<std::vector<Rational>> cols;
  std::size_t k = 0;
  for (;;) {
    std::size_t pi = pool.size(), pj = pool.size();
    Rational w;
    for (std::size_t i = 0; i < pool.size() && pi == pool.size(); ++i)
      for (std::size_t j = i + 1; j < pool.size(); ++j) {
        w = form(pool[i], pool[j]);
        if (!w.is_zero()) {
          pi = i;
          pj = j;
          break;
        }
      }
    if (pi == pool.size()) break;
    auto e = pool[pi];
    auto f = pool[pj];
    for (auto& x : f) x /= w;
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pj));
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pi));
    for (auto& v : pool) {
      const Rational wf = form(v, f), we = form(v, e);
      for (std::size_t t = 0; t < n; ++t) v[t] = v[t] - wf * e[t] + we * f[t];
    }
    cols.push_back(std::move(e));
    cols.push_back(std::move(f));
    ++k;
  }
  for (auto& v : pool) cols.push_back(std::move(v));
  SkewNormalForm out;
  out.k = k;
  out.q = rows_matrix(cols, n).transpose();
  if (n == 0) out.q = zeros(0, 0);
  return out;
}

struct Inertia {
  std::size_t positive = 0;
  std::size_t negative = 0;
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Inertia of a symmetric matrix by symmetric (congruence) elimination.
/// A zero diagonal with a nonzero off-diagonal entry a_ij is fixed by adding
/// row/column j to row/column i, which makes the new a_ii = 2 a_ij.
inline Inertia symmetric_signature(const MatrixQ& a) {
  if (!a.is_symmetric()) throw std::invalid_argument("symmetric_signature: matrix is not symmetric");
  MatrixQ w = a;
  const std::size_t n = w.rows();
  Inertia out;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n && piv == n; ++i)
      if (!done[i] && !w(i, i).is_zero()) piv = i;
    if (piv == n) {
      // look for an off-diagonal entry among the remaining indices
      std::size_t pi = n, pj = n;
      for (std::size_t i = 0; i < n && pi == n; ++i) {
        if (done[i]) continue;
        for (std::size_t j = i + 1; j < n; ++j)
          if (!done[j] && !w(i, j).is_zero()) {
            pi = i;
            pj = j;
            break;
          }
      }
      if (pi == n) break;  // remaining block is zero
      for (std::size_t t = 0; t < n; ++t) w(pi, t) += w(pj, t);
      for (std::size_t t = 0; t < n; ++t) w(t, pi) += w(t, pj);
      piv = pi;
    }
    const Rational d = w(piv, piv);
    (d.sign() > 0 ? out.positive : out.negative) += 1;
    done[piv] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || w(i, piv).is_zero()) continue;
      const Rational f = w(i, piv) / d;
      for (std::size_t t = 0; t < n; ++t) w(i, t) -= f * w(piv, t);
      for (std::size_t t = 0; t < n; ++t) w(t, i) -= f * w(t, piv);
    }
  }
  return out;
}

}  // namespace crk
