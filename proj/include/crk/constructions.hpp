#pragma once

// Named matrix families over Q and the maximal constant-rank subspaces of
// antisymmetric matrices, with their closed-form dimensions.
//
// Index conventions follow the usual mathematical notation: E(n, i, j), the
// block grid (i, j) and the column indices j1, j2 of a C block are 1-based.

#include "crk/linalg.hpp"
#include "crk/subspace.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace crk {

// ---------------------------------------------------------------------------
// Elementary builders

inline MatrixQ build_J() { return matrix_of({{0, 1}, {-1, 0}}); }

/// Block diagonal J ⊕ ... ⊕ J of the given (even) size.
inline MatrixQ build_Jbar(std::size_t size) {
  if (size % 2) throw std::invalid_argument("build_Jbar: size must be even");
  MatrixQ m = zeros(size, size);
  for (std::size_t k = 0; k < size; k += 2) m.set_block(k, k, build_J());
  return m;
}

inline MatrixQ build_E(std::size_t n, std::size_t i, std::size_t j) {
  if (i < 1 || i > n || j < 1 || j > n) throw std::out_of_range("build_E: index out of range");
  MatrixQ m = zeros(n, n);
  m(i - 1, j - 1) = Rational(1);
  return m;
}

/// diag(l_1 J, ..., l_r J)
inline MatrixQ build_T(const std::vector<Rational>& ls) {
  MatrixQ m = zeros(2 * ls.size(), 2 * ls.size());
  for (std::size_t k = 0; k < ls.size(); ++k) {
    MatrixQ j = build_J();
    m.set_block(2 * k, 2 * k, j.scale(ls[k]));
  }
  return m;
}

/// J̃ = Jbar_{2r} ⊕ 0_{(n-2r)x(n-2r)}
inline MatrixQ build_Jtilde(std::size_t n, std::size_t r) {
  if (2 * r > n) throw std::invalid_argument("build_Jtilde: 2r exceeds n");
  return direct_sum(build_Jbar(2 * r), zeros(n - 2 * r, n - 2 * r));
}

/// Embeds a square matrix in the top-left corner of an n x n zero matrix.
inline MatrixQ embed_top_left(const MatrixQ& a, std::size_t n) {
  MatrixQ m = zeros(n, n);
  m.set_block(0, 0, a);
  return m;
}

// ---------------------------------------------------------------------------
// Block grids A_{i,j}, 1 <= i < j <= m

class BlockGrid {
public:
  explicit BlockGrid(std::size_t m) : m_(m) {}

  std::size_t size() const { return m_; }

  BlockGrid& set(std::size_t i, std::size_t j, MatrixQ block) {
    if (!(1 <= i && i < j && j <= m_)) throw std::out_of_range("BlockGrid: need 1 <= i < j <= m");
    if (block.rows() != 2 || block.cols() != 2) throw std::invalid_argument("BlockGrid: blocks must be 2x2");
    blocks_[{i, j}] = std::move(block);
    return *this;
  }

  const MatrixQ& at(std::size_t i, std::size_t j) const {
    auto it = blocks_.find({i, j});
    if (it == blocks_.end())
      throw std::invalid_argument("BlockGrid: missing block (" + std::to_string(i) + "," + std::to_string(j) + ")");
    return it->second;
  }

  bool complete() const { return blocks_.size() == m_ * (m_ - (m_ ? 1 : 0)) / 2; }

  static BlockGrid zero(std::size_t m) {
    BlockGrid g(m);
    for (std::size_t i = 1; i <= m; ++i)
      for (std::size_t j = i + 1; j <= m; ++j) g.set(i, j, zeros(2, 2));
    return g;
  }

private:
  std::size_t m_;
  std::map<std::pair<std::size_t, std::size_t>, MatrixQ> blocks_;
};

namespace detail {

inline MatrixQ assemble(const BlockGrid& g, bool antisymmetric) {
  if (!g.complete()) throw std::invalid_argument("block grid is incomplete");
  const std::size_t m = g.size();
  MatrixQ out = zeros(2 * m, 2 * m);
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = i + 1; j <= m; ++j) {
      const MatrixQ& a = g.at(i, j);
      out.set_block(2 * (i - 1), 2 * (j - 1), a);
      out.set_block(2 * (j - 1), 2 * (i - 1), antisymmetric ? -a.transpose() : a.transpose());
    }
  return out;
}

}  // namespace detail

/// R(A_{i,j}): A_{i,j} above the diagonal, -A_{i,j}^T below.
inline SkewMatrixQ build_R(const BlockGrid& g) { return SkewMatrixQ(detail::assemble(g, true)); }

/// X(A_{i,j}): A_{i,j} above the diagonal, A_{i,j}^T below.
inline MatrixQ build_X(const BlockGrid& g) { return detail::assemble(g, false); }

inline void require_2x2(const MatrixQ& a, const char* who) {
  if (a.rows() != 2 || a.cols() != 2) throw std::invalid_argument(std::string(who) + ": expected a 2x2 matrix");
}

/// [[a, b], [b, -a]]
inline bool is_pinco(const MatrixQ& a) {
  require_2x2(a, "is_pinco");
  return a(0, 1) == a(1, 0) && a(1, 1) == -a(0, 0);
}

/// [[a, b], [-b, a]]
inline bool is_antipinco(const MatrixQ& a) {
  require_2x2(a, "is_antipinco");
  return a(1, 0) == -a(0, 1) && a(1, 1) == a(0, 0);
}

/// J P for a pinco P.
inline MatrixQ pinco_tilde(const MatrixQ& p) {
  if (!is_pinco(p)) throw std::invalid_argument("pinco_tilde: matrix is not pinco");
  return build_J() * p;
}

inline MatrixQ antipinco(const Rational& a, const Rational& b) {
  MatrixQ m = zeros(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = -b;
  m(1, 1) = a;
  return m;
}

// ---------------------------------------------------------------------------
// Dimension formulas

/// Maximal dimension of an affine subspace of n x n antisymmetric real
/// matrices of constant rank `rank2r` (the even rank, not its half).
inline std::size_t max_dim_antisym(std::size_t n, std::size_t rank2r) {
  if (rank2r % 2) throw std::invalid_argument("max_dim_antisym: odd rank; antisymmetric matrices have even rank");
  if (rank2r < 2 || rank2r > n) throw std::invalid_argument("max_dim_antisym: need 2 <= rank <= n");
  const std::size_t r = rank2r / 2;
  if (n >= 2 * r + 2) return (n - r - 1) * r;
  if (n == 2 * r + 1) return r * (r + 1);
  return r * (r - 1);
}

/// Upper bound floor(r/2) (n - floor(r/2)) for constant-rank affine subspaces
/// of real symmetric n x n matrices.
inline std::size_t a_sym_upper_bound(std::size_t n, std::size_t r) {
  if (r > n) throw std::invalid_argument("a_sym_upper_bound: need r <= n");
  const std::size_t h = r / 2;
  return h * (n - h);
}

/// r n - r (r + 1) / 2: maximal dimension of constant-rank-r affine subspaces
/// of real m x n matrices, r <= m <= n.
inline std::size_t a_rect(std::size_t m, std::size_t n, std::size_t r) {
  if (!(r <= m && m <= n)) throw std::invalid_argument("a_rect: need r <= m <= n");
  return r * n - r * (r + 1) / 2;
}

// ---------------------------------------------------------------------------
// Witness subspaces

enum class Regime { wide, odd, tight };

inline const char* to_string(Regime g) {
  switch (g) {
    case Regime::wide: return "wide";
    case Regime::odd: return "odd";
    case Regime::tight: return "tight";
  }
  return "wide";
}

struct WitnessParams {
  std::size_t n;
  std::size_t r;  // half rank

  WitnessParams(std::size_t n_, std::size_t r_) : n(n_), r(r_) {
    if (r < 1 || n < 2 * r)
      throw std::invalid_argument("WitnessParams: need n >= 2r >= 2 (n=" + std::to_string(n) +
                                  ", r=" + std::to_string(r) + ")");
  }
  Regime regime() const {
    if (n >= 2 * r + 2) return Regime::wide;
    return n == 2 * r + 1 ? Regime::odd : Regime::tight;
  }
};

/// n x n antisymmetric matrix with value v at (i, j) and -v at (j, i), 1-based.
inline MatrixQ skew_unit(std::size_t n, std::size_t i, std::size_t j, const Rational& v = Rational(1)) {
  MatrixQ m = zeros(n, n);
  m.at(i - 1, j - 1) = v;
  m.at(j - 1, i - 1) = -v;
  return m;
}

/// J̃ + { [[R(A_{i,j}), C], [-C^T, 0]] } where every A_{i,j} has zero second
/// row, and C is 2r x (n-2r) with zero even rows (wide), a free column (odd)
/// or absent (tight).  Basis order: C entries column-major, then A blocks in
/// lexicographic (i, j) order, first-row entries left to right.
inline AffineMatrixSubspace witness_subspace(const WitnessParams& p) {
  const std::size_t n = p.n, r = p.r;
  std::vector<MatrixQ> basis;
  const Regime g = p.regime();
  if (g != Regime::tight) {
    for (std::size_t col = 1; col <= n - 2 * r; ++col)
      for (std::size_t row = 1; row <= 2 * r; ++row) {
        if (g == Regime::wide && row % 2 == 0) continue;
        basis.push_back(skew_unit(n, row, 2 * r + col));
      }
  }
  for (std::size_t i = 1; i <= r; ++i)
    for (std::size_t j = i + 1; j <= r; ++j) {
      basis.push_back(skew_unit(n, 2 * i - 1, 2 * j - 1));
      basis.push_back(skew_unit(n, 2 * i - 1, 2 * j));
    }
  return AffineMatrixSubspace(Ambient::antisymmetric, build_Jtilde(n, r), std::move(basis));
}

// ---------------------------------------------------------------------------
// Pieces of the upper-bound argument

/// U = { T(l) + R(A_{i,j}) : A_{i,j} antipinco } embedded top-left in n x n,
/// as a linear subspace (zero base).  Basis: T(e_k) for k = 1..r, then for each
/// (i, j) the blocks I_2 and J.
inline AffineMatrixSubspace build_U(std::size_t r, std::size_t n = 0) {
  if (r < 1) throw std::invalid_argument("build_U: need r >= 1");
  if (n == 0) n = 2 * r;
  if (n < 2 * r) throw std::invalid_argument("build_U: need n >= 2r");
  std::vector<MatrixQ> basis;
  for (std::size_t k = 0; k < r; ++k) {
    std::vector<Rational> ls(r, Rational(0));
    ls[k] = Rational(1);
    basis.push_back(embed_top_left(build_T(ls), n));
  }
  for (std::size_t i = 1; i <= r; ++i)
    for (std::size_t j = i + 1; j <= r; ++j)
      for (const auto& blk : {antipinco(Rational(1), Rational(0)), antipinco(Rational(0), Rational(1))}) {
        BlockGrid g = BlockGrid::zero(r);
        g.set(i, j, blk);
        basis.push_back(embed_top_left(build_R(g).matrix(), n));
      }
  return AffineMatrixSubspace(Ambient::antisymmetric, zeros(n, n), std::move(basis));
}

/// The n x n antisymmetric matrix [[0, C], [-C^T, 0]] for a 2r x (n-2r) block C.
inline MatrixQ k_matrix(const MatrixQ& c, std::size_t n) {
  const std::size_t two_r = c.rows();
  if (two_r + c.cols() != n) throw std::invalid_argument("k_matrix: C has the wrong shape");
  MatrixQ m = zeros(n, n);
  m.set_block(0, two_r, c);
  m.set_block(two_r, 0, -c.transpose());
  return m;
}

/// The C block (rows 1..2r, columns 2r+1..n) of an n x n matrix.
inline MatrixQ c_block(const MatrixQ& m, std::size_t r) { return m.block(0, 2 * r, 2 * r, m.cols() - 2 * r); }

/// sum_i c_{2i-1, j2} c_{2i, j1} - c_{2i-1, j1} c_{2i, j2}, 1-based columns of C.
inline Rational quadratic_form_defpos(const MatrixQ& c, std::size_t j1, std::size_t j2) {
  if (c.rows() % 2) throw std::invalid_argument("quadratic_form_defpos: C must have 2r rows");
  if (j1 < 1 || j2 < 1 || j1 > c.cols() || j2 > c.cols())
    throw std::out_of_range("quadratic_form_defpos: column index out of range");
  Rational acc(0);
  for (std::size_t i = 0; i < c.rows(); i += 2) {
    acc += c(i, j2 - 1) * c(i + 1, j1 - 1);
    acc -= c(i, j1 - 1) * c(i + 1, j2 - 1);
  }
  return acc;
}

/// Gram matrix of the form above in the coordinates (C^{(j1)}, C^{(j2)}) of K_{j1,j2}.
inline MatrixQ defpos_gram(std::size_t r) {
  const Rational half(1, 2);
  MatrixQ g = zeros(4 * r, 4 * r);
  for (std::size_t i = 0; i < r; ++i) {
    const std::size_t x = 2 * i, y = 2 * i + 1, z = 2 * r + 2 * i, w = 2 * r + 2 * i + 1;
    g(z, y) = g(y, z) = half;
    g(x, w) = g(w, x) = -half;
  }
  return g;
}

/// A 2r-dimensional subspace of K_{j1,j2} on which the form is positive
/// definite.  Per block i, with (x, y, z, w) = (c_{2i-1,j1}, c_{2i,j1},
/// c_{2i-1,j2}, c_{2i,j2}) the form is zy - xw; the vectors (0,1,1,0) and
/// (1,0,0,-1) span a plane where it equals a^2 + b^2.
inline std::vector<MatrixQ> build_Z(std::size_t n, std::size_t r, std::size_t j1, std::size_t j2) {
  if (j1 == j2) throw std::invalid_argument("build_Z: need j1 != j2");
  if (2 * r >= n || j1 < 1 || j2 < 1 || j1 > n - 2 * r || j2 > n - 2 * r)
    throw std::out_of_range("build_Z: column index out of range");
  std::vector<MatrixQ> out;
  for (std::size_t i = 0; i < r; ++i) {
    MatrixQ c1 = zeros(2 * r, n - 2 * r), c2 = zeros(2 * r, n - 2 * r);
    c1(2 * i + 1, j1 - 1) = Rational(1);
    c1(2 * i, j2 - 1) = Rational(1);
    c2(2 * i, j1 - 1) = Rational(1);
    c2(2 * i + 1, j2 - 1) = Rational(-1);
    out.push_back(k_matrix(c1, n));
    out.push_back(k_matrix(c2, n));
  }
  return out;
}

struct SsCheck {
  MatrixQ lhs;  // -Jbar (Jbar + s [T(l) + R(A)])
  MatrixQ rhs;  // I + s A
  MatrixQ a;    // diag(l1, l1, ..., lr, lr) + X(T_{i,j})
  bool a_symmetric = false;
  bool holds() const { return lhs == rhs && a_symmetric; }
};

/// Both sides of -Jbar (Jbar + s [T(l) + R(A_{i,j})]) = I + s A for antipinco
/// blocks.  The right side is built independently from T_{i,j} = -J A_{i,j}.
inline SsCheck identity_ss_check(const std::vector<Rational>& ls, const BlockGrid& blocks, const Rational& s) {
  const std::size_t r = ls.size();
  if (blocks.size() != r) throw std::invalid_argument("identity_ss_check: block grid size must equal r");
  for (std::size_t i = 1; i <= r; ++i)
    for (std::size_t j = i + 1; j <= r; ++j)
      if (!is_antipinco(blocks.at(i, j)))
        throw std::invalid_argument("identity_ss_check: block (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") is not antipinco");
  const MatrixQ jb = build_Jbar(2 * r);
  MatrixQ u = build_T(ls) + build_R(blocks).matrix();
  SsCheck out;
  out.lhs = -jb * (jb + u.scale(s));

  BlockGrid t(r);
  for (std::size_t i = 1; i <= r; ++i)
    for (std::size_t j = i + 1; j <= r; ++j) t.set(i, j, -(build_J() * blocks.at(i, j)));
  out.a = build_X(t);
  for (std::size_t k = 0; k < r; ++k) {
    out.a(2 * k, 2 * k) += ls[k];
    out.a(2 * k + 1, 2 * k + 1) += ls[k];
  }
  out.a_symmetric = out.a.is_symmetric();
  MatrixQ sa = out.a;
  out.rhs = identity(2 * r) + sa.scale(s);
  return out;
}

struct BoundLedger {
  std::size_t dim_p;  // antisymmetric matrices with zero lower-right block
  std::size_t dim_u;
  std::size_t dim_z;
  std::size_t bound;
};

/// dim P - dim U - dim Z, which must equal r (n - r - 1).  Only for n >= 2r + 2.
inline BoundLedger bound_ledger(std::size_t n, std::size_t r) {
  if (r < 1 || n < 2 * r + 2) throw std::invalid_argument("bound_ledger: requires n >= 2r + 2");
  BoundLedger b;
  b.dim_p = r * (2 * r - 1) + 2 * r * (n - 2 * r);
  b.dim_u = r * r;
  b.dim_z = r * (n - 2 * r);
  b.bound = b.dim_p - b.dim_u - b.dim_z;
  if (b.bound != r * (n - r - 1)) throw std::logic_error("bound_ledger: dimension count does not close");
  return b;
}

}  // namespace crk
