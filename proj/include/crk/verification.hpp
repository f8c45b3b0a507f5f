#pragma once

// Executable checks of the supporting lemmas and of each step of the
// upper-bound argument, plus a randomized search for constant-rank
// extensions of the witness subspaces.

#include "crk/constructions.hpp"
#include "crk/linalg.hpp"
#include "crk/poly_matrix.hpp"
#include "crk/random.hpp"
#include "crk/subspace.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace crk {

struct LemmaResult {
  LemmaResult() = default;
  explicit LemmaResult(std::string name) : id(std::move(name)) {}

  std::string id;
  std::size_t attempted = 0;
  std::size_t passed = 0;
  // (name, value) pairs describing the first failing trial, if any
  std::vector<std::pair<std::string, std::string>> failure;

  bool ok() const { return passed == attempted; }

  void record(bool pass, std::vector<std::pair<std::string, std::string>> payload = {}) {
    ++attempted;
    if (pass)
      ++passed;
    else if (failure.empty())
      failure = std::move(payload);
  }
  void merge(const LemmaResult& o) {
    attempted += o.attempted;
    passed += o.passed;
    if (failure.empty()) failure = o.failure;
  }
};

inline std::string vec_str(const std::vector<Rational>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + "]";
}

// ---------------------------------------------------------------------------
// Bordered determinants

/// [[M, c], [b^T, corner]]
inline MatrixQ bordered(const MatrixQ& m, const std::vector<Rational>& b, const std::vector<Rational>& c,
                        const Rational& corner = Rational(0)) {
  const std::size_t n = m.rows();
  if (!m.is_square() || b.size() != n || c.size() != n) throw std::invalid_argument("bordered: size mismatch");
  MatrixQ out = zeros(n + 1, n + 1);
  out.set_block(0, 0, m);
  for (std::size_t i = 0; i < n; ++i) {
    out(i, n) = c[i];
    out(n, i) = b[i];
  }
  out(n, n) = corner;
  return out;
}

/// c_2 b_1 - c_1 b_2 + c_4 b_3 - c_3 b_4 + ...
inline Rational lemma4_form(const std::vector<Rational>& b, const std::vector<Rational>& c) {
  if (b.size() != c.size() || b.size() % 2) throw std::invalid_argument("lemma4_form: need vectors of equal even length");
  Rational acc(0);
  for (std::size_t i = 0; i < b.size(); i += 2) acc += c[i + 1] * b[i] - c[i] * b[i + 1];
  return acc;
}

inline LemmaResult check_lemma4(const std::vector<Rational>& b, const std::vector<Rational>& c) {
  if (b.size() % 2 || b.size() != c.size() || b.empty())
    throw std::invalid_argument("check_lemma4: b and c must have the same even length 2r");
  LemmaResult res{"lemma4"};
  const Rational lhs = det(bordered(build_Jbar(b.size()), b, c));
  const Rational rhs = lemma4_form(b, c);
  res.record(lhs == rhs, {{"b", vec_str(b)}, {"c", vec_str(c)}, {"det", lhs.str()}, {"form", rhs.str()}});
  return res;
}

/// p(s) = det [[Jbar + s A, s c], [s b^T, 0]] over Q[s].
inline UniPoly corollary5_polynomial(const MatrixQ& a, const std::vector<Rational>& b, const std::vector<Rational>& c) {
  const std::size_t n = a.rows();
  const MatrixQ m0 = bordered(build_Jbar(n), std::vector<Rational>(n, Rational(0)), std::vector<Rational>(n, Rational(0)));
  const MatrixQ d = bordered(a, b, c);
  return poly_det(pencil(m0, d));
}

inline LemmaResult check_corollary5(const MatrixQ& a, const std::vector<Rational>& b, const std::vector<Rational>& c) {
  const std::size_t n = a.rows();
  if (!a.is_square() || n % 2 || n == 0 || b.size() != n || c.size() != n)
    throw std::invalid_argument("check_corollary5: A must be 2r x 2r and b, c of length 2r");
  auto nonzero = [](const std::vector<Rational>& v) {
    for (const auto& x : v)
      if (!x.is_zero()) return true;
    return false;
  };
  if (!nonzero(b) || !nonzero(c)) throw std::invalid_argument("check_corollary5: b and c must be nonzero");
  LemmaResult res{"corollary5"};
  const UniPoly p = corollary5_polynomial(a, b, c);
  const Rational form = lemma4_form(b, c);
  const bool pass = p.coeff(0).is_zero() && p.coeff(1).is_zero() && p.coeff(2) == form;
  res.record(pass, {{"A", a.str()}, {"b", vec_str(b)}, {"c", vec_str(c)}, {"p", p.str()}, {"form", form.str()}});
  return res;
}

/// det [[M, c], [b^T, 0]] = det(M) * (-b^T M^{-1} c) for invertible M.
inline LemmaResult check_schur_bordered(const MatrixQ& m, const std::vector<Rational>& b, const std::vector<Rational>& c) {
  const Rational dm = det(m);
  if (dm.is_zero()) throw std::domain_error("check_schur_bordered: M is singular");
  LemmaResult res{"schur-bordered"};
  const Rational lhs = det(bordered(m, b, c));
  const Rational rhs = dm * -dot(b, mat_vec(inverse(m), c));
  res.record(lhs == rhs, {{"M", m.str()}, {"b", vec_str(b)}, {"c", vec_str(c)}, {"lhs", lhs.str()}, {"rhs", rhs.str()}});
  return res;
}

// ---------------------------------------------------------------------------
// Projection lemmas

namespace detail {

inline std::vector<std::size_t> range1(std::size_t from, std::size_t to) {
  std::vector<std::size_t> v;
  for (std::size_t i = from; i <= to; ++i) v.push_back(i);
  return v;
}

inline std::vector<std::size_t> concat(std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Random subspace of Q^width of dimension `dim` (or less if unlucky), as row vectors.
inline std::vector<std::vector<Rational>> random_subspace(Rng& rng, std::size_t width, std::size_t dim) {
  std::vector<std::vector<Rational>> vs;
  for (std::size_t k = 0; k < dim; ++k) vs.push_back(rng.rationals(width, {3, 2}));
  return vs;
}

// Adds rows forcing the coordinates `idx` (1-based) of x into span(target).
inline void constrain(std::vector<std::vector<Rational>>& rows, std::size_t h, const std::vector<std::size_t>& idx,
                      const std::vector<std::vector<Rational>>& target) {
  const auto normals =
      target.empty() ? nullspace(zeros(1, idx.size())) : nullspace(rows_matrix(target, idx.size()));
  for (const auto& y : normals) {
    std::vector<Rational> row(h, Rational(0));
    for (std::size_t t = 0; t < idx.size(); ++t) row[idx[t] - 1] = y[t];
    rows.push_back(std::move(row));
  }
}

// Random subspace of the solution space of `rows` (all of Q^h when empty).
inline std::vector<std::vector<Rational>> random_solution_subspace(Rng& rng, std::size_t h,
                                                                   const std::vector<std::vector<Rational>>& rows) {
  const auto w = rows.empty() ? nullspace(zeros(1, h)) : nullspace(rows_matrix(rows, h));
  if (w.empty()) return {};
  const std::size_t k = 1 + rng.index(w.size());
  std::vector<std::vector<Rational>> v;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Rational> x(h, Rational(0));
    for (const auto& basis_vec : w) {
      const Rational f = rng.rational({4, 3});
      if (f.is_zero()) continue;
      for (std::size_t t = 0; t < h; ++t) x[t] += f * basis_vec[t];
    }
    v.push_back(std::move(x));
  }
  return v;
}

// Targets for the three projections of the first 3m coordinates.  Even trials
// use the extremal product shape S_a x S_b, S_b x S_c, S_a x S_c; odd trials
// use independent random targets of dimension <= 2r.
inline void constrain_three_projections(Rng& rng, std::vector<std::vector<Rational>>& rows, std::size_t h,
                                        std::size_t m, std::size_t r, bool extremal) {
  const auto p1 = concat(range1(1, m), range1(m + 1, 2 * m));
  const auto p2 = range1(m + 1, 3 * m);
  const auto p3 = concat(range1(1, m), range1(2 * m + 1, 3 * m));
  const std::size_t cap = std::min(2 * r, 2 * m);
  if (extremal) {
    const std::size_t d = std::min(r, m);
    auto sa = random_subspace(rng, m, d), sb = random_subspace(rng, m, d), sc = random_subspace(rng, m, d);
    auto product = [&](const std::vector<std::vector<Rational>>& x, const std::vector<std::vector<Rational>>& y) {
      std::vector<std::vector<Rational>> out;
      for (const auto& v : x) {
        auto w = v;
        w.resize(2 * m, Rational(0));
        out.push_back(std::move(w));
      }
      for (const auto& v : y) {
        std::vector<Rational> w(m, Rational(0));
        w.insert(w.end(), v.begin(), v.end());
        out.push_back(std::move(w));
      }
      return out;
    };
    constrain(rows, h, p1, product(sa, sb));
    constrain(rows, h, p2, product(sb, sc));
    constrain(rows, h, p3, product(sa, sc));
  } else {
    constrain(rows, h, p1, random_subspace(rng, 2 * m, rng.index(cap + 1)));
    constrain(rows, h, p2, random_subspace(rng, 2 * m, rng.index(cap + 1)));
    constrain(rows, h, p3, random_subspace(rng, 2 * m, rng.index(cap + 1)));
  }
}

}  // namespace detail

/// If dim pi_i(V) <= 2r for the three projections of Q^{3m}, then dim V <= 3r.
/// Hypothesis-satisfying V are built constructively; the contrapositive is
/// checked on unconstrained random V of dimension >= 3r + 1 when 3r + 1 <= 3m.
inline LemmaResult check_lemma2(std::size_t m, std::size_t r, std::size_t trials, std::uint64_t seed) {
  if (m < 1 || r < 1) throw std::invalid_argument("check_lemma2: need m, r >= 1");
  LemmaResult res{"lemma2"};
  const std::size_t h = 3 * m;
  const auto p1 = detail::concat(detail::range1(1, m), detail::range1(m + 1, 2 * m));
  const auto p2 = detail::range1(m + 1, 3 * m);
  const auto p3 = detail::concat(detail::range1(1, m), detail::range1(2 * m + 1, 3 * m));
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, t);
    std::vector<std::vector<Rational>> rows;
    detail::constrain_three_projections(rng, rows, h, m, r, t % 2 == 0);
    const auto v = detail::random_solution_subspace(rng, h, rows);
    const std::size_t d1 = coordinate_projection(v, p1), d2 = coordinate_projection(v, p2),
                      d3 = coordinate_projection(v, p3);
    const std::size_t dv = span_dimension(v, h);
    const bool hyp = d1 <= 2 * r && d2 <= 2 * r && d3 <= 2 * r;
    res.record(hyp && dv <= 3 * r, {{"trial", std::to_string(t)},
                                    {"dims pi", std::to_string(d1) + "," + std::to_string(d2) + "," + std::to_string(d3)},
                                    {"dim V", std::to_string(dv)},
                                    {"hypothesis", hyp ? "true" : "false"}});
  }
  if (3 * r + 1 <= 3 * m) {
    for (std::size_t t = 0; t < trials; ++t) {
      Rng rng = Rng::stream(seed ^ 0xc0ffeeULL, t);
      const std::size_t k = 3 * r + 1 + rng.index(3 * m - 3 * r);
      const auto v = detail::random_subspace(rng, h, k);
      const std::size_t dv = span_dimension(v, h);
      if (dv < 3 * r + 1) continue;  // degenerate draw; the contrapositive says nothing
      const std::size_t best =
          std::max({coordinate_projection(v, p1), coordinate_projection(v, p2), coordinate_projection(v, p3)});
      res.record(best >= 2 * r + 1,
                 {{"contrapositive trial", std::to_string(t)}, {"dim V", std::to_string(dv)}, {"max pi", std::to_string(best)}});
    }
  }
  return res;
}

/// dim pi_i(V) <= 2r and dim p_j(V) <= q_j imply dim V <= sum q_j + 3r.
inline LemmaResult check_lemma3(std::size_t m, std::size_t r, const std::vector<std::size_t>& n_list,
                                const std::vector<std::size_t>& q_list, std::size_t trials, std::uint64_t seed) {
  if (n_list.size() != q_list.size()) throw std::invalid_argument("check_lemma3: n_list and q_list differ in length");
  std::size_t h = 3 * m, qsum = 0;
  for (std::size_t j = 0; j < n_list.size(); ++j) {
    if (q_list[j] > n_list[j]) throw std::invalid_argument("check_lemma3: need q_j <= n_j");
    h += n_list[j];
    qsum += q_list[j];
  }
  LemmaResult res{"lemma3"};
  const auto p1 = detail::concat(detail::range1(1, m), detail::range1(m + 1, 2 * m));
  const auto p2 = detail::range1(m + 1, 3 * m);
  const auto p3 = detail::concat(detail::range1(1, m), detail::range1(2 * m + 1, 3 * m));
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, t);
    std::vector<std::vector<Rational>> rows;
    detail::constrain_three_projections(rng, rows, h, m, r, t % 2 == 0);
    std::size_t offset = 3 * m;
    std::vector<std::vector<std::size_t>> blocks;
    for (std::size_t j = 0; j < n_list.size(); ++j) {
      auto idx = detail::range1(offset + 1, offset + n_list[j]);
      detail::constrain(rows, h, idx, detail::random_subspace(rng, n_list[j], q_list[j]));
      blocks.push_back(std::move(idx));
      offset += n_list[j];
    }
    const auto v = detail::random_solution_subspace(rng, h, rows);
    bool hyp = coordinate_projection(v, p1) <= 2 * r && coordinate_projection(v, p2) <= 2 * r &&
               coordinate_projection(v, p3) <= 2 * r;
    for (std::size_t j = 0; j < blocks.size(); ++j) hyp = hyp && coordinate_projection(v, blocks[j]) <= q_list[j];
    const std::size_t dv = span_dimension(v, h);
    res.record(hyp && dv <= qsum + 3 * r, {{"trial", std::to_string(t)},
                                            {"dim V", std::to_string(dv)},
                                            {"bound", std::to_string(qsum + 3 * r)},
                                            {"hypothesis", hyp ? "true" : "false"}});
  }
  return res;
}

// ---------------------------------------------------------------------------
// Randomized suites for the bordered-determinant facts and the (ss) identity

inline LemmaResult lemma4_suite(std::size_t r, std::size_t trials, std::uint64_t seed) {
  LemmaResult res{"lemma4"};
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, t);
    res.merge(check_lemma4(rng.rationals(2 * r), rng.rationals(2 * r)));
  }
  return res;
}

inline std::vector<Rational> nonzero_vector(Rng& rng, std::size_t n) {
  for (;;) {
    auto v = rng.rationals(n);
    for (const auto& x : v)
      if (!x.is_zero()) return v;
  }
}

inline MatrixQ random_matrix(Rng& rng, std::size_t rows, std::size_t cols, const RationalPolicy& p = {}) {
  MatrixQ m = zeros(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.rational(p);
  return m;
}

inline MatrixQ random_skew(Rng& rng, std::size_t n, const RationalPolicy& p = {}) {
  MatrixQ m = zeros(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = rng.rational(p);
      m(j, i) = -m(i, j);
    }
  return m;
}

inline MatrixQ random_invertible(Rng& rng, std::size_t n, const RationalPolicy& p = {}) {
  for (;;) {
    MatrixQ m = random_matrix(rng, n, n, p);
    if (rank(m) == n) return m;
  }
}

inline LemmaResult corollary5_suite(std::size_t r, std::size_t trials, std::uint64_t seed) {
  LemmaResult res{"corollary5"};
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, t);
    MatrixQ a = random_matrix(rng, 2 * r, 2 * r);
    auto b = nonzero_vector(rng, 2 * r);
    auto c = nonzero_vector(rng, 2 * r);
    res.merge(check_corollary5(a, b, c));
  }
  return res;
}

inline LemmaResult schur_suite(std::size_t max_size, std::size_t trials, std::uint64_t seed) {
  LemmaResult res{"schur-bordered"};
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, t);
    const std::size_t n = 1 + rng.index(max_size);
    res.merge(check_schur_bordered(random_invertible(rng, n), rng.rationals(n), rng.rationals(n)));
  }
  return res;
}

inline BlockGrid random_antipinco_grid(Rng& rng, std::size_t r) {
  BlockGrid g(r);
  for (std::size_t i = 1; i <= r; ++i)
    for (std::size_t j = i + 1; j <= r; ++j) g.set(i, j, antipinco(rng.rational(), rng.rational()));
  return g;
}

inline LemmaResult ss_identity_suite(std::size_t r, std::size_t trials, std::uint64_t seed) {
  LemmaResult res{"identity-ss"};
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, t);
    auto ls = rng.rationals(r);
    auto g = random_antipinco_grid(rng, r);
    const Rational s = rng.rational();
    auto chk = identity_ss_check(ls, g, s);
    res.record(chk.holds(), {{"l", vec_str(ls)}, {"s", s.str()}, {"lhs", chk.lhs.str()}, {"rhs", chk.rhs.str()}});
  }
  return res;
}

/// For nonzero u in U, det(Jbar + s u) has a real root (found by Sturm isolation).
inline LemmaResult ss_rank_drop_suite(std::size_t r, std::size_t trials, std::uint64_t seed) {
  LemmaResult res{"identity-ss-rank-drop"};
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, t);
    MatrixQ u;
    do {
      u = build_T(rng.rationals(r)) + build_R(random_antipinco_grid(rng, r)).matrix();
    } while (u.is_zero());
    auto drop = line_rank_drop(build_Jbar(2 * r), u);
    res.record(drop.drops, {{"u", u.str()}, {"det", drop.polynomial.str()}});
  }
  return res;
}

// ---------------------------------------------------------------------------
// Claim V ⊆ P

struct NormalizedSubspace {
  AffineMatrixSubspace subspace;  // base equals J̃ exactly
  MatrixQ q;                      // the congruence used
};

/// Brings an antisymmetric affine subspace whose base has rank 2r to base J̃.
inline NormalizedSubspace normalize_base(const AffineMatrixSubspace& s, std::size_t rank2r) {
  if (s.ambient() != Ambient::antisymmetric) throw std::invalid_argument("normalize_base: subspace must be antisymmetric");
  auto nf = skew_normal_form(SkewMatrixQ(s.base()));
  if (2 * nf.k != rank2r)
    throw std::invalid_argument("normalize_base: base has rank " + std::to_string(2 * nf.k) + ", expected " +
                                std::to_string(rank2r));
  auto t = s.congruence_transform(nf.q);
  if (!(t.base() == build_Jtilde(s.rows(), nf.k))) throw std::logic_error("normalize_base: normal form mismatch");
  return {std::move(t), std::move(nf.q)};
}

/// After moving the base to J̃, every basis matrix must have a zero
/// lower-right (n-2r) x (n-2r) block.  The caller is responsible for S being
/// constant-rank.
inline LemmaResult check_V_in_P(const AffineMatrixSubspace& s, std::size_t rank2r) {
  auto norm = normalize_base(s, rank2r);
  const std::size_t n = s.rows(), k = n - rank2r;
  LemmaResult res{"V-in-P"};
  for (std::size_t b = 0; b < norm.subspace.dim(); ++b) {
    const MatrixQ lr = norm.subspace.basis()[b].block(rank2r, rank2r, k, k);
    res.record(lr.is_zero(), {{"basis index", std::to_string(b + 1)}, {"lower-right block", lr.str()}});
  }
  return res;
}

// ---------------------------------------------------------------------------
// Extension falsifier

enum class Mechanism { sampled, outside_p, positive_form, u_line_drop, symbolic_certifier, none };

inline const char* to_string(Mechanism m) {
  switch (m) {
    case Mechanism::sampled: return "sampled";
    case Mechanism::outside_p: return "outside-P";
    case Mechanism::positive_form: return "positive-form";
    case Mechanism::u_line_drop: return "U-line-drop";
    case Mechanism::symbolic_certifier: return "symbolic-certifier";
    case Mechanism::none: return "none";
  }
  return "none";
}

/// A certified rank failure inside an antisymmetric affine subspace: either an
/// exact rational point with a different rank, or a line on which every
/// rank-minor shares an isolated real root.
struct Refutation {
  Mechanism mechanism = Mechanism::none;
  std::optional<std::vector<Rational>> point;
  std::optional<std::size_t> observed_rank;
  std::optional<LineWitness> line;
  bool found() const { return mechanism != Mechanism::none; }
};

namespace detail {

inline std::vector<std::size_t> iota1(std::size_t n) { return range1(1, n); }

// Pairs of C columns (1-based) used to cover the n - 2r columns: consecutive
// pairs, with the triangle (1,2), (1,3), (2,3) first when the count is odd.
inline std::vector<std::pair<std::size_t, std::size_t>> column_pairing(std::size_t cols) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t start = 1;
  if (cols % 2 && cols >= 3) {
    out = {{1, 2}, {1, 3}, {2, 3}};
    start = 4;
  }
  for (std::size_t j = start; j + 1 <= cols; j += 2) out.emplace_back(j, j + 1);
  return out;
}

// Rational s with p(s) != 0 for a nonzero polynomial p.
inline Rational nonroot(const UniPoly& p) {
  for (long k = 1;; ++k)
    if (!p(Rational(k)).is_zero()) return Rational(k);
}

inline std::vector<Rational> scaled(const std::vector<Rational>& v, const Rational& s) {
  auto out = v;
  for (auto& x : out) x *= s;
  return out;
}

inline MatrixQ combination(const std::vector<MatrixQ>& basis, const std::vector<Rational>& coeffs) {
  MatrixQ m = zeros(basis.front().rows(), basis.front().cols());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    MatrixQ t = basis[i];
    m += t.scale(coeffs[i]);
  }
  return m;
}

// Number of distinct real roots of p in the isolating interval (closed when exact).
inline std::size_t roots_in(const UniPoly& p, const RootInterval& iv) {
  if (p.is_zero()) return 1;
  if (iv.exact()) return p(iv.lo).is_zero() ? 1 : 0;
  const UniPoly q = p.square_free();
  if (q(iv.lo).is_zero() || q(iv.hi).is_zero()) return 0;
  const auto chain = sturm_chain(q);
  return static_cast<std::size_t>(sign_variations(chain, iv.lo) - sign_variations(chain, iv.hi));
}

}  // namespace detail

/// Independent check of a line witness on the original subspace: the gcd of
/// all target-minors restricted to the line has a root inside the interval.
inline bool verify_line_witness(const AffineMatrixSubspace& s, const LineWitness& w, std::size_t target) {
  const MatrixQ m0 = s.sample(w.point);
  const MatrixQ d = detail::combination(s.basis(), w.direction);
  const auto pen = pencil(m0, d);
  MinorTable<UniPoly> table(pen, UniPoly(), UniPoly(Rational(1)));
  UniPoly g;
  for (auto r : subsets(s.rows(), target))
    for (auto c : subsets(s.cols(), target)) {
      g = gcd(g, table.minor(r, c));
      if (g.degree() == 0) return false;
    }
  return detail::roots_in(g, w.root) >= 1;
}

/// Follows the upper-bound argument on S = base + V with base of rank 2r:
/// normalize the base to J̃, then look for (a) an element of V outside P,
/// (b) an element whose C part meets some Z_{j1,j2}, (c) a nonzero element of
/// V ∩ U.  Each finding yields an exact certificate in the coordinates of S.
inline Refutation refute_by_structure(const AffineMatrixSubspace& s, std::size_t r) {
  Refutation out;
  const std::size_t n = s.rows(), two_r = 2 * r, d = s.dim();
  if (d == 0) return out;
  auto norm = normalize_base(s, two_r);
  const auto& basis = norm.subspace.basis();
  const MatrixQ jt = norm.subspace.base();

  auto exact_point = [&](Mechanism mech, std::vector<Rational> coords) {
    const std::size_t obs = rank(s.sample(coords));
    if (obs == two_r) throw std::logic_error("refute_by_structure: certificate point has the target rank");
    out.mechanism = mech;
    out.point = std::move(coords);
    out.observed_rank = obs;
    return out;
  };

  // (a) V ⊄ P: a nonzero entry v_ij in the lower-right block makes the
  // bordered minor linear in s with coefficient ±v_ij.
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = two_r; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (basis[k](i, j).is_zero()) continue;
        auto rows = detail::iota1(two_r), cols = detail::iota1(two_r);
        rows.push_back(i + 1);
        cols.push_back(j + 1);
        const UniPoly minor = poly_det(submatrix(pencil(jt, basis[k]), rows, cols));
        std::vector<Rational> e(d, Rational(0));
        e[k] = detail::nonroot(minor);
        return exact_point(Mechanism::outside_p, std::move(e));
      }

  // (b) some π_{j1,j2}(π(V)) meets Z_{j1,j2} away from 0: the form is positive
  // there, so the bordered minor has a nonzero s^2 coefficient.
  if (n > two_r) {
    for (auto [j1, j2] : detail::column_pairing(n - two_r)) {
      auto proj = [&](const MatrixQ& m) {
        std::vector<Rational> v;
        for (std::size_t i = 0; i < two_r; ++i) v.push_back(m(i, two_r + j1 - 1));
        for (std::size_t i = 0; i < two_r; ++i) v.push_back(m(i, two_r + j2 - 1));
        return v;
      };
      const auto zs = build_Z(n, r, j1, j2);
      MatrixQ sys = zeros(2 * two_r, d + zs.size());
      for (std::size_t k = 0; k < d; ++k) {
        auto v = proj(basis[k]);
        for (std::size_t t = 0; t < v.size(); ++t) sys(t, k) = v[t];
      }
      for (std::size_t l = 0; l < zs.size(); ++l) {
        auto v = proj(zs[l]);
        for (std::size_t t = 0; t < v.size(); ++t) sys(t, d + l) = -v[t];
      }
      for (const auto& null : nullspace(sys)) {
        bool beta_nonzero = false;
        for (std::size_t l = 0; l < zs.size(); ++l) beta_nonzero = beta_nonzero || !null[d + l].is_zero();
        if (!beta_nonzero) continue;
        std::vector<Rational> alpha(null.begin(), null.begin() + static_cast<std::ptrdiff_t>(d));
        const MatrixQ x = detail::combination(basis, alpha);
        auto rows = detail::iota1(two_r), cols = detail::iota1(two_r);
        rows.push_back(two_r + j2);
        cols.push_back(two_r + j1);
        const UniPoly minor = poly_det(submatrix(pencil(jt, x), rows, cols));
        if (minor.coeff(2).is_zero()) throw std::logic_error("refute_by_structure: positive form gave a zero s^2 term");
        return exact_point(Mechanism::positive_form, detail::scaled(alpha, detail::nonroot(minor)));
      }
    }
  }

  // (c) V ∩ U ≠ 0: det(Jbar + s u) vanishes at s = -1/λ for an eigenvalue λ.
  {
    const auto u = build_U(r, n);
    const std::size_t len = n * n;
    MatrixQ sys = zeros(len, d + u.dim());
    for (std::size_t k = 0; k < d; ++k) {
      auto v = vectorize(basis[k]);
      for (std::size_t t = 0; t < len; ++t) sys(t, k) = v[t];
    }
    for (std::size_t l = 0; l < u.dim(); ++l) {
      auto v = vectorize(u.basis()[l]);
      for (std::size_t t = 0; t < len; ++t) sys(t, d + l) = -v[t];
    }
    const auto null = nullspace(sys);
    if (!null.empty()) {
      std::vector<Rational> alpha(null.front().begin(), null.front().begin() + static_cast<std::ptrdiff_t>(d));
      const MatrixQ top = detail::combination(basis, alpha).block(0, 0, two_r, two_r);
      auto drop = line_rank_drop(build_Jbar(two_r), top);
      if (!drop.drops) throw std::logic_error("refute_by_structure: nonzero element of U without a real rank drop");
      if (auto x = rational_root(drop.polynomial, *drop.root))
        return exact_point(Mechanism::u_line_drop, detail::scaled(alpha, *x));
      out.mechanism = Mechanism::u_line_drop;
      out.line = LineWitness{std::vector<Rational>(d, Rational(0)), alpha, drop.polynomial, *drop.root};
      return out;
    }
  }
  return out;
}

struct FalsifierSurvivor {
  std::size_t trial;
  MatrixQ direction;
};

struct FalsifierReport {
  std::size_t n = 0;
  std::size_t r = 0;
  Regime regime = Regime::wide;
  std::size_t tried = 0;
  std::size_t refuted_by_sampling = 0;
  std::size_t refuted_symbolically = 0;
  std::size_t survivors = 0;
  std::size_t rejected_dependent = 0;  // directions already in the witness linear part, redrawn
  std::size_t line_witnesses_verified = 0;
  std::map<std::string, std::size_t> mechanisms;
  std::vector<FalsifierSurvivor> survivor_details;
  bool consistent() const { return refuted_by_sampling + refuted_symbolically + survivors == tried; }
};

struct FalsifierOptions {
  std::size_t sample_budget = 50;
  RationalPolicy policy{};
  bool verify_lines = true;  // re-derive line witnesses from the original subspace
};

namespace detail {

// Direction families, by trial index: a generic antisymmetric matrix, one
// inside P (zero lower-right block), one supported on the leading 2r block,
// and one inside U.
inline MatrixQ draw_direction(Rng& rng, const WitnessParams& p, std::size_t family, const RationalPolicy& pol) {
  const std::size_t n = p.n, two_r = 2 * p.r;
  switch (family % 4) {
    case 0: return random_skew(rng, n, pol);
    case 1: {
      MatrixQ m = random_skew(rng, n, pol);
      for (std::size_t i = two_r; i < n; ++i)
        for (std::size_t j = two_r; j < n; ++j) m(i, j) = Rational(0);
      return m;
    }
    case 2: return embed_top_left(random_skew(rng, two_r, pol), n);
    default: {
      const auto u = build_U(p.r, n);
      return combination(u.basis(), rng.rationals(u.dim(), pol));
    }
  }
}

}  // namespace detail

/// Tries `trials` random one-dimensional extensions S + span{D} of the witness
/// subspace and refutes each one, first by exact rank sampling, then by the
/// structural certificate, then (under the size cap) by full symbolic
/// certification.  Every extension must be refuted.
inline FalsifierReport falsify_extensions(const WitnessParams& p, std::size_t trials, std::uint64_t seed,
                                          const FalsifierOptions& opt = {}) {
  const auto witness = witness_subspace(p);
  const std::size_t target = 2 * p.r;
  FalsifierReport rep;
  rep.n = p.n;
  rep.r = p.r;
  rep.regime = p.regime();
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, t);
    std::optional<AffineMatrixSubspace> ext;
    for (;;) {
      MatrixQ dmat = detail::draw_direction(rng, p, t, opt.policy);
      try {
        ext.emplace(witness.extended(dmat));
        break;
      } catch (const std::invalid_argument&) {
        ++rep.rejected_dependent;
      }
    }
    ++rep.tried;

    bool refuted = false;
    for (std::size_t k = 0; k < opt.sample_budget && !refuted; ++k) {
      auto pt = rng.rationals(ext->dim(), opt.policy);
      if (rank(ext->sample(pt)) != target) refuted = true;
    }
    if (refuted) {
      ++rep.refuted_by_sampling;
      ++rep.mechanisms[to_string(Mechanism::sampled)];
      continue;
    }

    Refutation ref = refute_by_structure(*ext, p.r);
    if (ref.found() && ref.line && opt.verify_lines) {
      if (!verify_line_witness(*ext, *ref.line, target)) throw std::logic_error("falsify_extensions: line witness failed verification");
      ++rep.line_witnesses_verified;
    }
    if (!ref.found() && symbolic_within_cap(*ext)) {
      auto cert = certify_constant_rank(*ext, target, CertMode::symbolic);
      if (cert.verdict == Verdict::not_constant_rank) ref.mechanism = Mechanism::symbolic_certifier;
    }
    if (ref.found()) {
      ++rep.refuted_symbolically;
      ++rep.mechanisms[to_string(ref.mechanism)];
    } else {
      ++rep.survivors;
      rep.survivor_details.push_back({t, ext->basis().back()});
    }
  }
  return rep;
}

}  // namespace crk
