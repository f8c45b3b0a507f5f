#pragma once

// Affine subspaces S = base + span(basis) of a matrix space, and exact
// certification that every element of S has the same rank.

#include "crk/linalg.hpp"
#include "crk/multi_poly.hpp"
#include "crk/poly_matrix.hpp"
#include "crk/random.hpp"
#include "crk/uni_poly.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace crk {

enum class Ambient { general, symmetric, antisymmetric };

inline const char* to_string(Ambient a) {
  switch (a) {
    case Ambient::general: return "general";
    case Ambient::symmetric: return "symmetric";
    case Ambient::antisymmetric: return "antisymmetric";
  }
  return "general";
}

inline Ambient ambient_from_string(const std::string& s) {
  if (s == "general") return Ambient::general;
  if (s == "symmetric") return Ambient::symmetric;
  if (s == "antisymmetric") return Ambient::antisymmetric;
  throw std::invalid_argument("unknown ambient '" + s + "'");
}

class AffineMatrixSubspace {
public:
  AffineMatrixSubspace(Ambient ambient, MatrixQ base, std::vector<MatrixQ> basis = {})
      : ambient_(ambient), base_(std::move(base)), basis_(std::move(basis)) {
    check_member(base_, "base");
    for (const auto& b : basis_) {
      if (b.rows() != base_.rows() || b.cols() != base_.cols())
        throw std::invalid_argument("AffineMatrixSubspace: basis element has wrong shape");
      check_member(b, "basis element");
    }
    std::vector<std::vector<Rational>> vs;
    for (const auto& b : basis_) vs.push_back(vectorize(b));
    if (span_dimension(vs, base_.rows() * base_.cols()) != basis_.size())
      throw std::invalid_argument("AffineMatrixSubspace: basis is linearly dependent");
  }

  Ambient ambient() const { return ambient_; }
  const MatrixQ& base() const { return base_; }
  const std::vector<MatrixQ>& basis() const { return basis_; }
  std::size_t rows() const { return base_.rows(); }
  std::size_t cols() const { return base_.cols(); }
  std::size_t dim() const { return basis_.size(); }

  /// base + sum coords[i] * basis[i]
  MatrixQ sample(const std::vector<Rational>& coords) const {
    if (coords.size() != basis_.size())
      throw std::invalid_argument("sample: expected " + std::to_string(basis_.size()) + " coordinates, got " +
                                  std::to_string(coords.size()));
    MatrixQ m = base_;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (coords[i].is_zero()) continue;
      MatrixQ t = basis_[i];
      m += t.scale(coords[i]);
    }
    return m;
  }

  /// base + sum t_i basis[i] as a matrix over Q[t_1..t_d].
  MultiPolyMatrix parameterized() const {
    const std::size_t d = dim();
    MultiPolyMatrix p(rows(), cols(), MultiPoly(d));
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols(); ++j) {
        MultiPoly e(d, base_(i, j));
        for (std::size_t k = 0; k < d; ++k)
          if (!basis_[k](i, j).is_zero()) e += MultiPoly::variable(d, k, basis_[k](i, j));
        p(i, j) = std::move(e);
      }
    return p;
  }

  /// Q^T S Q.
  AffineMatrixSubspace congruence_transform(const MatrixQ& q) const {
    if (!q.is_square() || q.rows() != rows() || rows() != cols())
      throw std::invalid_argument("congruence_transform: size mismatch");
    if (rank(q) != q.rows()) throw std::domain_error("congruence_transform: Q is singular");
    const MatrixQ qt = q.transpose();
    std::vector<MatrixQ> nb;
    nb.reserve(basis_.size());
    for (const auto& b : basis_) nb.push_back(qt * b * q);
    return AffineMatrixSubspace(ambient_, qt * base_ * q, std::move(nb));
  }

  /// Same base, basis extended by `extra` (must stay independent).
  AffineMatrixSubspace extended(const MatrixQ& extra) const {
    auto nb = basis_;
    nb.push_back(extra);
    return AffineMatrixSubspace(ambient_, base_, std::move(nb));
  }

private:
  void check_member(const MatrixQ& m, const char* what) const {
    if (ambient_ == Ambient::antisymmetric && !m.is_skew())
      throw std::invalid_argument(std::string("AffineMatrixSubspace: ") + what + " is not antisymmetric");
    if (ambient_ == Ambient::symmetric && !m.is_symmetric())
      throw std::invalid_argument(std::string("AffineMatrixSubspace: ") + what + " is not symmetric");
  }

  Ambient ambient_;
  MatrixQ base_;
  std::vector<MatrixQ> basis_;
};

/// Rank of the span of the given vectors restricted to the 1-based coordinates
/// in `index_set`.
inline std::size_t coordinate_projection(const std::vector<std::vector<Rational>>& vectors,
                                         const std::vector<std::size_t>& index_set) {
  std::vector<std::vector<Rational>> projected;
  projected.reserve(vectors.size());
  for (const auto& v : vectors) {
    std::vector<Rational> p;
    p.reserve(index_set.size());
    for (auto i : index_set) {
      if (i < 1 || i > v.size()) throw std::out_of_range("coordinate_projection: index out of range");
      p.push_back(v[i - 1]);
    }
    projected.push_back(std::move(p));
  }
  return span_dimension(projected, index_set.size());
}

struct LineRankDrop {
  bool drops = false;
  UniPoly polynomial;                 // det(M0 + s D)
  std::optional<RootInterval> root;   // isolating interval of the smallest real root
};

/// Decides without floating point whether det(M0 + s D) has a real root,
/// i.e. whether the rank of the invertible M0 drops somewhere on the line.
inline LineRankDrop line_rank_drop(const MatrixQ& m0, const MatrixQ& d) {
  if (!m0.is_square()) throw std::invalid_argument("line_rank_drop: M0 is not square");
  if (det(m0).is_zero()) throw std::domain_error("line_rank_drop: M0 is singular");
  LineRankDrop out;
  out.polynomial = poly_det(pencil(m0, d));
  auto roots = sturm_real_roots(out.polynomial);  // nonzero: p(0) = det M0
  out.drops = roots.count > 0;
  if (out.drops) out.root = roots.intervals.front();
  return out;
}

enum class CertMode { symbolic, sampled };
enum class Verdict { constant_rank, not_constant_rank, inconclusive };

inline const char* to_string(CertMode m) { return m == CertMode::symbolic ? "symbolic" : "sampled"; }
inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::constant_rank: return "constant-rank";
    case Verdict::not_constant_rank: return "not-constant-rank";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

/// A real point t = point + s * direction, s inside `root`, at which the rank
/// differs from the target; used when the offending s is irrational.
struct LineWitness {
  std::vector<Rational> point;
  std::vector<Rational> direction;
  UniPoly polynomial;  // s-polynomial vanishing exactly where the rank drops on the line
  RootInterval root;
};

struct CertificationReport {
  CertMode mode = CertMode::symbolic;
  Verdict verdict = Verdict::inconclusive;
  std::size_t rank = 0;  // target rank

  // symbolic evidence
  std::size_t minors_checked = 0;  // (rank+1)-minors shown identically zero
  std::optional<std::vector<std::size_t>> witness_rows;  // 1-based, a rank-minor that is a nonzero constant
  std::optional<std::vector<std::size_t>> witness_cols;
  std::optional<Rational> witness_value;
  std::size_t combined_minors = 0;  // rank-minors in a combination equal to a nonzero constant

  // refutation evidence
  std::optional<std::vector<Rational>> counterexample;
  std::optional<std::size_t> counterexample_rank;
  std::optional<LineWitness> line_witness;

  std::size_t samples = 0;
  std::string note;
};

struct CertifyOptions {
  std::size_t samples = 200;
  std::uint64_t seed = 0;
  RationalPolicy policy{};
  std::size_t max_size = 8;   // symbolic cap on rows/cols
  std::size_t max_dim = 12;   // symbolic cap on dim(S)
  std::size_t prescreen = 8;  // random rank checks before minor expansion
  std::size_t line_attempts = 16;
};

inline bool symbolic_within_cap(const AffineMatrixSubspace& s, const CertifyOptions& opt = {}) {
  return s.rows() <= opt.max_size && s.cols() <= opt.max_size && s.dim() <= opt.max_dim;
}

namespace detail {

inline CertificationReport refuted(CertificationReport rep, std::vector<Rational> point, std::size_t observed,
                                   std::string note) {
  rep.verdict = Verdict::not_constant_rank;
  rep.counterexample = std::move(point);
  rep.counterexample_rank = observed;
  rep.note = std::move(note);
  return rep;
}

// Finds a point where the nonzero polynomial p does not vanish.
inline std::vector<Rational> nonvanishing_point(const MultiPoly& p, Rng& rng, const RationalPolicy& pol) {
  const std::size_t d = p.arity();
  std::vector<Rational> ones(d, Rational(1));
  if (!p(ones).is_zero()) return ones;
  for (;;) {
    auto pt = rng.rationals(d, pol);
    if (!p(pt).is_zero()) return pt;
  }
}

inline CertificationReport certify_sampled(const AffineMatrixSubspace& s, std::size_t target,
                                           const CertifyOptions& opt) {
  CertificationReport rep;
  rep.mode = CertMode::sampled;
  rep.rank = target;
  Rng rng(opt.seed);
  for (std::size_t k = 0; k < opt.samples; ++k) {
    auto pt = rng.rationals(s.dim(), opt.policy);
    const std::size_t r = rank(s.sample(pt));
    ++rep.samples;
    if (r != target) return refuted(std::move(rep), std::move(pt), r, "sampled point has a different rank");
  }
  rep.verdict = Verdict::inconclusive;
  rep.note = "all sampled points have the target rank; sampling cannot prove constancy";
  return rep;
}

/// Echelon reduction of the polynomials with leading term = lexicographically
/// largest exponent; the constant monomial is the smallest, so it lies in the
/// span iff some reduced element is a nonzero constant.  Returns how many
/// inputs were consumed when that happens.
inline std::optional<std::size_t> constant_in_span(const std::vector<const MultiPoly*>& polys) {
  std::map<MultiPoly::Exponent, MultiPoly> pivots;
  for (std::size_t k = 0; k < polys.size(); ++k) {
    MultiPoly p = *polys[k];
    while (!p.is_zero()) {
      const auto& [lead, coeff] = *p.terms().rbegin();
      auto it = pivots.find(lead);
      if (it == pivots.end()) break;
      p -= it->second * coeff;
    }
    if (p.is_zero()) continue;
    if (p.is_constant()) return k + 1;
    const Rational inv = p.terms().rbegin()->second.inverse();
    auto lead = p.terms().rbegin()->first;
    pivots.emplace(std::move(lead), p * inv);
  }
  return std::nullopt;
}

/// Solution set {origin + span} of the minors of total degree 1, in the
/// d coordinates.  With no linear minors this is the whole space.
inline std::pair<std::vector<Rational>, std::vector<std::vector<Rational>>> linear_zero_set(
    const std::vector<const MultiPoly*>& polys, std::size_t d) {
  std::vector<std::vector<Rational>> rows;
  for (const auto* p : polys) {
    if (p->total_degree() != 1) continue;
    std::vector<Rational> row(d + 1, Rational(0));
    for (const auto& [ex, c] : p->terms()) {
      std::size_t var = d;
      for (std::size_t i = 0; i < d; ++i)
        if (ex[i]) var = i;
      if (var == d)
        row[d] = -c;
      else
        row[var] = c;
    }
    rows.push_back(std::move(row));
  }
  std::vector<Rational> origin(d, Rational(0));
  std::vector<std::vector<Rational>> span;
  if (rows.empty()) {
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<Rational> ei(d, Rational(0));
      ei[i] = Rational(1);
      span.push_back(std::move(ei));
    }
    return {origin, span};
  }
  MatrixQ w = rows_matrix(rows, d + 1);
  const auto piv = rref(w);
  if (!piv.empty() && piv.back() == d) return {origin, {}};  // inconsistent; caught earlier as a constant
  for (std::size_t k = 0; k < piv.size(); ++k) origin[piv[k]] = w(k, d);
  return {origin, nullspace(w.block(0, 0, w.rows(), d))};
}

inline CertificationReport certify_symbolic(const AffineMatrixSubspace& s, std::size_t target,
                                            const CertifyOptions& opt) {
  if (!symbolic_within_cap(s, opt))
    throw std::invalid_argument("certify_constant_rank: symbolic mode is capped at " + std::to_string(opt.max_size) +
                                "x" + std::to_string(opt.max_size) + " matrices and dimension " +
                                std::to_string(opt.max_dim) + "; use sampled mode");
  CertificationReport rep;
  rep.mode = CertMode::symbolic;
  rep.rank = target;
  const std::size_t d = s.dim();
  Rng rng(opt.seed);

  // Cheap exact refutations first: base point, all-ones point, a few random points.
  {
    std::vector<std::vector<Rational>> pts{std::vector<Rational>(d, Rational(0)),
                                           std::vector<Rational>(d, Rational(1))};
    for (std::size_t k = 0; k < opt.prescreen; ++k) pts.push_back(rng.rationals(d, opt.policy));
    for (auto& pt : pts) {
      const std::size_t r = rank(s.sample(pt));
      if (r != target) return refuted(std::move(rep), std::move(pt), r, "exact rank differs at this point");
    }
  }

  const auto p = s.parameterized();
  MinorTable<MultiPoly> table(p, MultiPoly(d), MultiPoly(d, Rational(1)));
  const std::size_t m = s.rows(), n = s.cols();

  // Upper bound: every (target+1)-minor is the zero polynomial.
  if (target + 1 <= std::min(m, n)) {
    const auto rs = subsets(m, target + 1), cs = subsets(n, target + 1);
    for (auto r : rs)
      for (auto c : cs) {
        const MultiPoly& mp = table.minor(r, c);
        if (!mp.is_zero()) {
          auto pt = nonvanishing_point(mp, rng, opt.policy);
          const std::size_t obs = rank(s.sample(pt));
          return refuted(std::move(rep), std::move(pt), obs,
                         "a " + std::to_string(target + 1) + "-minor is not identically zero");
        }
        ++rep.minors_checked;
      }
  }

  // Lower bound: a target-minor that is a nonzero constant never vanishes.
  const auto rs = subsets(m, target), cs = subsets(n, target);
  std::vector<const MultiPoly*> live;
  for (auto r : rs)
    for (auto c : cs) {
      const MultiPoly& mp = table.minor(r, c);
      if (mp.is_zero()) continue;
      if (mp.is_constant()) {
        rep.verdict = Verdict::constant_rank;
        rep.witness_rows = mask_indices(r);
        rep.witness_cols = mask_indices(c);
        rep.witness_value = mp.constant_term();
        rep.note = "all (rank+1)-minors vanish identically; a rank-minor is a nonzero constant";
        return rep;
      }
      live.push_back(&mp);
    }
  if (live.empty())
    return refuted(std::move(rep), std::vector<Rational>(d, Rational(0)), rank(s.base()),
                   "every rank-minor vanishes identically");

  // A Q-linear combination of rank-minors that is a nonzero constant also
  // rules out a common zero.  This covers congruent copies of subspaces that
  // have a constant minor, since congruence mixes minors linearly.
  if (auto used = constant_in_span(live)) {
    rep.verdict = Verdict::constant_rank;
    rep.combined_minors = *used;
    rep.note = "all (rank+1)-minors vanish identically; a linear combination of rank-minors is a nonzero constant";
    return rep;
  }

  // Look for a common real zero of the rank-minors along lines, inside the
  // affine set cut out by the minors that are linear in t.
  const auto [origin, span] = linear_zero_set(live, d);
  if (span.empty()) {
    const std::size_t obs = rank(s.sample(origin));
    if (obs != target) return refuted(std::move(rep), origin, obs, "all rank-minors vanish at a rational point");
    rep.verdict = Verdict::constant_rank;
    rep.note = "all (rank+1)-minors vanish identically; the linear rank-minors meet only at one point, where the rank "
               "is the target";
    return rep;
  }
  auto lift = [&](const std::vector<Rational>& y) {
    std::vector<Rational> x = origin;
    for (std::size_t k = 0; k < span.size(); ++k)
      for (std::size_t i = 0; i < d; ++i) x[i] += y[k] * span[k][i];
    return x;
  };
  const std::size_t e = span.size();
  for (std::size_t a = 0; e > 0 && a < opt.line_attempts; ++a) {
    const std::vector<Rational> point = a == 0 ? origin : lift(rng.rationals(e, opt.policy));
    std::vector<Rational> dir;
    if (a < e) {
      dir = span[a];
    } else {
      dir = lift(rng.rationals(e, opt.policy));
      for (std::size_t i = 0; i < d; ++i) dir[i] -= origin[i];
    }
    UniPoly g;
    for (const auto* mp : live) {
      g = gcd(g, mp->restrict_to_line(point, dir));
      if (g.degree() == 0) break;
    }
    auto at = [&](const Rational& t) {
      std::vector<Rational> x(d);
      for (std::size_t i = 0; i < d; ++i) x[i] = point[i] + t * dir[i];
      return x;
    };
    if (g.is_zero()) return refuted(std::move(rep), point, rank(s.sample(point)), "rank-minors vanish along a line");
    if (g.degree() < 1) continue;
    auto roots = sturm_real_roots(g);
    if (roots.count == 0) continue;
    const RootInterval& iv = roots.intervals.front();
    if (auto exact = rational_root(g, iv)) {
      auto x = at(*exact);
      const std::size_t obs = rank(s.sample(x));
      return refuted(std::move(rep), std::move(x), obs, "all rank-minors vanish at a rational point");
    }
    rep.verdict = Verdict::not_constant_rank;
    rep.line_witness = LineWitness{point, dir, g, iv};
    rep.note = "all rank-minors share a real root on a line (irrational parameter, isolated exactly)";
    return rep;
  }

  rep.verdict = Verdict::inconclusive;
  rep.note = "rank is at most the target everywhere, but no rank-minor is a nonzero constant and no common real "
             "zero was found";
  return rep;
}

}  // namespace detail

/// Certifies rank(X) == target for every X in S.
inline CertificationReport certify_constant_rank(const AffineMatrixSubspace& s, std::size_t target, CertMode mode,
                                                 const CertifyOptions& opt = {}) {
  if (target > std::min(s.rows(), s.cols()))
    throw std::invalid_argument("certify_constant_rank: target rank exceeds matrix size");
  return mode == CertMode::symbolic ? detail::certify_symbolic(s, target, opt)
                                    : detail::certify_sampled(s, target, opt);
}

}  // namespace crk
