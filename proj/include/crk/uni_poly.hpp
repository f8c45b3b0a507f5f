#pragma once

// Dense univariate polynomials over Q in the line parameter s, with Sturm
// sequences and real-root isolation.

#include "crk/rational.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace crk {

class UniPoly {
public:
  UniPoly() = default;
  UniPoly(int c) : UniPoly(Rational(c)) {}
  UniPoly(const Rational& c) {
    if (!c.is_zero()) coeffs_.push_back(c);
  }
  /// coeffs[k] is the coefficient of s^k.
  explicit UniPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static UniPoly monomial(const Rational& c, std::size_t degree) {
    std::vector<Rational> v(degree + 1);
    v[degree] = c;
    return UniPoly(std::move(v));
  }
  static UniPoly s() { return monomial(Rational(1), 1); }

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }
  Rational leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }

  Rational operator()(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  UniPoly derivative() const {
    std::vector<Rational> d;
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d.push_back(coeffs_[k] * Rational(static_cast<long>(k)));
    return UniPoly(std::move(d));
  }

  UniPoly monic() const {
    if (is_zero()) return *this;
    return *this * leading().inverse();
  }

  /// p(-s)
  UniPoly reflect() const {
    auto c = coeffs_;
    for (std::size_t k = 1; k < c.size(); k += 2) c[k] = -c[k];
    return UniPoly(std::move(c));
  }

  UniPoly& operator+=(const UniPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
  }
  UniPoly& operator*=(const Rational& c) {
    if (c.is_zero()) {
      coeffs_.clear();
      return *this;
    }
    for (auto& x : coeffs_) x *= c;
    return *this;
  }

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator-(UniPoly a) {
    for (auto& x : a.coeffs_) x = -x;
    return a;
  }
  friend UniPoly operator*(UniPoly a, const Rational& c) { return a *= c; }
  friend UniPoly operator*(const Rational& c, UniPoly a) { return a *= c; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return UniPoly(std::move(out));
  }
  UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

  friend bool operator==(const UniPoly&, const UniPoly&) = default;

  /// Euclidean division over Q: a = q*b + r with deg r < deg b.
  friend std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw std::domain_error("UniPoly: division by zero polynomial");
    UniPoly rem = a;
    if (a.degree() < b.degree()) return {UniPoly(), rem};
    std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1));
    const Rational lead_inv = b.leading().inverse();
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
      const auto shift = static_cast<std::size_t>(rem.degree() - b.degree());
      Rational f = rem.leading() * lead_inv;
      quot[shift] = f;
      for (std::size_t k = 0; k < b.coeffs_.size(); ++k) rem.coeffs_[k + shift] -= f * b.coeffs_[k];
      rem.coeffs_.pop_back();  // leading term cancels exactly
      rem.trim();
    }
    return {UniPoly(std::move(quot)), rem};
  }

  /// Exact quotient; throws when b does not divide a.
  friend UniPoly exact_div(const UniPoly& a, const UniPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw std::logic_error("UniPoly: inexact division");
    return q;
  }

  /// Monic gcd (zero only when both inputs are zero).
  friend UniPoly gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
      auto r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// p / gcd(p, p'), made monic.
  UniPoly square_free() const {
    if (is_zero()) throw std::domain_error("UniPoly: square-free part of zero polynomial");
    if (degree() == 0) return UniPoly(Rational(1));
    return exact_div(*this, gcd(*this, derivative())).monic();
  }

  std::string str(const char* var = "s") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
      const Rational& c = coeffs_[k];
      if (c.is_zero()) continue;
      Rational a = c.abs();
      if (first) {
        if (c.sign() < 0) os << "-";
      } else {
        os << (c.sign() < 0 ? " - " : " + ");
      }
      first = false;
      if (k == 0 || a != Rational(1)) os << a.str();
      if (k > 0) {
        if (a != Rational(1)) os << "*";
        os << var;
        if (k > 1) os << "^" << k;
      }
    }
    return os.str();
  }

private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }
  std::vector<Rational> coeffs_;
};

/// Sturm chain p0 = p, p1 = p', p_{k+1} = -rem(p_{k-1}, p_k).
inline std::vector<UniPoly> sturm_chain(const UniPoly& p) {
  std::vector<UniPoly> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    auto r = divmod(chain[chain.size() - 2], chain.back()).second;
    chain.push_back(-r);
  }
  chain.pop_back();
  return chain;
}

inline int sign_variations(const std::vector<UniPoly>& chain, const Rational& x) {
  int count = 0, prev = 0;
  for (const auto& q : chain) {
    int sg = q(x).sign();
    if (sg == 0) continue;
    if (prev != 0 && sg != prev) ++count;
    prev = sg;
  }
  return count;
}

/// An isolating interval for one real root: either the exact rational root
/// (lo == hi) or an open interval (lo, hi) containing exactly one root, with
/// the polynomial nonzero at both endpoints.
struct RootInterval {
  Rational lo;
  Rational hi;
  bool exact() const { return lo == hi; }
  bool contains(const Rational& x) const { return exact() ? x == lo : (lo < x && x < hi); }
};

struct RealRoots {
  std::size_t count = 0;
  std::vector<RootInterval> intervals;  // sorted left to right
};

namespace detail {

// Cauchy bound: every root satisfies |x| < 1 + max |a_k / a_n|.
inline Rational root_bound(const UniPoly& p) {
  Rational m(0);
  const Rational lead = p.leading().abs();
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, p.coeff(static_cast<std::size_t>(k)).abs() / lead);
  return m + Rational(1);
}

// p square-free, p(lo) != 0, p(hi) != 0.
inline void isolate(const UniPoly& p, const std::vector<UniPoly>& chain, const Rational& lo,
                    const Rational& hi, std::vector<RootInterval>& out) {
  const int n = sign_variations(chain, lo) - sign_variations(chain, hi);
  if (n == 0) return;
  if (n == 1) {
    out.push_back({lo, hi});
    return;
  }
  const Rational mid = (lo + hi) / Rational(2);
  if (p(mid).is_zero()) {
    UniPoly deflated = exact_div(p, UniPoly({-mid, Rational(1)}));
    auto dchain = sturm_chain(deflated);
    isolate(deflated, dchain, lo, mid, out);
    out.push_back({mid, mid});
    isolate(deflated, dchain, mid, hi, out);
    return;
  }
  isolate(p, chain, lo, mid, out);
  isolate(p, chain, mid, hi, out);
}

}  // namespace detail

/// Distinct real roots of p with isolating intervals; works on the
/// square-free part so repeated roots are counted once.
inline RealRoots sturm_real_roots(const UniPoly& p) {
  if (p.is_zero()) throw std::domain_error("sturm_real_roots: zero polynomial vanishes on all of R");
  RealRoots out;
  if (p.degree() == 0) return out;
  const UniPoly q = p.square_free();
  const auto chain = sturm_chain(q);
  const Rational b = detail::root_bound(q);
  detail::isolate(q, chain, -b, b, out.intervals);
  out.count = out.intervals.size();
  return out;
}

/// Shrinks a non-exact isolating interval of a root of p until hi - lo <= width.
inline RootInterval refine(const UniPoly& p, RootInterval iv, const Rational& width) {
  const UniPoly q = p.square_free();
  while (!iv.exact() && iv.hi - iv.lo > width) {
    const Rational mid = (iv.lo + iv.hi) / Rational(2);
    const int sm = q(mid).sign();
    if (sm == 0) return {mid, mid};
    if (sm == q(iv.lo).sign())
      iv.lo = mid;
    else
      iv.hi = mid;
  }
  return iv;
}

/// The root in `iv` if it is rational.  A rational root k/q of the primitive
/// integer multiple of p has q dividing the leading coefficient, so after
/// refining below 1/(2|a_n|) there is at most one candidate per divisor.
/// Gives up (nullopt) when |a_n| does not fit in 32 bits.
inline std::optional<Rational> rational_root(const UniPoly& p, const RootInterval& iv) {
  const UniPoly q = p.square_free();
  if (iv.exact()) return q(iv.lo).is_zero() ? std::optional<Rational>(iv.lo) : std::nullopt;
  mpz_class den_lcm = 1;
  for (const auto& c : q.coeffs()) den_lcm = lcm(den_lcm, c.denominator());
  mpz_class lead = abs(q.leading().numerator() * (den_lcm / q.leading().denominator()));
  if (!lead.fits_uint_p() || lead > 0xffffffffUL) return std::nullopt;
  const unsigned long an = lead.get_ui();
  const RootInterval fine = refine(q, iv, Rational(mpq_class(mpz_class(1), mpz_class(2 * an))));
  if (fine.exact()) return fine.lo;
  auto try_den = [&](unsigned long d) -> std::optional<Rational> {
    mpz_class k = fine.lo.numerator() * d;
    mpz_cdiv_q(k.get_mpz_t(), k.get_mpz_t(), fine.lo.denominator().get_mpz_t());
    const Rational cand(mpq_class(k, mpz_class(d)));
    if (cand <= fine.hi && q(cand).is_zero()) return cand;
    return std::nullopt;
  };
  for (unsigned long d = 1; d * d <= an; ++d) {
    if (an % d) continue;
    if (auto x = try_den(d)) return x;
    if (auto x = try_den(an / d)) return x;
  }
  return std::nullopt;
}

}  // namespace crk
