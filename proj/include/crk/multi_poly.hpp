#pragma once

// Sparse multivariate polynomials over Q in the coordinates t_1..t_d of an
// affine matrix subspace.

#include "crk/rational.hpp"
#include "crk/uni_poly.hpp"

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace crk {

class MultiPoly {
public:
  using Exponent = std::vector<std::uint16_t>;

  MultiPoly() = default;
  explicit MultiPoly(std::size_t arity) : arity_(arity) {}
  MultiPoly(std::size_t arity, const Rational& c) : arity_(arity) {
    if (!c.is_zero()) terms_.emplace(Exponent(arity, 0), c);
  }

  /// The coordinate t_{index+1}.
  static MultiPoly variable(std::size_t arity, std::size_t index, const Rational& c = Rational(1)) {
    if (index >= arity) throw std::out_of_range("MultiPoly: variable index out of range");
    MultiPoly p(arity);
    if (!c.is_zero()) {
      Exponent e(arity, 0);
      e[index] = 1;
      p.terms_.emplace(std::move(e), c);
    }
    return p;
  }

  std::size_t arity() const { return arity_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Exponent, Rational>& terms() const { return terms_; }

  bool is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    for (auto e : terms_.begin()->first)
      if (e) return false;
    return true;
  }
  Rational constant_term() const {
    auto it = terms_.find(Exponent(arity_, 0));
    return it == terms_.end() ? Rational(0) : it->second;
  }
  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (auto x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  Rational operator()(const std::vector<Rational>& point) const {
    if (point.size() != arity_) throw std::invalid_argument("MultiPoly: evaluation point has wrong arity");
    // cache powers per variable
    std::vector<std::vector<Rational>> pw(arity_);
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
      Rational m = c;
      for (std::size_t i = 0; i < arity_; ++i) {
        if (!e[i]) continue;
        auto& cache = pw[i];
        if (cache.empty()) cache.push_back(Rational(1));
        while (cache.size() <= e[i]) cache.push_back(cache.back() * point[i]);
        m *= cache[e[i]];
      }
      acc += m;
    }
    return acc;
  }

  /// Restriction to the line t = point + s * direction.
  UniPoly restrict_to_line(const std::vector<Rational>& point, const std::vector<Rational>& direction) const {
    if (point.size() != arity_ || direction.size() != arity_)
      throw std::invalid_argument("MultiPoly: line has wrong arity");
    std::vector<UniPoly> lin;
    lin.reserve(arity_);
    for (std::size_t i = 0; i < arity_; ++i) lin.emplace_back(std::vector<Rational>{point[i], direction[i]});
    std::vector<std::vector<UniPoly>> pw(arity_);
    UniPoly acc;
    for (const auto& [e, c] : terms_) {
      UniPoly m(c);
      for (std::size_t i = 0; i < arity_; ++i) {
        if (!e[i]) continue;
        auto& cache = pw[i];
        if (cache.empty()) cache.emplace_back(Rational(1));
        while (cache.size() <= e[i]) cache.push_back(cache.back() * lin[i]);
        m *= cache[e[i]];
      }
      acc += m;
    }
    return acc;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  MultiPoly& operator*=(const Rational& k) {
    if (k.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= k;
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator-(MultiPoly a) {
    for (auto& [e, c] : a.terms_) c = -c;
    return a;
  }
  friend MultiPoly operator*(MultiPoly a, const Rational& k) { return a *= k; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check(b);
    MultiPoly out(a.arity_);
    if (a.is_zero() || b.is_zero()) return out;
    Exponent e(a.arity_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
        out.add_term(e, ca * cb);
      }
    return out;
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      if (!first) os << (c.sign() < 0 ? " - " : " + ");
      else if (c.sign() < 0) os << "-";
      first = false;
      bool has_var = false;
      for (auto x : e) has_var = has_var || x;
      const Rational a = c.abs();
      if (!has_var || a != Rational(1)) os << a.str();
      bool need_star = !has_var || a != Rational(1);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (!e[i]) continue;
        if (need_star) os << "*";
        os << "t" << (i + 1);
        if (e[i] > 1) os << "^" << e[i];
        need_star = true;
      }
    }
    return os.str();
  }

private:
  void check(const MultiPoly& o) const {
    if (o.arity_ != arity_) throw std::invalid_argument("MultiPoly: arity mismatch");
  }
  void add_term(const Exponent& e, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  std::size_t arity_ = 0;
  std::map<Exponent, Rational> terms_;
};

}  // namespace crk
