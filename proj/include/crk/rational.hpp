#pragma once

// Exact rational scalar backed by GMP.  Every value is kept canonical:
// positive denominator, gcd(|num|, den) == 1, zero is 0/1.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace crk {

class Rational {
public:
  Rational() = default;
  Rational(int v) : q_(v) {}
  Rational(long v) : q_(v) {}
  Rational(long long v) : q_(static_cast<long>(v)) {}
  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  explicit Rational(const mpz_class& z) : q_(z) {}

  /// Parses "p", "-p", "p/q" (q may be negative; the result is canonicalized).
  static Rational parse(std::string_view text) {
    std::string s(text);
    auto trim = [](std::string& x) {
      auto b = x.find_first_not_of(" \t");
      auto e = x.find_last_not_of(" \t");
      x = b == std::string::npos ? std::string() : x.substr(b, e - b + 1);
    };
    trim(s);
    if (s.empty()) throw std::invalid_argument("Rational: empty string");
    if (s.front() == '+') s.erase(0, 1);
    auto slash = s.find('/');
    mpz_class num, den(1);
    auto read = [](const std::string& part, mpz_class& out) {
      if (part.empty() || part == "-" || out.set_str(part, 10) != 0)
        throw std::invalid_argument("Rational: cannot parse '" + part + "'");
    };
    read(s.substr(0, slash), num);
    if (slash != std::string::npos) read(s.substr(slash + 1), den);
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    return Rational(mpq_class(num, den));
  }

  const mpq_class& raw() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  Rational abs() const { return Rational(mpq_class(::abs(q_))); }
  Rational inverse() const {
    if (is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(mpq_class(1 / q_));
  }

  /// "p/q", or "p" when q == 1; sign on the numerator.
  std::string str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
  mpq_class q_{0};
};

inline Rational pow(Rational base, unsigned exp) {
  Rational out(1);
  while (exp) {
    if (exp & 1u) out *= base;
    base *= base;
    exp >>= 1u;
  }
  return out;
}

}  // namespace crk

template <>
struct std::hash<crk::Rational> {
  std::size_t operator()(const crk::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.str());
  }
};
