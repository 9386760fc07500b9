#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace stopwright {

// Exact rational number, always kept in lowest terms with a positive
// denominator. Thin value wrapper over GMP's mpq_class that avoids leaking
// expression templates into the rest of the library.
class Rational {
 public:
  Rational() = default;
  Rational(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(int n) : q_(static_cast<long>(n)) {}  // NOLINT
  Rational(long num, long den);

  // Accepts "a", "-a", "a/b" with optional surrounding whitespace.
  // Throws std::invalid_argument on malformed text or a zero denominator.
  static Rational parse(std::string_view text);
  // Exact value of a finite double (every finite double is a dyadic
  // rational).
  static Rational from_double(double x);

  // "a/b" in lowest terms, or "a" when the denominator is one.
  std::string str() const;
  double to_double() const { return q_.get_d(); }

  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }
  bool is_integer() const { return q_.get_den() == 1; }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) {
    Rational r;
    r.q_ = -a.q_;
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.q_, b.q_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

 private:
  mpq_class q_;
};

inline Rational min(const Rational& a, const Rational& b) {
  return b < a ? b : a;
}
inline Rational max(const Rational& a, const Rational& b) {
  return a < b ? b : a;
}
inline Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

}  // namespace stopwright
