#include "stopwright/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace stopwright {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

bool is_integer_literal(std::string_view s, bool allow_sign) {
  if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+'))
    s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view{"1"}
                                      : text.substr(slash + 1);
  if (!is_integer_literal(num, true) || !is_integer_literal(den, false))
    throw std::invalid_argument("malformed rational '" + std::string(text) +
                                "'");
  if (num.front() == '+') num.remove_prefix(1);
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0)
    throw std::invalid_argument("zero denominator in '" + std::string(text) +
                                "'");
  Rational r;
  r.q_ = mpq_class(n, d);
  r.q_.canonicalize();
  return r;
}

Rational Rational::from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite double");
  Rational r;
  r.q_ = mpq_class(x);
  return r;
}

std::string Rational::str() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  q_ /= o.q_;
  return *this;
}

}  // namespace stopwright
