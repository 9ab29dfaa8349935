#include "mlrf/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace mlrf {

std::string to_string(const Rational &r) {
  if (denominator(r) == 1)
    return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos == text.size())
    throw std::invalid_argument("malformed rational '" + std::string(whole) +
                                "'");
  for (std::size_t i = pos; i < text.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw std::invalid_argument("malformed rational '" +
                                  std::string(whole) + "'");
  Integer value(std::string(text.substr(pos)));
  return negative ? Integer(-value) : value;
}

} // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos)
    return Rational(parse_integer(text, text));
  Integer num = parse_integer(text.substr(0, slash), text);
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
    throw std::invalid_argument("malformed rational '" + std::string(text) +
                                "'");
  Integer den = parse_integer(den_text, text);
  if (den == 0)
    throw std::invalid_argument("zero denominator in '" + std::string(text) +
                                "'");
  return Rational(num, den);
}

Integer floor(const Rational &r) {
  Integer n = numerator(r);
  Integer d = denominator(r);
  Integer q = n / d;
  if (n % d != 0 && n < 0)
    q -= 1;
  return q;
}

Integer ceil(const Rational &r) {
  Integer f = floor(r);
  return Rational(f) == r ? f : Integer(f + 1);
}

Rational fractional_part(const Rational &r) { return r - Rational(floor(r)); }

Integer gcd(const Integer &a, const Integer &b) {
  return boost::multiprecision::gcd(a, b);
}

Integer lcm(const Integer &a, const Integer &b) {
  if (a == 0 || b == 0)
    return 0;
  return boost::multiprecision::lcm(a, b);
}

Integer common_denominator(const RatVec &v) {
  Integer l = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    l = lcm(l, denominator(v[i]));
  return l;
}

Rational make_primitive(RatVec &v) {
  if (is_zero(v))
    return Rational(1);
  Integer den = common_denominator(v);
  Integer g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    Integer entry = numerator(v[i] * Rational(den));
    g = gcd(g, abs(entry));
  }
  Rational factor(den, g);
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v[i] *= factor;
  return factor;
}

bool is_zero(const RatVec &v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v[i] != 0)
      return false;
  return true;
}

bool is_integral(const RatVec &v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!is_integer(v[i]))
      return false;
  return true;
}

std::string to_string(const RatVec &v) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i)
      out += ", ";
    out += to_string(v[i]);
  }
  return out + ")";
}

} // namespace mlrf
