#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include <Eigen/Core>
#include <boost/multiprecision/gmp.hpp>

namespace mlrf {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

} // namespace mlrf

namespace Eigen {

template <> struct NumTraits<mlrf::Rational> : GenericNumTraits<mlrf::Rational> {
  using Real = mlrf::Rational;
  using NonInteger = mlrf::Rational;
  using Literal = mlrf::Rational;
  using Nested = mlrf::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 50,
    MulCost = 50
  };
};

} // namespace Eigen

namespace mlrf {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using RowMajorMatrix =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using RatVec = Vector<Rational>;
using RatMat = Matrix<Rational>;

/// Zero-initialized rational vector. Eigen leaves non-POD scalars
/// default-constructed, which for Rational is already 0; this just makes the
/// intent explicit at call sites.
inline RatVec zeros(std::size_t n) { return RatVec::Zero(Eigen::Index(n)); }

/// Canonical text form: "p/q", or "p" when q == 1.
std::string to_string(const Rational &r);

/// Parses "p", "-p", "p/q" (q != 0). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

Integer floor(const Rational &r);
Integer ceil(const Rational &r);
inline bool is_integer(const Rational &r) {
  return denominator(r) == 1;
}
/// r - floor(r), always in [0, 1).
Rational fractional_part(const Rational &r);

Integer gcd(const Integer &a, const Integer &b);
Integer lcm(const Integer &a, const Integer &b);

/// Least common multiple of the denominators of all entries (1 for empty).
Integer common_denominator(const RatVec &v);

/// Scales v by a positive factor so that all entries become integers with
/// gcd 1. The zero vector is returned unchanged. Returns the factor used.
Rational make_primitive(RatVec &v);

bool is_zero(const RatVec &v);
bool is_integral(const RatVec &v);

std::string to_string(const RatVec &v);

} // namespace mlrf
