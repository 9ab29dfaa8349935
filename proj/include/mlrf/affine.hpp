#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlrf/errors.hpp"
#include "mlrf/rational.hpp"

namespace mlrf {

/// f(x) = coeffs . x + constant.
template <typename Scalar> struct AffineFunction {
  Vector<Scalar> coeffs;
  Scalar constant{0};

  AffineFunction() = default;
  explicit AffineFunction(std::size_t dim)
      : coeffs(Vector<Scalar>::Zero(Eigen::Index(dim))), constant(0) {}
  AffineFunction(Vector<Scalar> c, Scalar c0)
      : coeffs(std::move(c)), constant(std::move(c0)) {}

  std::size_t dim() const { return std::size_t(coeffs.size()); }

  static AffineFunction constant_function(std::size_t dim, Scalar value) {
    AffineFunction f(dim);
    f.constant = std::move(value);
    return f;
  }
  static AffineFunction variable(std::size_t dim, std::size_t index) {
    AffineFunction f(dim);
    f.coeffs[Eigen::Index(index)] = Scalar(1);
    return f;
  }

  bool operator==(const AffineFunction &other) const {
    return coeffs == other.coeffs && constant == other.constant;
  }
};

using AffineFunc = AffineFunction<Rational>;

namespace detail {
template <typename Scalar>
void require_same_dim(const AffineFunction<Scalar> &a,
                      const AffineFunction<Scalar> &b) {
  if (a.dim() != b.dim())
    throw DimensionError("affine functions of dimension " +
                         std::to_string(a.dim()) + " and " +
                         std::to_string(b.dim()) + " cannot be combined");
}
} // namespace detail

template <typename Scalar>
Scalar eval_affine(const AffineFunction<Scalar> &f, const Vector<Scalar> &x) {
  if (f.dim() != std::size_t(x.size()))
    throw DimensionError("evaluating a " + std::to_string(f.dim()) +
                         "-variable function at a point of dimension " +
                         std::to_string(x.size()));
  Scalar value = f.constant;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (f.coeffs[i] != 0)
      value += f.coeffs[i] * x[i];
  return value;
}

template <typename Scalar>
AffineFunction<Scalar> operator+(const AffineFunction<Scalar> &a,
                                 const AffineFunction<Scalar> &b) {
  detail::require_same_dim(a, b);
  return {a.coeffs + b.coeffs, a.constant + b.constant};
}

template <typename Scalar>
AffineFunction<Scalar> operator-(const AffineFunction<Scalar> &a,
                                 const AffineFunction<Scalar> &b) {
  detail::require_same_dim(a, b);
  return {a.coeffs - b.coeffs, a.constant - b.constant};
}

template <typename Scalar>
AffineFunction<Scalar> operator-(const AffineFunction<Scalar> &a) {
  return {-a.coeffs, -a.constant};
}

template <typename Scalar>
AffineFunction<Scalar> operator*(const Scalar &k,
                                 const AffineFunction<Scalar> &a) {
  return {a.coeffs * k, a.constant * k};
}

template <typename Scalar>
AffineFunction<Scalar> operator+(const AffineFunction<Scalar> &a,
                                 const Scalar &k) {
  return {a.coeffs, a.constant + k};
}

template <typename Scalar>
AffineFunction<Scalar> operator-(const AffineFunction<Scalar> &a,
                                 const Scalar &k) {
  return {a.coeffs, a.constant - k};
}

/// Reads f over the pre-state block of (x, x'), dimension 2n.
template <typename Scalar>
AffineFunction<Scalar> on_pre_state(const AffineFunction<Scalar> &f) {
  const auto n = Eigen::Index(f.dim());
  AffineFunction<Scalar> g(2 * f.dim());
  g.coeffs.head(n) = f.coeffs;
  g.constant = f.constant;
  return g;
}

/// Reads f over the post-state block of (x, x'), dimension 2n.
template <typename Scalar>
AffineFunction<Scalar> on_post_state(const AffineFunction<Scalar> &f) {
  const auto n = Eigen::Index(f.dim());
  AffineFunction<Scalar> g(2 * f.dim());
  g.coeffs.tail(n) = f.coeffs;
  g.constant = f.constant;
  return g;
}

/// delta(f)(x, x') = f(x) - f(x'); the constant cancels.
template <typename Scalar>
AffineFunction<Scalar> delta(const AffineFunction<Scalar> &f) {
  const auto n = Eigen::Index(f.dim());
  AffineFunction<Scalar> g(2 * f.dim());
  g.coeffs.head(n) = f.coeffs;
  g.coeffs.tail(n) = -f.coeffs;
  return g;
}

/// Pretty-prints f using the given variable names ("3*x - 1/2*y + 4").
std::string format_affine(const AffineFunc &f,
                          const std::vector<std::string> &names);

} // namespace mlrf
