/*
   Copyright 2026 The mvop Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef MVOP_POLY_HPP
#define MVOP_POLY_HPP

#include <algorithm>
#include <concepts>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace mvop {

/// Dense univariate polynomial, coefficient k multiplies x^k.
///
/// Trailing zeros are stripped after every operation, so the zero polynomial
/// has no coefficients and degree() == -1.
template <class T>
class Poly {
 public:
  using value_type = T;

  Poly() = default;
  Poly(T constant) {  // NOLINT: constants promote to polynomials
    coeffs_.push_back(std::move(constant));
    normalize();
  }
  template <std::integral I>
  Poly(I constant) : Poly(T(constant)) {}  // NOLINT
  explicit Poly(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }
  Poly(std::initializer_list<T> coeffs) : coeffs_(coeffs) { normalize(); }

  static Poly x() { return monomial(1, T(1)); }
  static Poly monomial(int k, T c) {
    std::vector<T> v(static_cast<std::size_t>(k) + 1, T(0));
    v.back() = std::move(c);
    return Poly(std::move(v));
  }

  [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
  [[nodiscard]] const std::vector<T>& coefficients() const { return coeffs_; }

  [[nodiscard]] T coeff(int k) const {
    if (k < 0 || k > degree()) return T(0);
    return coeffs_[static_cast<std::size_t>(k)];
  }
  [[nodiscard]] T leading() const { return is_zero() ? T(0) : coeffs_.back(); }

  /// Horner evaluation; U may be a wider type than T (for example a matrix).
  template <class U>
  [[nodiscard]] U operator()(const U& at) const {
    U acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + U(*it);
    return acc;
  }

  Poly& operator+=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    normalize();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    normalize();
    return *this;
  }
  Poly& operator*=(const T& s) {
    for (auto& c : coeffs_) c *= s;
    normalize();
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend Poly operator*(Poly a, const T& s) { return a *= s; }
  friend Poly operator*(const T& s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<T> out(a.coeffs_.size() + b.coeffs_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Poly(std::move(out));
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void normalize() {
    while (!coeffs_.empty() && mvop::is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<T> coeffs_;
};

/// q(x) = p(x + k), by Horner in the shifted variable.
template <class T>
Poly<T> shift(const Poly<T>& p, const T& k) {
  const Poly<T> arg({k, T(1)});
  Poly<T> acc;
  for (int i = p.degree(); i >= 0; --i) acc = acc * arg + Poly<T>(p.coeff(i));
  return acc;
}

template <class T>
Poly<T> delta(const Poly<T>& p) { return shift(p, T(1)) - p; }

template <class T>
Poly<T> nabla(const Poly<T>& p) { return p - shift(p, T(-1)); }

/// p(alpha x + beta). alpha = 0 would collapse the degree and is rejected.
template <class T>
Poly<T> compose_affine(const Poly<T>& p, const T& alpha, const T& beta) {
  if (mvop::is_zero(alpha)) throw std::invalid_argument("compose_affine: alpha must be nonzero");
  const Poly<T> arg({beta, alpha});
  Poly<T> acc;
  for (int i = p.degree(); i >= 0; --i) acc = acc * arg + Poly<T>(p.coeff(i));
  return acc;
}

/// Multiplies coefficient k by scale^k, i.e. p(scale x).
template <class T>
Poly<T> scale_argument(const Poly<T>& p, const T& scale) {
  std::vector<T> out = p.coefficients();
  T factor(1);
  for (auto& c : out) {
    c *= factor;
    factor *= scale;
  }
  return Poly<T>(std::move(out));
}

template <class T>
Poly<T> derivative(const Poly<T>& p) {
  if (p.degree() < 1) return Poly<T>();
  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(p.degree()));
  for (int k = 1; k <= p.degree(); ++k) out.push_back(p.coeff(k) * T(k));
  return Poly<T>(std::move(out));
}

/// x (x - 1) ... (x - (count - 1)).
template <class T>
Poly<T> falling_factorial(int count) {
  Poly<T> acc(T(1));
  for (int j = 0; j < count; ++j) acc = acc * Poly<T>({T(-j), T(1)});
  return acc;
}

/// Lagrange interpolation through (xs[i], ys[i]); the nodes must be distinct.
template <class T>
Poly<T> interpolate(const std::vector<T>& xs, const std::vector<T>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("interpolate: size mismatch");
  Poly<T> result;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Poly<T> basis(T(1));
    T denom(1);
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      if (xs[i] == xs[j]) throw std::invalid_argument("interpolate: repeated node");
      basis = basis * Poly<T>({-xs[j], T(1)});
      denom *= xs[i] - xs[j];
    }
    result += basis * (ys[i] / denom);
  }
  return result;
}

template <class U, class T, class Fn>
Poly<U> convert(const Poly<T>& p, Fn&& fn) {
  std::vector<U> out;
  out.reserve(p.coefficients().size());
  for (const auto& c : p.coefficients()) out.push_back(fn(c));
  return Poly<U>(std::move(out));
}

inline Poly<double> to_double(const Poly<Rational>& p) {
  return convert<double>(p, [](const Rational& r) { return r.to_double(); });
}

}  // namespace mvop

#endif  // MVOP_POLY_HPP
