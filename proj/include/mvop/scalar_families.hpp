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

#ifndef MVOP_SCALAR_FAMILIES_HPP
#define MVOP_SCALAR_FAMILIES_HPP

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "poly.hpp"
#include "rational.hpp"

namespace mvop {

enum class FamilyKind { charlier, meixner, krawtchouk, hahn };

inline std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::charlier: return "charlier";
    case FamilyKind::meixner: return "meixner";
    case FamilyKind::krawtchouk: return "krawtchouk";
    case FamilyKind::hahn: return "hahn";
  }
  return "?";
}

/// Parameters of one classical scalar discrete weight.
///
/// charlier(b):            b^x / x!                          on N_0, b > 0
/// meixner(beta, c):       (beta)_x c^x / x!                 on N_0, beta > 0, 0 < c < 1
/// krawtchouk(p, N):       binom(N, x) p^x (1-p)^(N-x)       on {0..N}, 0 < p < 1
/// hahn(alpha, beta, N):   binom(alpha+x, x) binom(beta+N-x, N-x) on {0..N},
///                         alpha, beta > -1 or alpha, beta < -N
///
/// Constraints are checked by the factories; an instance is always valid.
class ScalarWeightSpec {
 public:
  static ScalarWeightSpec charlier(const Rational& b) {
    if (b.sign() <= 0) throw SpecError("charlier: b must be > 0 (got " + b.str() + ")");
    return ScalarWeightSpec(FamilyKind::charlier, b, Rational(0), -1);
  }

  static ScalarWeightSpec meixner(const Rational& beta, const Rational& c) {
    if (beta.sign() <= 0) throw SpecError("meixner: beta must be > 0 (got " + beta.str() + ")");
    if (c.sign() <= 0 || c >= Rational(1))
      throw SpecError("meixner: c must satisfy 0 < c < 1 (got " + c.str() + ")");
    return ScalarWeightSpec(FamilyKind::meixner, beta, c, -1);
  }

  static ScalarWeightSpec krawtchouk(const Rational& p, long N) {
    if (N < 1) throw SpecError("krawtchouk: N must be a positive integer (got " + std::to_string(N) + ")");
    if (p.sign() <= 0 || p >= Rational(1))
      throw SpecError("krawtchouk: p must satisfy 0 < p < 1 (got " + p.str() + ")");
    return ScalarWeightSpec(FamilyKind::krawtchouk, p, Rational(0), N);
  }

  static ScalarWeightSpec hahn(const Rational& alpha, const Rational& beta, long N) {
    if (N < 1) throw SpecError("hahn: N must be a positive integer (got " + std::to_string(N) + ")");
    const bool above = alpha > Rational(-1) && beta > Rational(-1);
    const bool below = alpha < Rational(-N) && beta < Rational(-N);
    if (!above && !below)
      throw SpecError("hahn: need alpha, beta > -1 or alpha, beta < -N (got alpha=" + alpha.str() +
                      ", beta=" + beta.str() + ", N=" + std::to_string(N) + ")");
    ScalarWeightSpec s(FamilyKind::hahn, alpha, beta, N);
    s.check_hahn_denominators();
    return s;
  }

  [[nodiscard]] FamilyKind kind() const { return kind_; }
  [[nodiscard]] bool finite() const { return N_ >= 0; }
  [[nodiscard]] long N() const {
    if (!finite()) throw std::logic_error(to_string(kind_) + " weight has infinite support");
    return N_;
  }

  [[nodiscard]] const Rational& b() const { return expect(FamilyKind::charlier, first_); }
  [[nodiscard]] const Rational& c() const { return expect(FamilyKind::meixner, second_); }
  [[nodiscard]] const Rational& p() const { return expect(FamilyKind::krawtchouk, first_); }
  [[nodiscard]] const Rational& alpha() const { return expect(FamilyKind::hahn, first_); }
  /// Meixner beta or Hahn beta.
  [[nodiscard]] const Rational& beta() const {
    if (kind_ == FamilyKind::meixner) return first_;
    return expect(FamilyKind::hahn, second_);
  }

  [[nodiscard]] std::string describe() const {
    switch (kind_) {
      case FamilyKind::charlier: return "charlier(b=" + first_.str() + ")";
      case FamilyKind::meixner: return "meixner(beta=" + first_.str() + ", c=" + second_.str() + ")";
      case FamilyKind::krawtchouk: return "krawtchouk(p=" + first_.str() + ", N=" + std::to_string(N_) + ")";
      case FamilyKind::hahn:
        return "hahn(alpha=" + first_.str() + ", beta=" + second_.str() + ", N=" + std::to_string(N_) + ")";
    }
    return "?";
  }

  friend bool operator==(const ScalarWeightSpec&, const ScalarWeightSpec&) = default;

 private:
  ScalarWeightSpec(FamilyKind k, Rational first, Rational second, long N)
      : kind_(k), first_(std::move(first)), second_(std::move(second)), N_(N) {}

  const Rational& expect(FamilyKind k, const Rational& v) const {
    if (kind_ != k) throw std::logic_error("parameter not defined for " + describe());
    return v;
  }

  // The recurrence denominators (2n+s), (2n+s+1), (2n+s+2) with s = alpha+beta,
  // and the norm ladder factors, must not vanish for the n that are used.
  void check_hahn_denominators() const {
    const Rational s = first_ + second_;
    for (long n = 0; n <= N_ + 1; ++n) {
      const Rational n2 = Rational(2 * n);
      const bool bad = (n >= 1 && (n2 + s).is_zero()) || (n2 + s + Rational(1)).is_zero() ||
                       (n2 + s + Rational(2)).is_zero();
      if (bad)
        throw SpecError("hahn: alpha+beta=" + s.str() + " makes a recurrence denominator vanish at n=" +
                        std::to_string(n));
    }
    for (long n = 1; n <= N_; ++n) {
      const Rational tn1 = (Rational(n) + s) * (Rational(n) + first_) * Rational(N_ - n + 1);
      const Rational sn = Rational(n) * (Rational(n + N_ + 1) + s) * (Rational(n) + second_);
      if (tn1.is_zero() || sn.is_zero())
        throw SpecError("hahn: parameters make the squared norm vanish at n=" + std::to_string(n));
    }
  }

  FamilyKind kind_;
  Rational first_;
  Rational second_;
  long N_;
};

// ---------------------------------------------------------------------------
// Three-term recurrence  x p_n = p_{n+1} + b_n p_n + c_n p_{n-1}.

inline Rational hahn_t(const ScalarWeightSpec& s, long n) {
  const Rational ab = s.alpha() + s.beta();
  const Rational nn(n);
  return (nn + ab + Rational(1)) * (nn + s.alpha() + Rational(1)) * Rational(s.N() - n) /
         ((Rational(2 * n) + ab + Rational(1)) * (Rational(2 * n) + ab + Rational(2)));
}

inline Rational hahn_s(const ScalarWeightSpec& s, long n) {
  if (n == 0) return Rational(0);
  const Rational ab = s.alpha() + s.beta();
  const Rational nn(n);
  return nn * (nn + ab + Rational(s.N() + 1)) * (nn + s.beta()) /
         ((Rational(2 * n) + ab) * (Rational(2 * n) + ab + Rational(1)));
}

inline Rational recurrence_b(const ScalarWeightSpec& s, long n) {
  const Rational nn(n);
  switch (s.kind()) {
    case FamilyKind::charlier: return nn + s.b();
    case FamilyKind::meixner: return (nn + (nn + s.beta()) * s.c()) / (Rational(1) - s.c());
    case FamilyKind::krawtchouk: return s.p() * Rational(s.N() - n) + nn * (Rational(1) - s.p());
    case FamilyKind::hahn: return hahn_t(s, n) + hahn_s(s, n);
  }
  return Rational(0);
}

inline Rational recurrence_c(const ScalarWeightSpec& s, long n) {
  if (n == 0) return Rational(0);
  const Rational nn(n);
  switch (s.kind()) {
    case FamilyKind::charlier: return nn * s.b();
    case FamilyKind::meixner: {
      const Rational one_c = Rational(1) - s.c();
      return nn * (nn + s.beta() - Rational(1)) * s.c() / (one_c * one_c);
    }
    case FamilyKind::krawtchouk:
      return nn * s.p() * (Rational(1) - s.p()) * Rational(s.N() + 1 - n);
    case FamilyKind::hahn: return hahn_t(s, n - 1) * hahn_s(s, n);
  }
  return Rational(0);
}

/// Monic p_0..p_{count-1} from arbitrary recurrence coefficients.
/// This is the entry point for weights outside the classical catalog.
template <class BFn, class CFn>
std::vector<Poly<Rational>> monic_from_recurrence(BFn&& b, CFn&& c, long count) {
  std::vector<Poly<Rational>> out;
  if (count <= 0) return out;
  const Poly<Rational> x = Poly<Rational>::x();
  out.emplace_back(Rational(1));
  for (long n = 0; n + 1 < count; ++n) {
    Poly<Rational> next = (x - Poly<Rational>(b(n))) * out[static_cast<std::size_t>(n)];
    if (n > 0) next -= out[static_cast<std::size_t>(n - 1)] * c(n);
    out.push_back(std::move(next));
  }
  return out;
}

inline void check_degree(const ScalarWeightSpec& s, long n) {
  if (n < 0) throw std::invalid_argument("degree must be >= 0 (got " + std::to_string(n) + ")");
  if (s.finite() && n > s.N() + 1)
    throw std::invalid_argument(s.describe() + ": only degrees up to N+1=" + std::to_string(s.N() + 1) +
                                " exist on a finite support (got " + std::to_string(n) + ")");
}

/// Monic p_0..p_{n_max}. On finite support n_max may reach N+1, where the
/// recurrence produces x(x-1)...(x-N).
inline std::vector<Poly<Rational>> monic_sequence(const ScalarWeightSpec& s, long n_max) {
  check_degree(s, n_max);
  return monic_from_recurrence([&](long n) { return recurrence_b(s, n); },
                               [&](long n) { return recurrence_c(s, n); }, n_max + 1);
}

inline Poly<Rational> monic_polynomial(const ScalarWeightSpec& s, long n) {
  return monic_sequence(s, n).back();
}

// ---------------------------------------------------------------------------
// Weights, masses, norms.

namespace detail {
inline Rational binom_general(const Rational& top_offset, long k) {
  // binom(gamma + k, k) = (gamma+1)_k / k!
  if (k < 0) return Rational(0);
  return pochhammer(top_offset + Rational(1), k) / factorial(k);
}
}  // namespace detail

inline Rational weight_value(const ScalarWeightSpec& s, long x) {
  if (x < 0) return Rational(0);
  if (s.finite() && x > s.N()) return Rational(0);
  switch (s.kind()) {
    case FamilyKind::charlier: return pow(s.b(), x) / factorial(x);
    case FamilyKind::meixner: return pochhammer(s.beta(), x) * pow(s.c(), x) / factorial(x);
    case FamilyKind::krawtchouk:
      return detail::binom_general(Rational(s.N() - x), x) * pow(s.p(), x) *
             pow(Rational(1) - s.p(), s.N() - x);
    case FamilyKind::hahn:
      return detail::binom_general(s.alpha(), x) * detail::binom_general(s.beta(), s.N() - x);
  }
  return Rational(0);
}

/// Floating weight value for infinite-support sums; evaluated in log space so
/// large x underflows to zero instead of overflowing.
inline double weight_value_double(const ScalarWeightSpec& s, long x) {
  if (x < 0) return 0.0;
  if (s.finite()) return weight_value(s, x).to_double();
  const double xd = static_cast<double>(x);
  switch (s.kind()) {
    case FamilyKind::charlier:
      return std::exp(xd * std::log(s.b().to_double()) - std::lgamma(xd + 1.0));
    case FamilyKind::meixner: {
      const double be = s.beta().to_double();
      return std::exp(std::lgamma(be + xd) - std::lgamma(be) + xd * std::log(s.c().to_double()) -
                      std::lgamma(xd + 1.0));
    }
    default: break;
  }
  return 0.0;
}

/// Symbolic total mass of an infinite-support weight: e^b (Charlier) or
/// (1-c)^(-beta) (Meixner). Finite families fold their rational mass into
/// the norm coefficient and carry the unit factor.
class MassFactor {
 public:
  enum class Kind { unit, exponential, meixner_power };

  static MassFactor unit() { return MassFactor(Kind::unit, Rational(0), Rational(0)); }
  static MassFactor exponential(const Rational& b) { return MassFactor(Kind::exponential, b, Rational(0)); }
  static MassFactor meixner_power(const Rational& beta, const Rational& c) {
    return MassFactor(Kind::meixner_power, beta, c);
  }

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] int exponent() const { return kind_ == Kind::unit ? 0 : 1; }

  [[nodiscard]] double log_value() const {
    switch (kind_) {
      case Kind::unit: return 0.0;
      case Kind::exponential: return first_.to_double();
      case Kind::meixner_power: return -first_.to_double() * std::log1p(-second_.to_double());
    }
    return 0.0;
  }

  [[nodiscard]] std::string symbol() const {
    switch (kind_) {
      case Kind::unit: return "1";
      case Kind::exponential: return "exp(" + first_.str() + ")";
      case Kind::meixner_power: return "(1-" + second_.str() + ")^(-" + first_.str() + ")";
    }
    return "?";
  }

  /// this / other when that quotient is rational.
  [[nodiscard]] std::optional<Rational> exact_ratio(const MassFactor& other) const {
    if (kind_ != other.kind_) return std::nullopt;
    switch (kind_) {
      case Kind::unit: return Rational(1);
      case Kind::exponential:
        if (first_ == other.first_) return Rational(1);
        return std::nullopt;
      case Kind::meixner_power: {
        if (second_ != other.second_) return std::nullopt;
        const Rational diff = other.first_ - first_;  // (1-c)^(diff)
        if (!diff.is_integer()) return std::nullopt;
        return pow(Rational(1) - second_, diff.to_long());
      }
    }
    return std::nullopt;
  }

  friend bool operator==(const MassFactor&, const MassFactor&) = default;

 private:
  MassFactor(Kind k, Rational a, Rational b) : kind_(k), first_(std::move(a)), second_(std::move(b)) {}
  Kind kind_;
  Rational first_;
  Rational second_;
};

/// Squared norm = coefficient * mass.
struct NormValue {
  Rational coefficient;
  MassFactor mass = MassFactor::unit();
};

inline MassFactor mass_factor(const ScalarWeightSpec& s) {
  switch (s.kind()) {
    case FamilyKind::charlier: return MassFactor::exponential(s.b());
    case FamilyKind::meixner: return MassFactor::meixner_power(s.beta(), s.c());
    default: return MassFactor::unit();
  }
}

/// Exact total mass of a finite-support weight.
inline Rational finite_total_mass(const ScalarWeightSpec& s) {
  switch (s.kind()) {
    case FamilyKind::krawtchouk: return Rational(1);
    case FamilyKind::hahn:
      // Chu-Vandermonde: sum_x binom(a+x,x) binom(b+N-x,N-x) = (a+b+2)_N / N!
      return pochhammer(s.alpha() + s.beta() + Rational(2), s.N()) / factorial(s.N());
    default: break;
  }
  throw std::logic_error(s.describe() + " has infinite support");
}

/// ||p_n||^2 through the ladder ||p_n||^2 = c_n ||p_{n-1}||^2.
/// n = N+1 on finite support gives exactly zero.
inline NormValue squared_norm(const ScalarWeightSpec& s, long n) {
  check_degree(s, n);
  Rational coeff = s.finite() ? finite_total_mass(s) : Rational(1);
  for (long k = 1; k <= n; ++k) coeff *= recurrence_c(s, k);
  return NormValue{coeff, mass_factor(s)};
}

/// x(x-1)...(x-N), cross-checked against the recurrence-built p_{N+1}.
inline Poly<Rational> extended_polynomial(const ScalarWeightSpec& s) {
  if (!s.finite()) throw std::invalid_argument(s.describe() + ": extension needs a finite support");
  Poly<Rational> ext = falling_factorial<Rational>(static_cast<int>(s.N() + 1));
  if (monic_polynomial(s, s.N() + 1) != ext)
    throw std::logic_error(s.describe() + ": recurrence-built p_{N+1} differs from x(x-1)...(x-N)");
  return ext;
}

// ---------------------------------------------------------------------------
// Rodrigues formulas, evaluated pointwise and interpolated.

namespace detail {

template <class G>
Rational backward_difference_power(G&& g, long n, long x) {
  Rational acc(0);
  Rational binom(1);
  for (long k = 0; k <= n; ++k) {
    const Rational term = binom * g(x - k);
    acc += (k % 2 == 0) ? term : -term;
    binom = binom * Rational(n - k) / Rational(k + 1);
  }
  return acc;
}

inline Rational rodrigues_value(const ScalarWeightSpec& s, long n, long x) {
  const Rational nn(n);
  switch (s.kind()) {
    case FamilyKind::charlier: {
      auto g = [&](long y) { return y < 0 ? Rational(0) : pow(s.b(), y) / factorial(y); };
      return pow(-s.b(), n) * factorial(x) / pow(s.b(), x) * backward_difference_power(g, n, x);
    }
    case FamilyKind::meixner: {
      auto g = [&](long y) {
        return y < 0 ? Rational(0) : pochhammer(s.beta() + nn, y) * pow(s.c(), y) / factorial(y);
      };
      const Rational pre = pochhammer(s.beta(), n) * pow(s.c() / (s.c() - Rational(1)), n);
      return pre * factorial(x) / (pochhammer(s.beta(), x) * pow(s.c(), x)) *
             backward_difference_power(g, n, x);
    }
    case FamilyKind::krawtchouk: {
      const Rational r = s.p() / (Rational(1) - s.p());
      auto g = [&](long y) {
        return (y < 0 || y > s.N() - n) ? Rational(0) : binom_general(Rational(s.N() - n - y), y) * pow(r, y);
      };
      const Rational pre = pochhammer(Rational(-s.N()), n) * pow(s.p(), n);
      return pre / (binom_general(Rational(s.N() - x), x) * pow(r, x)) * backward_difference_power(g, n, x);
    }
    case FamilyKind::hahn: {
      auto g = [&](long y) {
        if (y < 0 || y > s.N() - n) return Rational(0);
        return binom_general(s.alpha() + nn, y) * binom_general(s.beta() + nn, s.N() - n - y);
      };
      Rational pre = pochhammer(s.alpha() + Rational(1), n) * pochhammer(s.beta() + Rational(1), n) /
                     pochhammer(nn + s.alpha() + s.beta() + Rational(1), n);
      if (n % 2 == 1) pre = -pre;
      return pre / weight_value(s, x) * backward_difference_power(g, n, x);
    }
  }
  return Rational(0);
}

}  // namespace detail

/// Polynomial from the Rodrigues formula: evaluated exactly at x = 0..n and
/// interpolated. Independent of the recurrence path.
inline Poly<Rational> rodrigues_polynomial(const ScalarWeightSpec& s, long n) {
  if (n < 0) throw std::invalid_argument("rodrigues_polynomial: degree must be >= 0");
  if (s.finite() && n > s.N())
    throw std::invalid_argument(s.describe() + ": Rodrigues formula needs n <= N");
  std::vector<Rational> xs;
  std::vector<Rational> ys;
  for (long x = 0; x <= n; ++x) {
    xs.emplace_back(x);
    ys.push_back(detail::rodrigues_value(s, n, x));
  }
  return interpolate(xs, ys);
}

// ---------------------------------------------------------------------------
// Scalar difference operators  delta = Delta f(x) + k(x) - Nabla g(x).

struct ScalarOperator {
  Poly<Rational> f;
  Poly<Rational> k;
  Poly<Rational> g;
  Poly<Rational> eigenvalue;  ///< Lambda as a polynomial in n.

  [[nodiscard]] Rational eigenvalue_at(long n) const { return eigenvalue(Rational(n)); }

  /// p . delta = Delta(p) f + k p - Nabla(p) g
  [[nodiscard]] Poly<Rational> apply(const Poly<Rational>& p) const {
    return delta(p) * f + k * p - nabla(p) * g;
  }

  [[nodiscard]] ScalarOperator scaled(const Rational& s) const {
    return ScalarOperator{f * s, k * s, g * s, eigenvalue * s};
  }
  [[nodiscard]] ScalarOperator plus_constant(const Rational& s) const {
    return ScalarOperator{f, k + Poly<Rational>(s), g, eigenvalue + Poly<Rational>(s)};
  }
};

/// The classical operator of each family, with its eigenvalue in n.
/// For finite families the relation also holds at n = N+1.
inline ScalarOperator scalar_operator(const ScalarWeightSpec& s) {
  using P = Poly<Rational>;
  const P x = P::x();
  const P n = P::x();  // eigenvalue variable
  switch (s.kind()) {
    case FamilyKind::charlier: return {P(s.b()), P(), x, -n};
    case FamilyKind::meixner:
      return {(x + P(s.beta())) * s.c(), P(), x, n * (s.c() - Rational(1))};
    case FamilyKind::krawtchouk:
      return {(P(Rational(s.N())) - x) * s.p(), P(), x * (Rational(1) - s.p()), -n};
    case FamilyKind::hahn: {
      const P f = (x + P(s.alpha() + Rational(1))) * (x - P(Rational(s.N())));
      const P g = x * (x - P(s.beta() + Rational(s.N() + 1)));
      return {f, P(), g, n * (n + P(s.alpha() + s.beta() + Rational(1)))};
    }
  }
  return {};
}

}  // namespace mvop

#endif  // MVOP_SCALAR_FAMILIES_HPP
