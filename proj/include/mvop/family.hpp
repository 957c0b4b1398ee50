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

#ifndef MVOP_FAMILY_HPP
#define MVOP_FAMILY_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "scalar_families.hpp"

namespace mvop {

/// Size m, nilpotent parameters a_1..a_{m-1} and one scalar weight per channel.
class FamilySpec {
 public:
  FamilySpec(std::vector<Rational> a, std::vector<ScalarWeightSpec> channels)
      : a_(std::move(a)), channels_(std::move(channels)) {
    validate();
  }

  [[nodiscard]] std::size_t m() const { return channels_.size(); }
  [[nodiscard]] const std::vector<Rational>& a() const { return a_; }
  [[nodiscard]] const std::vector<ScalarWeightSpec>& channels() const { return channels_; }
  [[nodiscard]] const ScalarWeightSpec& channel(std::size_t i) const { return channels_.at(i); }
  [[nodiscard]] bool finite() const { return channels_.front().finite(); }
  [[nodiscard]] long N() const { return channels_.front().N(); }

  /// Copy with every a_j multiplied by s.
  [[nodiscard]] FamilySpec scaled(const Rational& s) const {
    std::vector<Rational> a = a_;
    for (auto& v : a) v *= s;
    return FamilySpec(std::move(a), channels_);
  }

  [[nodiscard]] std::string describe() const {
    std::string out = "m=" + std::to_string(m()) + " a=[";
    for (std::size_t j = 0; j < a_.size(); ++j) out += (j ? "," : "") + a_[j].str();
    out += "] channels=[";
    for (std::size_t i = 0; i < m(); ++i) out += (i ? ", " : "") + channels_[i].describe();
    return out + "]";
  }

  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;

 private:
  void validate() const {
    if (channels_.size() < 2)
      throw SpecError("family: matrix size m must be >= 2 (got " + std::to_string(channels_.size()) + ")");
    if (a_.size() + 1 != channels_.size())
      throw SpecError("family: expected " + std::to_string(channels_.size() - 1) + " nilpotent parameters, got " +
                      std::to_string(a_.size()));
    for (std::size_t j = 0; j < a_.size(); ++j)
      if (a_[j].is_zero()) throw SpecError("family: a_" + std::to_string(j + 1) + " must be nonzero");
    const bool fin = channels_.front().finite();
    for (std::size_t i = 1; i < channels_.size(); ++i) {
      if (channels_[i].finite() != fin)
        throw SpecError("family: channels 1 and " + std::to_string(i + 1) +
                        " mix finite and infinite support");
      if (fin && channels_[i].N() != channels_.front().N())
        throw SpecError("family: channels 1 and " + std::to_string(i + 1) + " have different N");
    }
  }

  std::vector<Rational> a_;
  std::vector<ScalarWeightSpec> channels_;
};

/// Position (row, col) of the k-th nilpotent parameter, 0-based.
inline std::pair<std::size_t, std::size_t> nilpotent_position(std::size_t k) {
  return k % 2 == 0 ? std::pair{k, k + 1} : std::pair{k + 1, k};
}

inline Matrix<Rational> build_nilpotent(const FamilySpec& spec) {
  Matrix<Rational> A(spec.m(), spec.m());
  for (std::size_t k = 0; k < spec.a().size(); ++k) {
    const auto [r, c] = nilpotent_position(k);
    A(r, c) = spec.a()[k];
  }
  return A;
}

/// T(x) = I + A x.
inline MatPoly<Rational> build_T(const FamilySpec& spec) {
  return MatPoly<Rational>::identity(spec.m()) + MatPoly<Rational>(build_nilpotent(spec)) * Poly<Rational>::x();
}

namespace detail {
template <class T>
Matrix<T> congruence(const Matrix<T>& A, const std::vector<T>& w, const T& x) {
  const std::size_t m = w.size();
  Matrix<T> Tx = Matrix<T>::identity(m) + A * x;
  return Tx * Matrix<T>::diagonal(w) * Tx.transpose();
}
}  // namespace detail

/// W(x) = T(x) diag(w_1(x)..w_m(x)) T(x)^T, zero off the support.
inline Matrix<Rational> weight_matrix_eval(const FamilySpec& spec, long x) {
  std::vector<Rational> w;
  for (const auto& ch : spec.channels()) w.push_back(weight_value(ch, x));
  return detail::congruence(build_nilpotent(spec), w, Rational(x));
}

inline Matrix<double> weight_matrix_eval_double(const FamilySpec& spec, long x) {
  std::vector<double> w;
  for (const auto& ch : spec.channels()) w.push_back(weight_value_double(ch, x));
  return detail::congruence(to_double(build_nilpotent(spec)), w, static_cast<double>(x));
}

// ---------------------------------------------------------------------------
// Mass quotients.

/// A cross-channel quotient of total masses that is not rational; it enters
/// Q_n as a formal parameter tau.
struct MassQuotient {
  std::size_t k;       ///< index of the nilpotent parameter it multiplies
  std::size_t row;     ///< numerator channel
  std::size_t col;     ///< denominator channel
  double log_value;    ///< log of the true quotient
  std::string symbol;  ///< e.g. "exp(5/2)/exp(2/3)"

  [[nodiscard]] double value() const { return std::exp(log_value); }
};

/// Quotient of the total masses of channels row / col, exact when rational.
inline std::optional<Rational> exact_mass_ratio(const FamilySpec& spec, std::size_t row, std::size_t col) {
  return mass_factor(spec.channel(row)).exact_ratio(mass_factor(spec.channel(col)));
}

inline std::vector<MassQuotient> symbolic_quotients(const FamilySpec& spec) {
  std::vector<MassQuotient> out;
  for (std::size_t k = 0; k < spec.a().size(); ++k) {
    const auto [c, r] = nilpotent_position(k);  // S = ||P_n||^2 A^T ||P_{n-1}||^-2 lives at the transpose
    if (exact_mass_ratio(spec, r, c)) continue;
    const MassFactor num = mass_factor(spec.channel(r));
    const MassFactor den = mass_factor(spec.channel(c));
    out.push_back({k, r, c, num.log_value() - den.log_value(), num.symbol() + "/" + den.symbol()});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Probe grid.

/// One substitution: every a_j is multiplied by a_scale; symbolic quotient
/// number j is replaced by tau[j].
struct ProbePoint {
  Rational a_scale{1};
  std::vector<Rational> tau;

  [[nodiscard]] std::string describe() const {
    std::string out = "a*" + a_scale.str();
    for (std::size_t j = 0; j < tau.size(); ++j) out += " tau" + std::to_string(j + 1) + "=" + tau[j].str();
    return out;
  }
};

struct ProbeGrid {
  std::vector<Rational> a_values{Rational(1), Rational(2), Rational(3), Rational(1, 2), Rational(-1)};
  std::vector<Rational> tau_values{Rational(1), Rational(2), Rational(3)};

  /// Cartesian product; the tau axis is dropped when nothing is symbolic.
  [[nodiscard]] std::vector<ProbePoint> points(std::size_t quotient_count) const {
    std::vector<ProbePoint> out;
    for (const auto& av : a_values) {
      if (quotient_count == 0) {
        out.push_back({av, {}});
        continue;
      }
      for (const auto& tv : tau_values) {
        ProbePoint p{av, {}};
        for (std::size_t j = 0; j < quotient_count; ++j) p.tau.push_back(tv + Rational(static_cast<long>(j)));
        out.push_back(std::move(p));
      }
    }
    return out;
  }
};

// ---------------------------------------------------------------------------
// Affine expressions in the symbolic quotients.

/// base + sum_j tau_j * parts[j].
template <class V>
struct Affine {
  V base;
  std::vector<V> parts;

  [[nodiscard]] V eval(const std::vector<Rational>& tau) const {
    if (tau.size() != parts.size())
      throw std::invalid_argument("probe supplies " + std::to_string(tau.size()) + " tau values, expression needs " +
                                  std::to_string(parts.size()));
    V out = base;
    for (std::size_t j = 0; j < parts.size(); ++j) out += parts[j] * tau[j];
    return out;
  }
};

using SymbolicMatrix = Affine<Matrix<Rational>>;
using SymbolicQ = Affine<MatPoly<Rational>>;

// ---------------------------------------------------------------------------
// Construction of Q_n.

/// Per-channel monic polynomials and norm coefficients up to a degree bound.
/// Immutable after construction.
class ChannelTables {
 public:
  ChannelTables(const FamilySpec& spec, long n_max) : spec_(spec) {
    const long top = spec.finite() ? std::min(n_max, spec.N() + 1) : n_max;
    for (const auto& ch : spec.channels()) {
      polys_.push_back(monic_sequence(ch, top));
      std::vector<Rational> coeffs;
      Rational acc = ch.finite() ? finite_total_mass(ch) : Rational(1);
      coeffs.push_back(acc);
      for (long k = 1; k <= top; ++k) {
        acc *= recurrence_c(ch, k);
        coeffs.push_back(acc);
      }
      norms_.push_back(std::move(coeffs));
    }
  }

  [[nodiscard]] const FamilySpec& spec() const { return spec_; }

  /// p_n of channel i; zero for n < 0.
  [[nodiscard]] Poly<Rational> poly(std::size_t i, long n) const {
    if (n < 0) return {};
    return polys_.at(i).at(static_cast<std::size_t>(n));
  }
  /// Rational part of ||p_n||^2 of channel i.
  [[nodiscard]] const Rational& norm(std::size_t i, long n) const {
    return norms_.at(i).at(static_cast<std::size_t>(n));
  }

  /// diag(p_n^{(1)}, ..., p_n^{(m)}).
  [[nodiscard]] MatPoly<Rational> diagonal(long n) const {
    std::vector<Poly<Rational>> d;
    for (std::size_t i = 0; i < spec_.m(); ++i) d.push_back(poly(i, n));
    return MatPoly<Rational>::diagonal(d);
  }

 private:
  FamilySpec spec_;
  std::vector<std::vector<Poly<Rational>>> polys_;
  std::vector<std::vector<Rational>> norms_;
};

inline void check_Q_degree(const FamilySpec& spec, long n) {
  if (n < 0) throw std::invalid_argument("construct_Q: n must be >= 0 (got " + std::to_string(n) + ")");
  if (spec.finite() && n > spec.N())
    throw std::invalid_argument("construct_Q: n must be <= N=" + std::to_string(spec.N()) + " (got " +
                                std::to_string(n) + ")");
}

/// S = ||P_n||^2 A^T ||P_{n-1}||^{-2}, affine in the symbolic quotients.
inline SymbolicMatrix norm_ratio_matrix(const ChannelTables& tab, long n) {
  const FamilySpec& spec = tab.spec();
  const auto quotients = symbolic_quotients(spec);
  SymbolicMatrix S{Matrix<Rational>(spec.m(), spec.m()),
                   std::vector<Matrix<Rational>>(quotients.size(), Matrix<Rational>(spec.m(), spec.m()))};
  if (n == 0) return S;
  std::size_t next = 0;
  for (std::size_t k = 0; k < spec.a().size(); ++k) {
    const auto [c, r] = nilpotent_position(k);
    const Rational v = spec.a()[k] * tab.norm(r, n) / tab.norm(c, n - 1);
    if (auto exact = exact_mass_ratio(spec, r, c)) {
      S.base(r, c) = v * *exact;
    } else {
      S.parts[next++](r, c) = v;
    }
  }
  return S;
}

/// Q_n = P_n + A P_{n+1} - P_n A x + S (P_{n-1} A x - P_{n-1}), with the
/// symbolic mass quotients kept as formal parameters.
inline SymbolicQ construct_Q(const ChannelTables& tab, long n) {
  const FamilySpec& spec = tab.spec();
  check_Q_degree(spec, n);
  const MatPoly<Rational> A(build_nilpotent(spec));
  const Poly<Rational> x = Poly<Rational>::x();
  const MatPoly<Rational> Pn = tab.diagonal(n);
  const MatPoly<Rational> Pm = tab.diagonal(n - 1);
  const MatPoly<Rational> tail = Pm * A * x - Pm;
  const SymbolicMatrix S = norm_ratio_matrix(tab, n);

  SymbolicQ q;
  q.base = Pn + A * tab.diagonal(n + 1) - Pn * A * x + S.base * tail;
  for (const auto& part : S.parts) q.parts.push_back(part * tail);
  return q;
}

inline SymbolicQ construct_Q(const FamilySpec& spec, long n) {
  return construct_Q(ChannelTables(spec, n + 1), n);
}

/// Q_n at one probe point.
inline MatPoly<Rational> construct_Q(const FamilySpec& spec, long n, const ProbePoint& probe) {
  return construct_Q(spec.scaled(probe.a_scale), n).eval(probe.tau);
}

/// Q_n with the true (floating) values of the mass quotients.
inline MatPoly<double> construct_Q_numeric(const FamilySpec& spec, const SymbolicQ& q) {
  const auto quotients = symbolic_quotients(spec);
  MatPoly<double> out = to_double(q.base);
  for (std::size_t j = 0; j < q.parts.size(); ++j) out += to_double(q.parts[j]) * quotients.at(j).value();
  return out;
}

/// True values of the symbolic quotients.
inline std::vector<double> true_tau(const FamilySpec& spec) {
  std::vector<double> out;
  for (const auto& q : symbolic_quotients(spec)) out.push_back(q.value());
  return out;
}

// ---------------------------------------------------------------------------
// Inner products.

struct GramMatrix {
  enum class Mode { exact, truncated };
  Mode mode = Mode::exact;
  Matrix<Rational> exact;
  Matrix<double> approx;
  long x_max = 0;
  double tol = 0.0;
  double tail = 0.0;  ///< largest last-term magnitude relative to the accumulated absolute sum

  [[nodiscard]] bool is_zero() const { return mode == Mode::exact ? exact.is_zero() : approx.is_zero(); }
};

struct TruncationPolicy {
  long x_max = 400;
  double tol = 1e-9;
};

/// <P, Q> = sum_x P(x) W(x) Q(x)^T over the finite support, exactly.
inline GramMatrix inner_product(const MatPoly<Rational>& P, const MatPoly<Rational>& Q, const FamilySpec& spec) {
  if (!spec.finite()) throw std::invalid_argument("inner_product: exact mode needs a finite support");
  Matrix<Rational> acc(P.rows(), Q.rows());
  for (long x = 0; x <= spec.N(); ++x) {
    const Rational xv(x);
    acc += P.eval(xv) * weight_matrix_eval(spec, x) * Q.eval(xv).transpose();
  }
  GramMatrix g;
  g.exact = std::move(acc);
  return g;
}

/// Truncated sum over x = 0..x_max in double precision. Throws
/// ConvergenceError when the last term is not negligible.
inline GramMatrix inner_product(const MatPoly<double>& P, const MatPoly<double>& Q, const FamilySpec& spec,
                                const TruncationPolicy& policy) {
  const long top = spec.finite() ? std::min(policy.x_max, spec.N()) : policy.x_max;
  Matrix<double> acc(P.rows(), Q.rows());
  Matrix<double> abs_acc(P.rows(), Q.rows());
  Matrix<double> last(P.rows(), Q.rows());
  for (long x = 0; x <= top; ++x) {
    const double xv = static_cast<double>(x);
    last = P.eval(xv) * weight_matrix_eval_double(spec, x) * Q.eval(xv).transpose();
    acc += last;
    for (std::size_t i = 0; i < last.rows(); ++i)
      for (std::size_t j = 0; j < last.cols(); ++j) abs_acc(i, j) += std::fabs(last(i, j));
  }
  GramMatrix g;
  g.mode = GramMatrix::Mode::truncated;
  g.x_max = policy.x_max;
  g.tol = policy.tol;
  const double scale = abs_acc.max_abs();
  g.tail = (spec.finite() || scale == 0.0) ? 0.0 : last.max_abs() / scale;
  if (!(g.tail <= policy.tol))
    throw ConvergenceError("inner_product: tail estimate " + std::to_string(g.tail) + " exceeds tolerance at x_max=" +
                           std::to_string(policy.x_max));
  g.approx = std::move(acc);
  return g;
}

/// Monic matrix orthogonal polynomials by exact block Gram-Schmidt on
/// I, I x, ..., I x^n. Entry k is the degree-k polynomial.
inline std::vector<MatPoly<Rational>> gram_schmidt_oracle(const FamilySpec& spec, long n) {
  if (!spec.finite()) throw std::invalid_argument("gram_schmidt_oracle: needs a finite support");
  if (n < 0 || n > spec.N())
    throw std::invalid_argument("gram_schmidt_oracle: need 0 <= n <= N (got " + std::to_string(n) + ")");
  std::vector<MatPoly<Rational>> basis;
  std::vector<Matrix<Rational>> inverse_norms;
  for (long k = 0; k <= n; ++k) {
    const MatPoly<Rational> xk = MatPoly<Rational>::identity(spec.m()) * Poly<Rational>::monomial(static_cast<int>(k), Rational(1));
    MatPoly<Rational> p = xk;
    for (std::size_t j = 0; j < basis.size(); ++j)
      p -= (inner_product(xk, basis[j], spec).exact * inverse_norms[j]) * basis[j];
    Matrix<Rational> h = inner_product(p, p, spec).exact;
    try {
      inverse_norms.push_back(inverse(h));
    } catch (const std::domain_error&) {
      throw std::logic_error("gram_schmidt_oracle: singular Gram matrix at degree " + std::to_string(k));
    }
    basis.push_back(std::move(p));
  }
  return basis;
}

}  // namespace mvop

#endif  // MVOP_FAMILY_HPP
