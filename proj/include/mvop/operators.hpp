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

#ifndef MVOP_OPERATORS_HPP
#define MVOP_OPERATORS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "family.hpp"

namespace mvop {

/// D = Delta F(x) + K(x) + Nabla G(x), acting on the right:
/// P . D = Delta(P) F + P K + Nabla(P) G.
///
/// Only first-order shifts on each side are represented; every operator
/// built here is of that form.
template <class T>
struct DifferenceOperator {
  MatPoly<T> F;
  MatPoly<T> K;
  MatPoly<T> G;

  friend bool operator==(const DifferenceOperator&, const DifferenceOperator&) = default;
};

template <class T>
MatPoly<T> apply_operator(const MatPoly<T>& P, const DifferenceOperator<T>& D) {
  if (P.cols() != D.F.rows())
    throw std::invalid_argument("apply_operator: polynomial has " + std::to_string(P.cols()) +
                                " columns, operator is " + std::to_string(D.F.rows()) + "x" +
                                std::to_string(D.F.rows()));
  return delta(P) * D.F + P * D.K + nabla(P) * D.G;
}

/// T(x) diag(delta_i) T(x)^{-1} for delta_i = Delta f_i + k_i - Nabla g_i, in
/// closed form:
///   Delta((I+A)F + [A,F]x) + A(F-G) + K + [A,K]x - Nabla((I-A)G + [A,G]x).
inline DifferenceOperator<Rational> conjugated_operator(const Matrix<Rational>& A, const MatPoly<Rational>& F,
                                                        const MatPoly<Rational>& K, const MatPoly<Rational>& G) {
  const std::size_t m = A.rows();
  const MatPoly<Rational> a(A);
  const MatPoly<Rational> I = MatPoly<Rational>::identity(m);
  const Poly<Rational> x = Poly<Rational>::x();
  auto comm = [&](const MatPoly<Rational>& X) { return a * X - X * a; };
  DifferenceOperator<Rational> D;
  D.F = (I + a) * F + comm(F) * x;
  D.K = a * (F - G) + K + comm(K) * x;
  D.G = -((I - a) * G + comm(G) * x);
  return D;
}

/// n -> diag(Lambda_n(delta_1), ..., Lambda_n(delta_m)), each entry a
/// polynomial in n.
struct EigenvalueMap {
  std::vector<Poly<Rational>> channels;

  [[nodiscard]] Matrix<Rational> at(long n) const {
    std::vector<Rational> d;
    for (const auto& c : channels) d.push_back(c(Rational(n)));
    return Matrix<Rational>::diagonal(d);
  }
};

struct CanonicalOperator {
  DifferenceOperator<Rational> D;
  EigenvalueMap Lambda;
  std::vector<ScalarOperator> channels;  ///< normalized and shifted per-channel operators
};

inline bool is_odd_channel(std::size_t i) { return i % 2 == 0; }  // 1-based odd

/// Normalized per-channel operators. Non-Hahn channels are scaled to
/// eigenvalue n and odd channels get +1; Hahn channels keep their operator and
/// even channels are shifted by -(alpha_1 + beta_1).
///
/// With enforce set, the Hahn parameter condition
/// alpha_i + beta_i = alpha_j + beta_j + 2 (i odd, j even) is checked.
inline std::vector<ScalarOperator> channel_operators(const FamilySpec& spec, bool enforce = true) {
  std::size_t hahn = 0;
  for (const auto& ch : spec.channels()) hahn += ch.kind() == FamilyKind::hahn ? 1 : 0;
  if (hahn != 0 && hahn != spec.m())
    throw SpecError("canonical operator: Hahn channels cannot be mixed with other families");

  std::vector<ScalarOperator> out;
  if (hahn != 0) {
    const auto sum = [&](std::size_t i) { return spec.channel(i).alpha() + spec.channel(i).beta(); };
    if (enforce)
      for (std::size_t i = 0; i < spec.m(); i += 2)
        for (std::size_t j = 1; j < spec.m(); j += 2)
          if (sum(i) != sum(j) + Rational(2))
            throw SpecError("canonical operator: Hahn condition alpha_i+beta_i = alpha_j+beta_j+2 fails for (i,j)=(" +
                            std::to_string(i + 1) + "," + std::to_string(j + 1) + "): " + sum(i).str() + " vs " +
                            sum(j).str() + "+2");
    for (std::size_t i = 0; i < spec.m(); ++i) {
      ScalarOperator op = scalar_operator(spec.channel(i));
      out.push_back(is_odd_channel(i) ? op : op.plus_constant(-sum(0)));
    }
    return out;
  }
  for (std::size_t i = 0; i < spec.m(); ++i) {
    const ScalarWeightSpec& ch = spec.channel(i);
    ScalarOperator op = scalar_operator(ch);
    op = ch.kind() == FamilyKind::meixner ? op.scaled(Rational(1) / (ch.c() - Rational(1))) : op.scaled(Rational(-1));
    out.push_back(is_odd_channel(i) ? op.plus_constant(Rational(1)) : op);
  }
  return out;
}

inline CanonicalOperator canonical_operator(const FamilySpec& spec, bool enforce = true) {
  CanonicalOperator c;
  c.channels = channel_operators(spec, enforce);
  std::vector<Poly<Rational>> f;
  std::vector<Poly<Rational>> k;
  std::vector<Poly<Rational>> g;
  for (const auto& op : c.channels) {
    f.push_back(op.f);
    k.push_back(op.k);
    g.push_back(op.g);
    c.Lambda.channels.push_back(op.eigenvalue);
  }
  c.D = conjugated_operator(build_nilpotent(spec), MatPoly<Rational>::diagonal(f), MatPoly<Rational>::diagonal(k),
                            MatPoly<Rational>::diagonal(g));
  return c;
}

/// Lambda_n(delta_i) = Lambda_{n+1}(delta_j) for odd i and even j.
inline bool eigenvalue_condition_holds(const EigenvalueMap& L, long n) {
  for (std::size_t i = 0; i < L.channels.size(); i += 2)
    for (std::size_t j = 1; j < L.channels.size(); j += 2)
      if (L.channels[i](Rational(n)) != L.channels[j](Rational(n + 1))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Verification reports.

/// First nonzero residual entry at one (n, probe).
struct CheckFailure {
  long n = 0;
  std::string probe;
  std::size_t row = 0;
  std::size_t col = 0;
  std::string residual;
};

struct CheckReport {
  std::string name;
  long checks = 0;
  std::vector<CheckFailure> failures;

  [[nodiscard]] bool passed() const { return failures.empty(); }
  [[nodiscard]] bool failed_at(long n) const {
    for (const auto& f : failures)
      if (f.n == n) return true;
    return false;
  }
};

namespace detail {
inline std::optional<CheckFailure> first_nonzero(const MatPoly<Rational>& R, long n, const std::string& probe) {
  for (std::size_t i = 0; i < R.rows(); ++i)
    for (std::size_t j = 0; j < R.cols(); ++j)
      if (!R(i, j).is_zero()) {
        std::string poly;
        for (int k = 0; k <= R(i, j).degree(); ++k)
          poly += (k ? " " : "") + R(i, j).coeff(k).str();
        return CheckFailure{n, probe, i + 1, j + 1, "[" + poly + "]"};
      }
  return std::nullopt;
}

inline std::optional<CheckFailure> first_nonzero(const Matrix<Rational>& R, long n, const std::string& probe) {
  return first_nonzero(MatPoly<Rational>(R), n, probe);
}
}  // namespace detail

using OperatorFactory = std::function<CanonicalOperator(const FamilySpec&)>;

/// Optional edit applied to each evaluated Q_n before it is checked; used to
/// plant deliberate corruption in negative-control runs.
using QHook = std::function<void(long n, MatPoly<Rational>& Q)>;

namespace detail {
inline MatPoly<Rational> probed_Q(const ChannelTables& tab, long n, const ProbePoint& probe, const QHook& hook) {
  MatPoly<Rational> Q = construct_Q(tab, n).eval(probe.tau);
  if (hook) hook(n, Q);
  return Q;
}
}  // namespace detail

/// Q_n . D - Lambda_n Q_n over the probe grid for n = 0..n_max. The operator
/// is rebuilt for each a-probe because it depends on A.
inline CheckReport verify_eigenfunction(const FamilySpec& spec, long n_max, const ProbeGrid& grid = {},
                                        const OperatorFactory& factory = {}, const QHook& hook = {}) {
  CheckReport rep{"eigenfunction", 0, {}};
  const auto make = factory ? factory : OperatorFactory([](const FamilySpec& s) { return canonical_operator(s); });
  const std::size_t nq = symbolic_quotients(spec).size();
  for (const auto& av : grid.a_values) {
    const FamilySpec s = spec.scaled(av);
    const CanonicalOperator op = make(s);
    const ChannelTables tab(s, n_max + 1);
    for (long n = 0; n <= n_max; ++n) {
      for (const auto& probe : grid.points(nq)) {
        if (probe.a_scale != av) continue;
        const MatPoly<Rational> Q = detail::probed_Q(tab, n, probe, hook);
        ++rep.checks;
        const MatPoly<Rational> R = apply_operator(Q, op.D) - op.Lambda.at(n) * Q;
        if (auto f = detail::first_nonzero(R, n, probe.describe())) rep.failures.push_back(*f);
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Three-term recurrence.

/// Q_n x = A Q_{n+1} + B Q_n + C Q_{n-1}.
template <class T>
struct RecurrenceTriple {
  Matrix<T> A;
  Matrix<T> B;
  Matrix<T> C;
};

/// Solves the recurrence by matching the coefficients of x^{n+1}, x^n and
/// x^{n-1}; pass an empty Qm for n = 0. Throws std::logic_error if the
/// remainder does not vanish.
template <class T>
RecurrenceTriple<T> recurrence_from(const MatPoly<T>& Qm, const MatPoly<T>& Q0, const MatPoly<T>& Qp, long n) {
  const int d = static_cast<int>(n);
  const std::size_t m = Q0.rows();
  RecurrenceTriple<T> r{Matrix<T>(m, m), Matrix<T>(m, m), Matrix<T>(m, m)};
  MatPoly<T> rem = Q0 * Poly<T>::x();
  r.A = rem.coeff(d + 1) * inverse(Qp.coeff(d + 1));
  rem -= r.A * Qp;
  r.B = rem.coeff(d) * inverse(Q0.coeff(d));
  rem -= r.B * Q0;
  if (n > 0) {
    r.C = rem.coeff(d - 1) * inverse(Qm.coeff(d - 1));
    rem -= r.C * Qm;
  }
  if constexpr (std::is_same_v<T, Rational>) {
    if (!rem.is_zero())
      throw std::logic_error("recurrence_from: remainder of degree " + std::to_string(rem.degree()) +
                             " does not vanish at n=" + std::to_string(n));
  }
  return r;
}

/// Recurrence coefficients of the family at one probe point. On a finite
/// support n ranges over 0..N-1.
inline RecurrenceTriple<Rational> extract_recurrence(const FamilySpec& spec, long n, const ProbePoint& probe = {}) {
  if (n < 0) throw std::invalid_argument("extract_recurrence: n must be >= 0");
  if (spec.finite() && n + 1 > spec.N())
    throw std::invalid_argument("extract_recurrence: need n <= N-1=" + std::to_string(spec.N() - 1) + " (got " +
                                std::to_string(n) + ")");
  const FamilySpec s = spec.scaled(probe.a_scale);
  const ChannelTables tab(s, n + 2);
  const MatPoly<Rational> Qm = n > 0 ? construct_Q(tab, n - 1).eval(probe.tau) : MatPoly<Rational>(s.m(), s.m());
  return recurrence_from(Qm, construct_Q(tab, n).eval(probe.tau), construct_Q(tab, n + 1).eval(probe.tau), n);
}

/// A_n Q_{n+1} + B_n Q_n + C_n Q_{n-1} - Q_n x over the probe grid.
inline CheckReport verify_recurrence(const FamilySpec& spec, long n_max, const ProbeGrid& grid = {},
                                     const QHook& hook = {}) {
  CheckReport rep{"recurrence", 0, {}};
  const long top = spec.finite() ? std::min(n_max, spec.N() - 1) : n_max;
  for (const auto& probe : grid.points(symbolic_quotients(spec).size())) {
    const FamilySpec s = spec.scaled(probe.a_scale);
    const ChannelTables tab(s, top + 2);
    for (long n = 0; n <= top; ++n) {
      ++rep.checks;
      const MatPoly<Rational> Qm = n > 0 ? detail::probed_Q(tab, n - 1, probe, hook) : MatPoly<Rational>(s.m(), s.m());
      const MatPoly<Rational> Q0 = detail::probed_Q(tab, n, probe, hook);
      const MatPoly<Rational> Qp = detail::probed_Q(tab, n + 1, probe, hook);
      try {
        const auto r = recurrence_from(Qm, Q0, Qp, n);
        const MatPoly<Rational> R = r.A * Qp + r.B * Q0 + r.C * Qm - Q0 * Poly<Rational>::x();
        if (auto f = detail::first_nonzero(R, n, probe.describe())) rep.failures.push_back(*f);
      } catch (const std::exception& e) {
        rep.failures.push_back({n, probe.describe(), 0, 0, e.what()});
      }
    }
  }
  return rep;
}

}  // namespace mvop

#endif  // MVOP_OPERATORS_HPP
