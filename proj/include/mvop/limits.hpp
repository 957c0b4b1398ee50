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

#ifndef MVOP_LIMITS_HPP
#define MVOP_LIMITS_HPP

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "family.hpp"
#include "parallel.hpp"

namespace mvop {

enum class Transition {
  krawtchouk_charlier,
  krawtchouk_hermite,
  charlier_hermite,
  meixner_charlier,
  meixner_laguerre,
  hahn_meixner,
  hahn_krawtchouk,
};

inline const std::vector<Transition>& all_transitions() {
  static const std::vector<Transition> all{
      Transition::krawtchouk_charlier, Transition::krawtchouk_hermite, Transition::charlier_hermite,
      Transition::meixner_charlier,    Transition::meixner_laguerre,   Transition::hahn_meixner,
      Transition::hahn_krawtchouk};
  return all;
}

inline std::string to_string(Transition t) {
  switch (t) {
    case Transition::krawtchouk_charlier: return "krawtchouk->charlier";
    case Transition::krawtchouk_hermite: return "krawtchouk->hermite";
    case Transition::charlier_hermite: return "charlier->hermite";
    case Transition::meixner_charlier: return "meixner->charlier";
    case Transition::meixner_laguerre: return "meixner->laguerre";
    case Transition::hahn_meixner: return "hahn->meixner";
    case Transition::hahn_krawtchouk: return "hahn->krawtchouk";
  }
  return "?";
}

/// Accepts "source->target" and "source→target".
inline Transition parse_transition(std::string name) {
  const std::string arrow = "\xE2\x86\x92";
  if (const auto pos = name.find(arrow); pos != std::string::npos) name.replace(pos, arrow.size(), "->");
  for (auto t : all_transitions())
    if (to_string(t) == name) return t;
  throw SpecError("unknown transition '" + name + "'");
}

/// Name of the parameter that runs along the ladder.
inline std::string ladder_parameter(Transition t) {
  switch (t) {
    case Transition::krawtchouk_charlier:
    case Transition::krawtchouk_hermite:
    case Transition::hahn_meixner: return "N";
    case Transition::charlier_hermite: return "b";
    case Transition::meixner_charlier: return "beta";
    case Transition::meixner_laguerre: return "c";
    case Transition::hahn_krawtchouk: return "t";
  }
  return "?";
}

struct TransitionSpec {
  Transition transition = Transition::krawtchouk_charlier;
  long n = 2;
  Rational a{1};
  std::map<std::string, Rational> params;
  std::vector<Rational> ladder;

  /// The parameter set used when a spec file leaves fields out.
  static TransitionSpec defaults(Transition t) {
    TransitionSpec s;
    s.transition = t;
    const auto r = [](long p, long q = 1) { return Rational(p, q); };
    switch (t) {
      case Transition::krawtchouk_charlier:
        s.params = {{"b", r(2)}};
        s.ladder = {r(100), r(1000), r(10000)};
        break;
      case Transition::krawtchouk_hermite:
        s.params = {{"p", r(1, 2)}};
        s.ladder = {r(100), r(1000), r(10000)};
        break;
      case Transition::charlier_hermite:
        s.n = 1;
        s.ladder = {r(1000), r(100000), r(10000000)};
        break;
      case Transition::meixner_charlier:
        s.n = 1;
        s.params = {{"b", r(1)}};
        s.ladder = {r(100), r(1000), r(10000)};
        break;
      case Transition::meixner_laguerre:
        s.params = {{"alpha", r(1, 2)}};
        s.ladder = {r(9, 10), r(99, 100), r(999, 1000)};
        break;
      case Transition::hahn_meixner:
        s.params = {{"beta", r(1)}, {"c", r(1, 2)}};
        s.ladder = {r(100), r(400), r(1600)};
        break;
      case Transition::hahn_krawtchouk:
        s.n = 1;
        s.params = {{"p", r(1, 2)}, {"N", r(4)}};
        s.ladder = {r(10), r(100), r(1000)};
        break;
    }
    return s;
  }

  [[nodiscard]] const Rational& param(const std::string& key) const {
    const auto it = params.find(key);
    if (it == params.end()) throw SpecError(to_string(transition) + ": missing parameter '" + key + "'");
    return it->second;
  }

  /// Ladder shape and fixed-parameter checks; per-step constraints are
  /// checked by the family factories when each step runs.
  void validate() const {
    const std::string name = to_string(transition);
    if (n < 0) throw SpecError(name + ": degree n must be >= 0");
    if (a.is_zero()) throw SpecError(name + ": a must be nonzero");
    if (ladder.size() < 2)
      throw SpecError(name + ": ladder needs at least 2 steps to judge monotone convergence (got " +
                      std::to_string(ladder.size()) + ")");
    for (std::size_t i = 1; i < ladder.size(); ++i)
      if (!(ladder[i] > ladder[i - 1]))
        throw SpecError(name + ": ladder must be strictly increasing toward the limit (step " + std::to_string(i + 1) +
                        ")");
    const std::string lp = ladder_parameter(transition);
    if (lp == "N")
      for (const auto& v : ladder)
        if (!v.is_integer()) throw SpecError(name + ": ladder values of N must be integers (got " + v.str() + ")");
    if (transition == Transition::meixner_laguerre)
      for (const auto& v : ladder)
        if (!(v < Rational(1))) throw SpecError(name + ": ladder values of c must be < 1 (got " + v.str() + ")");
    if (transition == Transition::hahn_krawtchouk && !param("N").is_integer())
      throw SpecError(name + ": N must be an integer");
    if (transition == Transition::hahn_meixner)
      for (const auto& v : ladder)
        if (v > Rational(2000))
          throw SpecError(name + ": ladder capped at N=2000 (large-N Hahn recurrences lose conditioning)");
  }
};

// ---------------------------------------------------------------------------
// Continuous targets.

enum class ContinuousKind { hermite, laguerre };

/// Monic Hermite h_0..h_{count-1}: x h_n = h_{n+1} + (n/2) h_{n-1}.
inline std::vector<Poly<Rational>> hermite_sequence(long count) {
  return monic_from_recurrence([](long) { return Rational(0); }, [](long n) { return Rational(n, 2); }, count);
}

/// Monic Laguerre: x l_n = l_{n+1} + (2n+alpha+1) l_n + n(n+alpha) l_{n-1}.
inline std::vector<Poly<Rational>> laguerre_sequence(const Rational& alpha, long count) {
  return monic_from_recurrence([&](long n) { return Rational(2 * n + 1) + alpha; },
                               [&](long n) { return Rational(n) * (Rational(n) + alpha); }, count);
}

/// [[q_n, a(q_{n+1} - x q_n)], [-a k_n q_{n-1}, a^2 k_n x q_{n-1} + q_n]] with
/// k_n = n/2 (Hermite) or n(n+alpha) (Laguerre).
inline MatPoly<Rational> continuous_target(ContinuousKind kind, long n, const Rational& a,
                                           const Rational& alpha = Rational(0)) {
  const auto q = kind == ContinuousKind::hermite ? hermite_sequence(n + 2) : laguerre_sequence(alpha, n + 2);
  const Rational k = kind == ContinuousKind::hermite ? Rational(n, 2) : Rational(n) * (Rational(n) + alpha);
  const Poly<Rational> x = Poly<Rational>::x();
  const Poly<Rational> prev = n > 0 ? q[static_cast<std::size_t>(n - 1)] : Poly<Rational>();
  const auto& cur = q[static_cast<std::size_t>(n)];
  MatPoly<Rational> P(2, 2);
  P(0, 0) = cur;
  P(0, 1) = (q[static_cast<std::size_t>(n + 1)] - x * cur) * a;
  P(1, 0) = prev * (-a * k);
  P(1, 1) = x * prev * (a * a * k) + cur;
  return P;
}

/// Residual of the second-order differential equation of the target:
///   Hermite:  P'' + P'[[-2x,2a],[0,-2x]] + P[[0,0],[0,2]] - diag(-2n,-2n+2) P
///   Laguerre: P'' x + P'[[alpha+1-x,2ax],[0,alpha+1-x]] + P[[0,a(alpha+1)],[0,1]] - diag(-n,-n+1) P
inline MatPoly<Rational> continuous_ode_residual(ContinuousKind kind, long n, const Rational& a,
                                                 const Rational& alpha = Rational(0)) {
  using P = Poly<Rational>;
  const MatPoly<Rational> Pn = continuous_target(kind, n, a, alpha);
  const MatPoly<Rational> d1 = derivative(Pn);
  const MatPoly<Rational> d2 = derivative(d1);
  const P x = P::x();
  MatPoly<Rational> c1(2, 2);
  MatPoly<Rational> c0(2, 2);
  std::vector<Rational> lam;
  if (kind == ContinuousKind::hermite) {
    c1(0, 0) = x * Rational(-2);
    c1(0, 1) = P(a * Rational(2));
    c1(1, 1) = x * Rational(-2);
    c0(1, 1) = P(Rational(2));
    lam = {Rational(-2 * n), Rational(-2 * n + 2)};
    return d2 + d1 * c1 + Pn * c0 - Matrix<Rational>::diagonal(lam) * Pn;
  }
  const P diag = P(alpha + Rational(1)) - x;
  c1(0, 0) = diag;
  c1(0, 1) = x * (a * Rational(2));
  c1(1, 1) = diag;
  c0(0, 1) = P(a * (alpha + Rational(1)));
  c0(1, 1) = P(Rational(1));
  lam = {Rational(-n), Rational(-n + 1)};
  return d2 * x + d1 * c1 + Pn * c0 - Matrix<Rational>::diagonal(lam) * Pn;
}

// ---------------------------------------------------------------------------
// Convergence reports.

struct LadderStep {
  Rational value;
  double error = 0.0;           ///< max |coefficient difference|
  double relative_error = 0.0;  ///< error / max |target coefficient|
  std::optional<double> extra;  ///< auxiliary column (e.g. mu_n), when the transition has one
};

struct ConvergenceReport {
  Transition transition = Transition::krawtchouk_charlier;
  std::string ladder_parameter;
  long n = 0;
  Rational a{1};
  std::string precision;  ///< "exact" or "double"
  std::vector<LadderStep> steps;
  MatPoly<double> target;
  std::string extra_label;
  std::optional<double> extra_limit;

  [[nodiscard]] bool monotone() const {
    for (std::size_t i = 1; i < steps.size(); ++i)
      if (!(steps[i].error < steps[i - 1].error)) return false;
    return steps.size() >= 2;
  }
  [[nodiscard]] double final_error() const { return steps.empty() ? 0.0 : steps.back().error; }
};

namespace detail {

/// Q(a) = c0 + a c1 + a^2 c2, recovered exactly from three values of a.
struct APoly {
  MatPoly<Rational> c0;
  MatPoly<Rational> c1;
  MatPoly<Rational> c2;
};

template <class Build>
APoly a_decomposition(Build&& build, long n) {
  const auto q = [&](long av) { return construct_Q(build(Rational(av)), n).eval({}); };
  const MatPoly<Rational> qp = q(1);
  const MatPoly<Rational> qm = q(-1);
  const MatPoly<Rational> q2 = q(2);
  APoly r;
  r.c1 = (qp - qm) * Rational(1, 2);
  const MatPoly<Rational> even = (qp + qm) * Rational(1, 2);
  r.c2 = (q2 - r.c1 * Rational(2) - even) * Rational(1, 3);
  r.c0 = even - r.c2;
  return r;
}

inline double coefficient_error(const MatPoly<double>& src, const MatPoly<double>& target) {
  return max_abs_coefficient(src - target);
}

inline Matrix<double> upper_unipotent(double v) { return Matrix<double>{{1.0, v}, {0.0, 1.0}}; }

/// prefactor * Q_n^{a_tilde}(shift + scale x) * [[1, m12],[0,1]], with the
/// shift applied exactly before rounding.
inline MatPoly<double> normalized_source(const APoly& parts, const Rational& shift_by, double scale, double a_tilde,
                                         double prefactor, double m12) {
  const auto prep = [&](const MatPoly<Rational>& p) { return scale_argument(to_double(shift(p, shift_by)), scale); };
  MatPoly<double> q = prep(parts.c0) + prep(parts.c1) * a_tilde + prep(parts.c2) * (a_tilde * a_tilde);
  return (q * prefactor) * upper_unipotent(m12);
}

inline FamilySpec pair(const Rational& a, const ScalarWeightSpec& w1, const ScalarWeightSpec& w2) {
  return FamilySpec({a}, {w1, w2});
}

}  // namespace detail

/// Runs the ladder of one transition and measures the coefficient error
/// against the target after the transition's rescaling.
inline ConvergenceReport run_transition(const TransitionSpec& t) {
  t.validate();
  ConvergenceReport rep;
  rep.transition = t.transition;
  rep.ladder_parameter = ladder_parameter(t.transition);
  rep.n = t.n;
  rep.a = t.a;
  const long n = t.n;
  const Rational one(1);

  std::optional<MatPoly<Rational>> exact_target;
  switch (t.transition) {
    case Transition::krawtchouk_charlier:
    case Transition::meixner_charlier: {
      const auto w = ScalarWeightSpec::charlier(t.param("b"));
      exact_target = construct_Q(detail::pair(t.a, w, w), n).eval({});
      break;
    }
    case Transition::krawtchouk_hermite:
    case Transition::charlier_hermite: exact_target = continuous_target(ContinuousKind::hermite, n, t.a); break;
    case Transition::meixner_laguerre:
      exact_target = continuous_target(ContinuousKind::laguerre, n, t.a, t.param("alpha"));
      break;
    case Transition::hahn_meixner: {
      const Rational& be = t.param("beta");
      const Rational& c = t.param("c");
      exact_target = construct_Q(detail::pair(t.a, ScalarWeightSpec::meixner(be + Rational(2), c),
                                              ScalarWeightSpec::meixner(be, c)),
                                 n)
                         .eval({});
      break;
    }
    case Transition::hahn_krawtchouk: {
      const auto w = ScalarWeightSpec::krawtchouk(t.param("p"), t.param("N").to_long());
      exact_target = construct_Q(detail::pair(t.a, w, w), n).eval({});
      const Rational& p = t.param("p");
      const long N = t.param("N").to_long();
      rep.extra_label = "mu_n";
      rep.extra_limit = (Rational(n * (N + 1 - n)) * p * (one - p)).to_double();
      break;
    }
  }
  rep.target = to_double(*exact_target);
  const double target_scale = std::max(max_abs_coefficient(rep.target), 1e-300);
  const bool hermite = t.transition == Transition::krawtchouk_hermite || t.transition == Transition::charlier_hermite;
  rep.precision = hermite ? "double" : "exact";

  const auto step = [&](std::size_t i) -> LadderStep {
    const Rational& v = t.ladder[i];
    LadderStep s{v, 0.0, 0.0, std::nullopt};
    if (!hermite) {
      MatPoly<Rational> src;
      switch (t.transition) {
        case Transition::krawtchouk_charlier: {
          const long N = v.to_long();
          const auto w = ScalarWeightSpec::krawtchouk(t.param("b") / v, N);
          src = construct_Q(detail::pair(t.a, w, w), n).eval({});
          break;
        }
        case Transition::meixner_charlier: {
          const Rational& b = t.param("b");
          const auto w = ScalarWeightSpec::meixner(v, b / (b + v));
          src = construct_Q(detail::pair(t.a, w, w), n).eval({});
          break;
        }
        case Transition::meixner_laguerre: {
          const Rational oc = one - v;
          const auto w = ScalarWeightSpec::meixner(t.param("alpha") + one, v);
          const MatPoly<Rational> q = construct_Q(detail::pair(t.a * oc, w, w), n).eval({});
          src = scale_argument(q, one / oc) * pow(oc, n);
          break;
        }
        case Transition::hahn_meixner: {
          const long N = v.to_long();
          const Rational& be = t.param("beta");
          const Rational& c = t.param("c");
          const Rational gam = v * (one - c) / c;
          src = construct_Q(detail::pair(t.a, ScalarWeightSpec::hahn(be + one, gam, N),
                                         ScalarWeightSpec::hahn(be - one, gam, N)),
                            n)
                    .eval({});
          break;
        }
        case Transition::hahn_krawtchouk: {
          const Rational& p = t.param("p");
          const long N = t.param("N").to_long();
          const auto spec = detail::pair(t.a, ScalarWeightSpec::hahn(p * v, (one - p) * v, N),
                                         ScalarWeightSpec::hahn(p * (v + Rational(2)), (one - p) * (v + Rational(2)), N));
          const ChannelTables tab(spec, n + 1);
          src = construct_Q(tab, n).eval({});
          if (n > 0) s.extra = (tab.norm(1, n) / tab.norm(0, n - 1)).to_double();
          break;
        }
        default: break;
      }
      s.error = max_abs_coefficient(src - *exact_target);
    } else if (t.transition == Transition::krawtchouk_hermite) {
      const long N = v.to_long();
      const Rational& p = t.param("p");
      const auto build = [&](const Rational& av) {
        const auto w = ScalarWeightSpec::krawtchouk(p, N);
        return detail::pair(av, w, w);
      };
      const double pq = (p * (one - p)).to_double();
      const double scale = std::sqrt(2.0 * static_cast<double>(N) * pq);
      const double at = t.a.to_double() / scale;
      const double pref = std::exp(0.5 * (std::lgamma(static_cast<double>(N - n) + 1.0) -
                                          std::lgamma(static_cast<double>(N) + 1.0) -
                                          static_cast<double>(n) * std::log(2.0 * pq)));
      const MatPoly<double> src = detail::normalized_source(detail::a_decomposition(build, n), p * Rational(N), scale,
                                                            at, pref, at * (p * Rational(N)).to_double());
      s.error = detail::coefficient_error(src, rep.target);
    } else {
      const auto build = [&](const Rational& av) {
        const auto w = ScalarWeightSpec::charlier(v);
        return detail::pair(av, w, w);
      };
      const double b = v.to_double();
      const double scale = std::sqrt(2.0 * b);
      const double at = t.a.to_double() / scale;
      const double pref = std::pow(2.0 * b, -0.5 * static_cast<double>(n));
      const MatPoly<double> src =
          detail::normalized_source(detail::a_decomposition(build, n), v, scale, at, pref, at * b);
      s.error = detail::coefficient_error(src, rep.target);
    }
    s.relative_error = s.error / target_scale;
    return s;
  };
  rep.steps = parallel_map<LadderStep>(t.ladder.size(), step);
  return rep;
}

/// Krawtchouk (p = 1/2) or Charlier source converging to the matrix Hermite
/// polynomials of degree n.
inline ConvergenceReport hermite_limit_agreement(Transition source, long n, const Rational& a = Rational(1)) {
  if (source != Transition::krawtchouk_hermite && source != Transition::charlier_hermite)
    throw SpecError("hermite_limit_agreement: source must be krawtchouk->hermite or charlier->hermite");
  TransitionSpec t = TransitionSpec::defaults(source);
  t.n = n;
  t.a = a;
  return run_transition(t);
}

/// Largest coefficient distance between the targets of two reports.
inline double target_distance(const ConvergenceReport& x, const ConvergenceReport& y) {
  return max_abs_coefficient(x.target - y.target);
}

}  // namespace mvop

#endif  // MVOP_LIMITS_HPP
