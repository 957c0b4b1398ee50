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

#ifndef MVOP_IO_HPP
#define MVOP_IO_HPP

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "limits.hpp"
#include "verify.hpp"

namespace mvop {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// JSON: algebra.

inline json to_json(const Rational& r) { return r.str(); }

/// Accepts "p/q" strings and JSON integers.
inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw SpecError("expected a rational \"p/q\" string, got " + j.dump());
}

inline json to_json(const Poly<Rational>& p) {
  json a = json::array();
  for (const auto& c : p.coefficients()) a.push_back(c.str());
  return a;
}

inline Poly<Rational> poly_from_json(const json& j) {
  std::vector<Rational> c;
  for (const auto& e : j) c.push_back(rational_from_json(e));
  return Poly<Rational>(std::move(c));
}

/// Rows of entries; each entry is its coefficient array, lowest power first.
inline json to_json(const MatPoly<Rational>& P) {
  json rows = json::array();
  for (std::size_t i = 0; i < P.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < P.cols(); ++j) row.push_back(to_json(P(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline MatPoly<Rational> matpoly_from_json(const json& j) {
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : j.at(0).size();
  MatPoly<Rational> P(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (j.at(i).size() != cols) throw SpecError("ragged matrix polynomial");
    for (std::size_t k = 0; k < cols; ++k) P(i, k) = poly_from_json(j.at(i).at(k));
  }
  return P;
}

inline json to_json(const Matrix<Rational>& M) {
  json rows = json::array();
  for (std::size_t i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < M.cols(); ++j) row.push_back(M(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix<Rational> matrix_from_json(const json& j) {
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : j.at(0).size();
  Matrix<Rational> M(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (j.at(i).size() != cols) throw SpecError("ragged matrix");
    for (std::size_t k = 0; k < cols; ++k) M(i, k) = rational_from_json(j.at(i).at(k));
  }
  return M;
}

inline json to_json(const MatPoly<double>& P) {
  json rows = json::array();
  for (std::size_t i = 0; i < P.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < P.cols(); ++j) row.push_back(P(i, j).coefficients());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline MatPoly<double> matpoly_double_from_json(const json& j) {
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : j.at(0).size();
  MatPoly<double> P(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k) P(i, k) = Poly<double>(j.at(i).at(k).get<std::vector<double>>());
  return P;
}

// ---------------------------------------------------------------------------
// JSON: specifications.

inline json to_json(const ScalarWeightSpec& s) {
  json j;
  j["kind"] = to_string(s.kind());
  switch (s.kind()) {
    case FamilyKind::charlier: j["b"] = s.b().str(); break;
    case FamilyKind::meixner:
      j["beta"] = s.beta().str();
      j["c"] = s.c().str();
      break;
    case FamilyKind::krawtchouk:
      j["p"] = s.p().str();
      j["N"] = s.N();
      break;
    case FamilyKind::hahn:
      j["alpha"] = s.alpha().str();
      j["beta"] = s.beta().str();
      j["N"] = s.N();
      break;
  }
  return j;
}

namespace detail {
inline const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw SpecError(where + ": missing field '" + key + "'");
  return j.at(key);
}
inline long integer_field(const json& j, const char* key, const std::string& where) {
  const json& v = field(j, key, where);
  if (v.is_number_integer()) return v.get<long>();
  const Rational r = rational_from_json(v);
  if (!r.is_integer()) throw SpecError(where + ": field '" + key + "' must be an integer");
  return r.to_long();
}
}  // namespace detail

inline ScalarWeightSpec weight_from_json(const json& j) {
  const std::string kind = detail::field(j, "kind", "weight").get<std::string>();
  const auto q = [&](const char* key) { return rational_from_json(detail::field(j, key, kind)); };
  if (kind == "charlier") return ScalarWeightSpec::charlier(q("b"));
  if (kind == "meixner") return ScalarWeightSpec::meixner(q("beta"), q("c"));
  if (kind == "krawtchouk") return ScalarWeightSpec::krawtchouk(q("p"), detail::integer_field(j, "N", kind));
  if (kind == "hahn") return ScalarWeightSpec::hahn(q("alpha"), q("beta"), detail::integer_field(j, "N", kind));
  throw SpecError("unknown weight kind '" + kind + "'");
}

inline json to_json(const FamilySpec& f) {
  json j;
  j["m"] = f.m();
  json a = json::array();
  for (const auto& v : f.a()) a.push_back(v.str());
  j["a"] = std::move(a);
  json ch = json::array();
  for (const auto& c : f.channels()) ch.push_back(to_json(c));
  j["channels"] = std::move(ch);
  return j;
}

inline FamilySpec family_from_json(const json& j) {
  std::vector<Rational> a;
  for (const auto& v : detail::field(j, "a", "family")) a.push_back(rational_from_json(v));
  std::vector<ScalarWeightSpec> ch;
  for (const auto& c : detail::field(j, "channels", "family")) ch.push_back(weight_from_json(c));
  if (j.contains("m") && detail::integer_field(j, "m", "family") != static_cast<long>(ch.size()))
    throw SpecError("family: m=" + j.at("m").dump() + " does not match " + std::to_string(ch.size()) + " channels");
  return FamilySpec(std::move(a), std::move(ch));
}

inline json to_json(const TransitionSpec& t) {
  json j;
  j["transition"] = to_string(t.transition);
  j["n"] = t.n;
  j["a"] = t.a.str();
  json p = json::object();
  for (const auto& [k, v] : t.params) p[k] = v.str();
  j["params"] = std::move(p);
  json l = json::array();
  for (const auto& v : t.ladder) l.push_back(v.str());
  j["ladder"] = std::move(l);
  return j;
}

/// Missing fields take the transition's defaults.
inline TransitionSpec transition_from_json(const json& j) {
  TransitionSpec t =
      TransitionSpec::defaults(parse_transition(detail::field(j, "transition", "transition").get<std::string>()));
  if (j.contains("n")) t.n = detail::integer_field(j, "n", "transition");
  if (j.contains("a")) t.a = rational_from_json(j.at("a"));
  if (j.contains("params"))
    for (const auto& [k, v] : j.at("params").items()) t.params[k] = rational_from_json(v);
  if (j.contains("ladder")) {
    t.ladder.clear();
    for (const auto& v : j.at("ladder")) t.ladder.push_back(rational_from_json(v));
  }
  return t;
}

// ---------------------------------------------------------------------------
// JSON: results.

inline json to_json(const SymbolicQ& q, long n) {
  json j;
  j["n"] = n;
  j["base"] = to_json(q.base);
  json parts = json::array();
  for (const auto& p : q.parts) parts.push_back(to_json(p));
  j["tau_parts"] = std::move(parts);
  return j;
}

inline SymbolicQ symbolic_q_from_json(const json& j) {
  SymbolicQ q;
  q.base = matpoly_from_json(j.at("base"));
  for (const auto& p : j.at("tau_parts")) q.parts.push_back(matpoly_from_json(p));
  return q;
}

inline json to_json(const MassQuotient& q) {
  return json{{"a_index", q.k + 1}, {"row", q.row + 1}, {"col", q.col + 1}, {"symbol", q.symbol}, {"value", q.value()}};
}

inline json to_json(const DifferenceOperator<Rational>& D) {
  return json{{"F", to_json(D.F)}, {"K", to_json(D.K)}, {"G", to_json(D.G)}};
}

inline DifferenceOperator<Rational> operator_from_json(const json& j) {
  return {matpoly_from_json(j.at("F")), matpoly_from_json(j.at("K")), matpoly_from_json(j.at("G"))};
}

/// Per-channel eigenvalue polynomials in n plus their values for n = 0..n_max.
inline json to_json(const EigenvalueMap& L, long n_max) {
  json j;
  json ch = json::array();
  for (const auto& p : L.channels) ch.push_back(to_json(p));
  j["channels"] = std::move(ch);
  json vals = json::array();
  for (long n = 0; n <= n_max; ++n) {
    json d = json::array();
    for (const auto& p : L.channels) d.push_back(p(Rational(n)).str());
    vals.push_back(std::move(d));
  }
  j["diagonal"] = std::move(vals);
  return j;
}

inline EigenvalueMap eigenvalues_from_json(const json& j) {
  EigenvalueMap L;
  for (const auto& p : j.at("channels")) L.channels.push_back(poly_from_json(p));
  return L;
}

inline json to_json(const RecurrenceTriple<Rational>& r) {
  return json{{"A", to_json(r.A)}, {"B", to_json(r.B)}, {"C", to_json(r.C)}};
}

inline json to_json(const ProbeGrid& g) {
  json a = json::array();
  for (const auto& v : g.a_values) a.push_back(v.str());
  json t = json::array();
  for (const auto& v : g.tau_values) t.push_back(v.str());
  return json{{"a_scale", std::move(a)}, {"tau", std::move(t)}};
}

inline json to_json(const CheckReport& r) {
  json j{{"name", r.name}, {"checks", r.checks}, {"passed", r.passed()}};
  json f = json::array();
  for (const auto& x : r.failures)
    f.push_back(json{{"n", x.n}, {"probe", x.probe}, {"entry", json::array({x.row, x.col})}, {"residual", x.residual}});
  j["failures"] = std::move(f);
  return j;
}

namespace detail {
/// Shortest decimal that round-trips; keeps files byte-stable.
inline std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  std::string s = os.str();
  for (int p = 1; p <= 17; ++p) {
    std::ostringstream t;
    t << std::setprecision(p) << v;
    if (std::stod(t.str()) == v) return t.str();
  }
  return s;
}
}  // namespace detail

inline json to_json(const TruncatedReport& r) {
  json j{{"n_max", r.n_max},
         {"x_max", r.policy.x_max},
         {"tol", r.policy.tol},
         {"max_relative", r.max_relative},
         {"worst_pair", json::array({r.worst_n, r.worst_k})},
         {"max_tail", r.max_tail},
         {"passed", r.passed()}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

inline json to_json(const VerifyReport& r) {
  json j;
  j["family"] = to_json(r.spec);
  j["n_max"] = r.n_max;
  j["probe_grid"] = to_json(r.grid);
  json q = json::array();
  for (const auto& x : r.quotients) q.push_back(to_json(x));
  j["mass_quotients"] = std::move(q);
  if (r.orthogonality) j["orthogonality"] = to_json(*r.orthogonality);
  if (r.truncated) j["truncated_orthogonality"] = to_json(*r.truncated);
  if (r.eigenfunction)
    j["eigenfunction"] = to_json(*r.eigenfunction);
  else
    j["eigenfunction"] = json{{"skipped", r.eigenfunction_skipped}};
  j["recurrence"] = to_json(r.recurrence);
  j["passed"] = r.passed();
  return j;
}

inline json to_json(const ConvergenceReport& r) {
  json j;
  j["transition"] = to_string(r.transition);
  j["ladder_parameter"] = r.ladder_parameter;
  j["n"] = r.n;
  j["a"] = r.a.str();
  j["precision"] = r.precision;
  json steps = json::array();
  for (const auto& s : r.steps) {
    json e{{"value", s.value.str()}, {"error", s.error}, {"relative_error", s.relative_error}};
    if (s.extra) e[r.extra_label] = *s.extra;
    steps.push_back(std::move(e));
  }
  j["steps"] = std::move(steps);
  if (!r.extra_label.empty()) {
    j["extra_label"] = r.extra_label;
    if (r.extra_limit) j["extra_limit"] = *r.extra_limit;
  }
  j["monotone"] = r.monotone();
  j["target"] = to_json(r.target);
  return j;
}

inline ConvergenceReport convergence_from_json(const json& j) {
  ConvergenceReport r;
  r.transition = parse_transition(j.at("transition").get<std::string>());
  r.ladder_parameter = j.at("ladder_parameter").get<std::string>();
  r.n = j.at("n").get<long>();
  r.a = rational_from_json(j.at("a"));
  r.precision = j.at("precision").get<std::string>();
  if (j.contains("extra_label")) r.extra_label = j.at("extra_label").get<std::string>();
  if (j.contains("extra_limit")) r.extra_limit = j.at("extra_limit").get<double>();
  for (const auto& e : j.at("steps")) {
    LadderStep s{rational_from_json(e.at("value")), e.at("error").get<double>(), e.at("relative_error").get<double>(),
                 std::nullopt};
    if (!r.extra_label.empty() && e.contains(r.extra_label)) s.extra = e.at(r.extra_label).get<double>();
    r.steps.push_back(std::move(s));
  }
  r.target = matpoly_double_from_json(j.at("target"));
  return r;
}

/// ladder,error,error_ratio[,extra]; error_ratio is error_k / error_{k-1}.
inline std::string to_csv(const ConvergenceReport& r) {
  std::ostringstream os;
  os << r.ladder_parameter << ",error,error_ratio";
  if (!r.extra_label.empty()) os << "," << r.extra_label;
  os << "\n";
  for (std::size_t i = 0; i < r.steps.size(); ++i) {
    const auto& s = r.steps[i];
    os << s.value.str() << "," << detail::format_double(s.error) << ",";
    if (i > 0 && r.steps[i - 1].error != 0.0) os << detail::format_double(s.error / r.steps[i - 1].error);
    if (!r.extra_label.empty()) os << "," << (s.extra ? detail::format_double(*s.extra) : "");
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// LaTeX.

namespace detail {

inline std::string latex_rational(const Rational& r) {
  if (r.is_integer()) return r.str();
  const std::string num = r.numerator().get_str();
  const std::string den = r.denominator().get_str();
  if (r.sign() < 0) return "-\\frac{" + num.substr(1) + "}{" + den + "}";
  return "\\frac{" + num + "}{" + den + "}";
}

inline std::string latex_power(const std::string& var, int k) {
  if (k == 0) return "";
  if (k == 1) return var;
  return var + "^{" + std::to_string(k) + "}";
}

/// A sum of monomials c * sym^k * x^j with the terms already ordered.
struct Term {
  Rational coeff;
  std::string symbols;  ///< product of symbolic factors, e.g. "a^{2}\\tau_1"
  int x_power = 0;
};

inline std::string latex_sum(const std::vector<Term>& terms, const std::string& var = "x") {
  std::string out;
  for (const auto& t : terms) {
    if (t.coeff.is_zero()) continue;
    const bool negative = t.coeff.sign() < 0;
    const Rational mag = negative ? -t.coeff : t.coeff;
    const std::string sep = !t.symbols.empty() && t.x_power > 0 ? " " : "";
    std::string body = t.symbols + sep + latex_power(var, t.x_power);
    std::string c = (mag == Rational(1) && !body.empty()) ? "" : latex_rational(mag);
    if (!out.empty())
      out += negative ? " - " : " + ";
    else if (negative)
      out += "-";
    out += c + body;
  }
  return out.empty() ? "0" : out;
}

}  // namespace detail

inline std::string to_latex(const Poly<Rational>& p, const std::string& var = "x") {
  std::vector<detail::Term> terms;
  for (int k = p.degree(); k >= 0; --k) terms.push_back({p.coeff(k), "", k});
  return detail::latex_sum(terms, var);
}

/// Entries written as polynomials in x and the given symbolic factors:
/// entry(i,j) = sum_s symbol_s * parts[s](i,j).
inline std::string to_latex_pmatrix(const std::vector<std::pair<std::string, MatPoly<Rational>>>& parts) {
  const std::size_t rows = parts.front().second.rows();
  const std::size_t cols = parts.front().second.cols();
  std::string out = "\\begin{pmatrix}\n";
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      std::vector<detail::Term> terms;
      for (const auto& [sym, P] : parts)
        for (int k = P(i, j).degree(); k >= 0; --k) terms.push_back({P(i, j).coeff(k), sym, k});
      out += detail::latex_sum(terms);
      out += j + 1 < cols ? " & " : "";
    }
    out += i + 1 < rows ? " \\\\\n" : "\n";
  }
  return out + "\\end{pmatrix}";
}

inline std::string to_latex(const MatPoly<Rational>& P) { return to_latex_pmatrix({{"", P}}); }

/// Q_n written with the nilpotent parameter a as a symbol (m = 2) and the
/// symbolic mass quotients as tau_1, tau_2, ...
inline std::string q_to_latex(const FamilySpec& spec, long n) {
  std::vector<std::pair<std::string, MatPoly<Rational>>> parts;
  const std::size_t nq = symbolic_quotients(spec).size();
  const auto tau_name = [&](std::size_t j) { return nq == 1 ? std::string("\\tau") : "\\tau_{" + std::to_string(j + 1) + "}"; };
  if (spec.m() == 2) {
    const auto build = [&](long av) { return construct_Q(FamilySpec({Rational(av)}, spec.channels()), n); };
    const SymbolicQ qp = build(1);
    const SymbolicQ qm = build(-1);
    const SymbolicQ q2 = build(2);
    const auto split = [&](const MatPoly<Rational>& p1, const MatPoly<Rational>& m1, const MatPoly<Rational>& p2,
                           const std::string& extra) {
      const MatPoly<Rational> c1 = (p1 - m1) * Rational(1, 2);
      const MatPoly<Rational> even = (p1 + m1) * Rational(1, 2);
      const MatPoly<Rational> c2 = (p2 - c1 * Rational(2) - even) * Rational(1, 3);
      parts.emplace_back(extra, even - c2);
      parts.emplace_back("a" + extra, c1);
      parts.emplace_back("a^{2}" + extra, c2);
    };
    split(qp.base, qm.base, q2.base, "");
    for (std::size_t j = 0; j < qp.parts.size(); ++j) split(qp.parts[j], qm.parts[j], q2.parts[j], tau_name(j));
  } else {
    const SymbolicQ q = construct_Q(spec, n);
    parts.emplace_back("", q.base);
    for (std::size_t j = 0; j < q.parts.size(); ++j) parts.emplace_back(tau_name(j), q.parts[j]);
  }
  return "Q_{" + std::to_string(n) + "}(x) = " + to_latex_pmatrix(parts);
}

inline std::string to_latex(const DifferenceOperator<Rational>& D) {
  return "D = \\Delta " + to_latex(D.F) + "\n + " + to_latex(D.K) + "\n + \\nabla " + to_latex(D.G);
}

inline std::string to_latex(const EigenvalueMap& L) {
  std::string out = "\\Lambda_n = \\operatorname{diag}\\left(";
  for (std::size_t i = 0; i < L.channels.size(); ++i) out += (i ? ", " : "") + to_latex(L.channels[i], "n");
  return out + "\\right)";
}

}  // namespace mvop

#endif  // MVOP_IO_HPP
