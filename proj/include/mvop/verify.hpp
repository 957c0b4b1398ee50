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

#ifndef MVOP_VERIFY_HPP
#define MVOP_VERIFY_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "operators.hpp"
#include "parallel.hpp"

namespace mvop {

/// <Q_n, Q_k> = 0 exactly for 0 <= n != k <= N, at every a-probe.
inline CheckReport verify_orthogonality_exact(const FamilySpec& spec, const ProbeGrid& grid = {},
                                              const QHook& hook = {}) {
  if (!spec.finite()) throw std::invalid_argument("verify_orthogonality_exact: needs a finite support");
  CheckReport rep{"orthogonality", 0, {}};
  const long N = spec.N();
  const auto probes = grid.points(symbolic_quotients(spec).size());
  const auto per_probe = parallel_map<CheckReport>(probes.size(), [&](std::size_t p) {
    CheckReport part{"orthogonality", 0, {}};
    const ProbePoint& probe = probes[p];
    const ChannelTables tab(spec.scaled(probe.a_scale), N + 1);
    std::vector<MatPoly<Rational>> Q;
    for (long n = 0; n <= N; ++n) Q.push_back(detail::probed_Q(tab, n, probe, hook));
    for (long n = 0; n <= N; ++n)
      for (long k = n + 1; k <= N; ++k) {
        ++part.checks;
        const auto g = inner_product(Q[static_cast<std::size_t>(n)], Q[static_cast<std::size_t>(k)], tab.spec());
        if (auto f = detail::first_nonzero(g.exact, n, probe.describe() + " k=" + std::to_string(k)))
          part.failures.push_back(*f);
      }
    return part;
  });
  for (const auto& part : per_probe) {
    rep.checks += part.checks;
    rep.failures.insert(rep.failures.end(), part.failures.begin(), part.failures.end());
  }
  return rep;
}

/// Truncated-sum orthogonality with the true mass quotients.
struct TruncatedReport {
  long n_max = 0;
  TruncationPolicy policy;
  double max_relative = 0.0;  ///< max over n != k of max|<Q_n,Q_k>| / sqrt(max|<Q_n,Q_n>| max|<Q_k,Q_k>|)
  long worst_n = -1;
  long worst_k = -1;
  double max_tail = 0.0;
  std::string error;  ///< non-empty when the truncated sum did not converge

  [[nodiscard]] bool passed() const { return error.empty() && max_relative < policy.tol; }
};

inline TruncatedReport verify_orthogonality_truncated(const FamilySpec& spec, long n_max,
                                                      const TruncationPolicy& policy = {},
                                                      const std::function<void(long, MatPoly<double>&)>& hook = {}) {
  TruncatedReport rep;
  rep.n_max = n_max;
  rep.policy = policy;
  const ChannelTables tab(spec, n_max + 1);
  std::vector<MatPoly<double>> Q;
  for (long n = 0; n <= n_max; ++n) {
    Q.push_back(construct_Q_numeric(spec, construct_Q(tab, n)));
    if (hook) hook(n, Q.back());
  }
  try {
    std::vector<double> diag;
    for (long n = 0; n <= n_max; ++n) {
      const auto g = inner_product(Q[static_cast<std::size_t>(n)], Q[static_cast<std::size_t>(n)], spec, policy);
      diag.push_back(g.approx.max_abs());
      rep.max_tail = std::max(rep.max_tail, g.tail);
    }
    for (long n = 0; n <= n_max; ++n)
      for (long k = n + 1; k <= n_max; ++k) {
        const auto g = inner_product(Q[static_cast<std::size_t>(n)], Q[static_cast<std::size_t>(k)], spec, policy);
        rep.max_tail = std::max(rep.max_tail, g.tail);
        const double rel =
            g.approx.max_abs() / std::sqrt(diag[static_cast<std::size_t>(n)] * diag[static_cast<std::size_t>(k)]);
        if (rep.worst_n < 0 || rel > rep.max_relative) {
          rep.max_relative = rel;
          rep.worst_n = n;
          rep.worst_k = k;
        }
      }
  } catch (const ConvergenceError& e) {
    rep.error = e.what();
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Full suite.

struct VerifyOptions {
  long n_max = -1;  ///< -1: N for finite support, 5 otherwise
  ProbeGrid grid;
  bool truncated = false;
  TruncationPolicy policy;
  bool force_operator = false;  ///< build the operator even when the Hahn condition fails
  bool perturb = false;         ///< corrupt Q_1 (negative control)
};

struct VerifyReport {
  FamilySpec spec;
  long n_max = 0;
  ProbeGrid grid;
  std::vector<MassQuotient> quotients;
  std::optional<CheckReport> orthogonality;
  std::optional<TruncatedReport> truncated;
  std::optional<CheckReport> eigenfunction;
  std::string eigenfunction_skipped;
  CheckReport recurrence;

  [[nodiscard]] bool passed() const {
    if (orthogonality && !orthogonality->passed()) return false;
    if (truncated && !truncated->passed()) return false;
    if (eigenfunction && !eigenfunction->passed()) return false;
    return recurrence.passed();
  }
};

/// Orthogonality (exact on finite support, truncated on request otherwise),
/// bispectrality of the canonical operator and recurrence closure.
inline VerifyReport run_verify_suite(const FamilySpec& spec, const VerifyOptions& opt) {
  VerifyReport rep{spec, opt.n_max, opt.grid, symbolic_quotients(spec), {}, {}, {}, {}, {"recurrence", 0, {}}};
  if (rep.n_max < 0) rep.n_max = spec.finite() ? spec.N() : 5;
  if (spec.finite() && rep.n_max > spec.N()) rep.n_max = spec.N();

  QHook hook;
  if (opt.perturb)
    hook = [](long n, MatPoly<Rational>& Q) {
      if (n == 1) Q(0, 0) += Poly<Rational>(Rational(1, 7));
    };

  if (spec.finite()) {
    rep.orthogonality = verify_orthogonality_exact(spec, opt.grid, hook);
  } else if (opt.truncated) {
    std::function<void(long, MatPoly<double>&)> numeric_hook;
    if (opt.perturb)
      numeric_hook = [](long n, MatPoly<double>& Q) {
        if (n == 1) Q(0, 0) += Poly<double>(1.0 / 7.0);
      };
    rep.truncated = verify_orthogonality_truncated(spec, rep.n_max, opt.policy, numeric_hook);
  }

  try {
    const OperatorFactory factory = [&](const FamilySpec& s) { return canonical_operator(s, !opt.force_operator); };
    (void)channel_operators(spec, !opt.force_operator);
    rep.eigenfunction = verify_eigenfunction(spec, rep.n_max, opt.grid, factory, hook);
  } catch (const SpecError& e) {
    rep.eigenfunction_skipped = e.what();
  }
  rep.recurrence = verify_recurrence(spec, rep.n_max, opt.grid, hook);
  return rep;
}

}  // namespace mvop

#endif  // MVOP_VERIFY_HPP
