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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "closed_forms.hpp"
#include "fixtures.hpp"

namespace {

using fixtures::q;
using mvop::CanonicalOperator;
using mvop::DifferenceOperator;
using mvop::FamilySpec;
using mvop::MatPoly;
using mvop::Matrix;
using mvop::Poly;
using mvop::ProbeGrid;
using mvop::ProbePoint;
using mvop::Rational;
using mvop::ScalarWeightSpec;
using P = Poly<Rational>;
using MP = MatPoly<Rational>;
using S = ScalarWeightSpec;

FamilySpec charlier_pair(const Rational& b, const Rational& c, const Rational& a = Rational(1)) {
  return FamilySpec({a}, {S::charlier(b), S::charlier(c)});
}

std::vector<FamilySpec> all_families() {
  std::vector<FamilySpec> out = fixtures::finite_matrix();
  out.push_back(charlier_pair(q(1), q(2)));
  out.push_back(FamilySpec({q(1)}, {S::meixner(q(1), q(1, 3)), S::meixner(q(2), q(1, 2))}));
  out.push_back(FamilySpec({q(1)}, {S::charlier(q(3, 2)), S::meixner(q(5, 4), q(2, 5))}));
  out.push_back(FamilySpec({q(1), q(2)}, {S::charlier(q(1)), S::charlier(q(2)), S::charlier(q(1, 3))}));
  return out;
}

MP random_matpoly(std::mt19937& rng, std::size_t m, int degree) {
  std::uniform_int_distribution<long> num(-6, 6), den(1, 4);
  MP out(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<Rational> c;
      for (int k = 0; k <= degree; ++k) c.emplace_back(num(rng), den(rng));
      out(i, j) = P(c);
    }
  return out;
}

TEST(ApplyOperator, IdentityGivesK) {
  DifferenceOperator<Rational> D{MP(Matrix<Rational>{{q(1), q(2)}, {q(0), q(3)}}),
                                 MP(Matrix<Rational>{{q(5), q(0)}, {q(7), q(1)}}), MP(2, 2)};
  EXPECT_EQ(mvop::apply_operator(MP::identity(2), D), D.K);
}

TEST(ApplyOperator, ScalarCharlierEmbedding) {
  const S w = S::charlier(q(3));
  const auto op = mvop::scalar_operator(w);
  DifferenceOperator<Rational> D{MP::diagonal({op.f}), MP::diagonal({op.k}), MP::diagonal({-op.g})};
  for (long n = 0; n <= 5; ++n) {
    MP p(1, 1);
    p(0, 0) = mvop::monic_polynomial(w, n);
    EXPECT_EQ(mvop::apply_operator(p, D)(0, 0), p(0, 0) * op.eigenvalue_at(n));
  }
}

TEST(ApplyOperator, RejectsShapeMismatch) {
  DifferenceOperator<Rational> D{MP(3, 3), MP(3, 3), MP(3, 3)};
  EXPECT_THROW(mvop::apply_operator(MP::identity(2), D), std::invalid_argument);
}

TEST(CanonicalOperator, KrawtchoukFirstPolynomial) {
  const FamilySpec spec = fixtures::krawtchouk44();
  const auto op = mvop::canonical_operator(spec);
  const MP Q1 = mvop::construct_Q(spec, 1, ProbePoint{});
  EXPECT_EQ(mvop::apply_operator(Q1, op.D), Matrix<Rational>::diagonal({q(2), q(1)}) * Q1);
}

TEST(ConjugatedOperator, ZeroShiftPartsLeaveCommutator) {
  const Matrix<Rational> A{{q(0), q(3)}, {q(0), q(0)}};
  const MP K = MP::diagonal({P(q(2)), P(q(-1))});
  const auto D = mvop::conjugated_operator(A, MP(2, 2), K, MP(2, 2));
  const MP a(A);
  EXPECT_TRUE(D.F.is_zero());
  EXPECT_TRUE(D.G.is_zero());
  EXPECT_EQ(D.K, K + (a * K - K * a) * P::x());
}

TEST(CanonicalOperator, CharlierShiftPart) {
  const Rational b(2, 3), c(5, 2), a(3);
  const auto op = mvop::canonical_operator(charlier_pair(b, c, a));
  MP expected(2, 2);
  expected(0, 0) = P(-b);
  expected(0, 1) = P::x() * (-a * (c - b)) - P(a * c);
  expected(1, 1) = P(-c);
  EXPECT_EQ(op.D.F, expected);
}

TEST(CanonicalOperator, KrawtchoukConstantPart) {
  const Rational a(2), s(1, 2);
  const auto op = mvop::canonical_operator(fixtures::krawtchouk44(a));
  EXPECT_EQ(op.D.K, MP(Matrix<Rational>{{q(1), -a * Rational(4) * s}, {q(0), q(0)}}));
}

TEST(CanonicalOperator, EigenvaluesNonHahn) {
  const FamilySpec spec({q(1)}, {S::charlier(q(3, 2)), S::meixner(q(5, 4), q(2, 5))});
  const auto op = mvop::canonical_operator(spec);
  for (long n = 0; n <= 6; ++n)
    EXPECT_EQ(op.Lambda.at(n), Matrix<Rational>::diagonal({Rational(n + 1), Rational(n)}));
}

TEST(CanonicalOperator, EigenvaluesHahn) {
  const Rational al(1), be(1);
  const FamilySpec spec({q(1)}, {S::hahn(al, be, 5), S::hahn(q(0), q(0), 5)});
  const auto op = mvop::canonical_operator(spec);
  for (long n = 0; n <= 6; ++n) {
    const Rational r(n);
    EXPECT_EQ(op.Lambda.at(n),
              Matrix<Rational>::diagonal({r * (r + al + be + Rational(1)), (r - Rational(1)) * (r + al + be)}));
  }
}

TEST(CanonicalOperator, HahnConditionErrorNamesPair) {
  const FamilySpec spec({q(1)}, {S::hahn(q(1), q(1), 5), S::hahn(q(1), q(1), 5)});
  try {
    mvop::canonical_operator(spec);
    FAIL() << "expected SpecError";
  } catch (const mvop::SpecError& e) {
    EXPECT_NE(std::string(e.what()).find("(1,2)"), std::string::npos) << e.what();
  }
  EXPECT_NO_THROW(mvop::canonical_operator(spec, false));
}

TEST(CanonicalOperator, RejectsMixedHahn) {
  const FamilySpec spec({q(1)}, {S::hahn(q(1), q(1), 4), S::krawtchouk(q(1, 2), 4)});
  EXPECT_THROW(mvop::canonical_operator(spec), mvop::SpecError);
}

TEST(CanonicalOperator, EigenvalueConditionHolds) {
  for (const auto& spec : all_families()) {
    const auto op = mvop::canonical_operator(spec);
    for (long n = 0; n <= 10; ++n) EXPECT_TRUE(mvop::eigenvalue_condition_holds(op.Lambda, n)) << n;
  }
}

TEST(CanonicalOperator, ConjugationConsistency) {
  std::mt19937 rng(7);
  for (const auto& spec : all_families()) {
    const auto op = mvop::canonical_operator(spec);
    std::vector<P> f, k, g;
    for (const auto& ch : op.channels) {
      f.push_back(ch.f);
      k.push_back(ch.k);
      g.push_back(-ch.g);
    }
    const DifferenceOperator<Rational> diag{MP::diagonal(f), MP::diagonal(k), MP::diagonal(g)};
    const MP a(mvop::build_nilpotent(spec));
    const MP T = mvop::build_T(spec);
    const MP T_inv = MP::identity(spec.m()) - a * P::x();
    ASSERT_EQ(T * T_inv, MP::identity(spec.m()));
    for (int trial = 0; trial < 5; ++trial) {
      const MP Pm = random_matpoly(rng, spec.m(), 3);
      EXPECT_EQ(mvop::apply_operator(Pm * T, diag) * T_inv, mvop::apply_operator(Pm, op.D));
    }
  }
}

TEST(Eigenfunction, AllFamiliesPass) {
  for (const auto& spec : all_families()) {
    const long n_max = spec.finite() ? std::min<long>(6, spec.N()) : 6;
    const auto rep = mvop::verify_eigenfunction(spec, n_max);
    EXPECT_GT(rep.checks, 0);
    EXPECT_TRUE(rep.passed()) << spec.m() << " first failure n=" << rep.failures.front().n;
  }
}

TEST(Eigenfunction, HahnWithoutConditionFails) {
  const FamilySpec spec({q(1)}, {S::hahn(q(1), q(1), 5), S::hahn(q(1), q(1), 5)});
  const auto rep = mvop::verify_eigenfunction(
      spec, 3, ProbeGrid{}, [](const FamilySpec& s) { return mvop::canonical_operator(s, false); });
  EXPECT_FALSE(rep.passed());
  bool early = false;
  for (long n = 0; n <= 3; ++n) early = early || rep.failed_at(n);
  EXPECT_TRUE(early);
}

TEST(Eigenfunction, CorruptedQFails) {
  const auto rep = mvop::verify_eigenfunction(fixtures::krawtchouk44(), 3, ProbeGrid{}, {},
                                              [](long n, MP& Q) {
                                                if (n == 2) Q(0, 1) += P(q(1, 7));
                                              });
  EXPECT_FALSE(rep.passed());
  EXPECT_TRUE(rep.failed_at(2));
  EXPECT_FALSE(rep.failed_at(1));
}

TEST(Recurrence, ScalarCharlier) {
  const S w = S::charlier(q(2));
  auto embed = [&](long n) {
    MP p(1, 1);
    p(0, 0) = mvop::monic_polynomial(w, n);
    return p;
  };
  const auto r = mvop::recurrence_from(embed(0), embed(1), embed(2), 1);
  EXPECT_EQ(r.A(0, 0), q(1));
  EXPECT_EQ(r.B(0, 0), q(3));
  EXPECT_EQ(r.C(0, 0), q(2));
}

TEST(Recurrence, KrawtchoukLeadingEntry) {
  for (long n = 0; n <= 3; ++n) EXPECT_EQ(mvop::extract_recurrence(fixtures::krawtchouk44(q(2)), n).A(0, 0), q(1));
}

TEST(Recurrence, CharlierLowerCorner) {
  const Rational c(5, 2);
  const FamilySpec spec = charlier_pair(q(2, 3), c);
  for (long n = 1; n <= 5; ++n)
    for (const auto& probe : ProbeGrid{}.points(1))
      EXPECT_EQ(mvop::extract_recurrence(spec, n, probe).C(1, 1), c * Rational(n));
}

TEST(Recurrence, ResidualVanishes) {
  for (const auto& spec : all_families()) {
    const auto rep = mvop::verify_recurrence(spec, 5);
    EXPECT_GT(rep.checks, 0);
    EXPECT_TRUE(rep.passed()) << rep.failures.front().residual;
  }
}

TEST(Recurrence, FiniteBoundary) {
  const FamilySpec spec = fixtures::krawtchouk44();
  EXPECT_NO_THROW(mvop::extract_recurrence(spec, 3));
  EXPECT_THROW(mvop::extract_recurrence(spec, 4), std::invalid_argument);
  EXPECT_THROW(mvop::extract_recurrence(spec, -1), std::invalid_argument);
}

TEST(Recurrence, ClosedFormsKrawtchoukCharlierMeixner) {
  for (const auto& fam : closed_forms::families()) {
    if (fam.name == "charlier_meixner") continue;
    const std::size_t nq = mvop::symbolic_quotients(fam.spec).size();
    for (long n = 1; n <= 4; ++n)
      for (const auto& probe : ProbeGrid{}.points(nq)) {
        const auto r = mvop::extract_recurrence(fam.spec, n, probe);
        const Rational E = probe.tau.empty() ? Rational(1) : probe.tau[0];
        const auto bad = closed_forms::mismatches({r.A, r.B, r.C}, fam.closed(n, probe.a_scale, E));
        EXPECT_TRUE(bad.empty()) << fam.name << " n=" << n << " " << probe.describe() << " " << bad.front();
      }
  }
}

TEST(Recurrence, ClosedFormCharlierMeixnerSharedEntries) {
  const auto fam = closed_forms::families().back();
  const std::vector<std::string> known = {"A(1,2)", "B(1,1)", "B(2,2)", "C(2,1)"};
  for (long n = 1; n <= 4; ++n)
    for (const auto& probe : ProbeGrid{}.points(1)) {
      const auto r = mvop::extract_recurrence(fam.spec, n, probe);
      const auto bad = closed_forms::mismatches({r.A, r.B, r.C}, fam.closed(n, probe.a_scale, probe.tau[0]));
      for (const auto& entry : bad)
        EXPECT_NE(std::find(known.begin(), known.end(), entry), known.end()) << entry << " n=" << n;
    }
}

}  // namespace
