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

#include <cmath>

#include "mvop/scalar_families.hpp"

namespace {

using mvop::Poly;
using mvop::Rational;
using mvop::ScalarWeightSpec;
using P = Poly<Rational>;

Rational q(long p, long d = 1) { return Rational(p, d); }

std::vector<ScalarWeightSpec> finite_catalog() {
  return {ScalarWeightSpec::krawtchouk(q(1, 2), 4), ScalarWeightSpec::krawtchouk(q(1, 3), 6),
          ScalarWeightSpec::hahn(q(0), q(0), 2),    ScalarWeightSpec::hahn(q(1), q(1), 5),
          ScalarWeightSpec::hahn(q(-1, 2), q(3, 2), 6), ScalarWeightSpec::hahn(q(-9), q(-10), 5)};
}

std::vector<ScalarWeightSpec> infinite_catalog() {
  return {ScalarWeightSpec::charlier(q(1)), ScalarWeightSpec::charlier(q(5, 2)),
          ScalarWeightSpec::meixner(q(1), q(1, 2)), ScalarWeightSpec::meixner(q(7, 3), q(1, 3))};
}

// Exact sum over the support.
Rational finite_pairing(const ScalarWeightSpec& s, const P& f, const P& g) {
  Rational acc(0);
  for (long x = 0; x <= s.N(); ++x) acc += f(Rational(x)) * g(Rational(x)) * mvop::weight_value(s, x);
  return acc;
}

// Monic Gram-Schmidt of 1, x, ..., x^n under the finite pairing.
std::vector<P> gram_schmidt(const ScalarWeightSpec& s, long n) {
  std::vector<P> out;
  for (long k = 0; k <= n; ++k) {
    P v = P::monomial(static_cast<int>(k), Rational(1));
    for (const auto& u : out) v -= u * (finite_pairing(s, v, u) / finite_pairing(s, u, u));
    out.push_back(v);
  }
  return out;
}

// ---------------------------------------------------------------------------

TEST(ScalarWeight, Values) {
  EXPECT_EQ(mvop::weight_value(ScalarWeightSpec::charlier(q(2)), 3), q(4, 3));
  EXPECT_EQ(mvop::weight_value(ScalarWeightSpec::krawtchouk(q(1, 2), 4), 2), q(3, 8));
  EXPECT_EQ(mvop::weight_value(ScalarWeightSpec::meixner(q(1), q(1, 2)), 2), q(1, 4));
  EXPECT_EQ(mvop::weight_value(ScalarWeightSpec::krawtchouk(q(1, 2), 4), 5), q(0));
  EXPECT_EQ(mvop::weight_value(ScalarWeightSpec::charlier(q(2)), -1), q(0));
}

TEST(ScalarWeight, HahnGeneralizedBinomials) {
  // binom(alpha+x, x) binom(beta+N-x, N-x) with alpha = 1/2, beta = 3/2, N = 3, x = 1:
  // (3/2)(1 + 3/2)(2 + 3/2)/2 = 3/2 * 35/8.
  EXPECT_EQ(mvop::weight_value(ScalarWeightSpec::hahn(q(1, 2), q(3, 2), 3), 1), q(3, 2) * q(35, 8));
  EXPECT_EQ(mvop::weight_value(ScalarWeightSpec::hahn(q(2), q(1), 3), 2), q(6) * q(2));
}

TEST(ScalarWeight, DoubleMatchesExact) {
  for (const auto& s : infinite_catalog())
    for (long x = 0; x < 30; ++x) {
      const double exact = mvop::weight_value(s, x).to_double();
      EXPECT_NEAR(mvop::weight_value_double(s, x), exact, 1e-12 * exact) << s.describe() << " x=" << x;
    }
}

TEST(ScalarWeight, ValidationRejectsBadParameters) {
  EXPECT_THROW(ScalarWeightSpec::charlier(q(0)), mvop::SpecError);
  EXPECT_THROW(ScalarWeightSpec::meixner(q(1), q(1)), mvop::SpecError);
  EXPECT_THROW(ScalarWeightSpec::meixner(q(-1), q(1, 2)), mvop::SpecError);
  EXPECT_THROW(ScalarWeightSpec::krawtchouk(q(3, 2), 4), mvop::SpecError);
  EXPECT_THROW(ScalarWeightSpec::krawtchouk(q(1, 2), 0), mvop::SpecError);
  EXPECT_THROW(ScalarWeightSpec::hahn(q(-2), q(0), 4), mvop::SpecError);
}

TEST(ScalarWeight, HahnDegenerateDenominatorNamesDegree) {
  // alpha + beta = -1 puts a zero in 2n + alpha + beta + 1 at n = 0.
  try {
    (void)ScalarWeightSpec::hahn(q(-1, 2), q(-1, 2), 4);
    FAIL() << "expected SpecError";
  } catch (const mvop::SpecError& e) {
    EXPECT_NE(std::string(e.what()).find("n="), std::string::npos) << e.what();
  }
}

// ---------------------------------------------------------------------------

TEST(MonicPolynomial, Examples) {
  EXPECT_EQ(mvop::monic_polynomial(ScalarWeightSpec::charlier(q(2)), 1), P({q(-2), q(1)}));
  EXPECT_EQ(mvop::monic_polynomial(ScalarWeightSpec::krawtchouk(q(1, 2), 4), 2), P({q(3), q(-4), q(1)}));
  EXPECT_EQ(mvop::monic_polynomial(ScalarWeightSpec::hahn(q(0), q(0), 2), 1), P({q(-1), q(1)}));
}

TEST(MonicPolynomial, CharlierRecurrenceSecondStep) {
  // C_2 = (x - 1 - b)(x - b) - b.
  const Rational b(3, 2);
  const P C1({-b, q(1)});
  const P expected = P({-(q(1) + b), q(1)}) * C1 - P(b);
  EXPECT_EQ(mvop::monic_polynomial(ScalarWeightSpec::charlier(b), 2), expected);
}

TEST(MonicPolynomial, DegreeBoundOnFiniteSupport) {
  const auto s = ScalarWeightSpec::krawtchouk(q(1, 2), 4);
  EXPECT_NO_THROW(mvop::monic_polynomial(s, 5));
  EXPECT_THROW(mvop::monic_polynomial(s, 6), std::invalid_argument);
  EXPECT_THROW(mvop::monic_polynomial(s, -1), std::invalid_argument);
}

TEST(MonicPolynomial, MatchesGramSchmidt) {
  for (const auto& s : finite_catalog()) {
    const long top = std::min<long>(6, s.N());
    const auto gs = gram_schmidt(s, top);
    for (long n = 0; n <= top; ++n)
      EXPECT_EQ(mvop::monic_polynomial(s, n), gs[static_cast<std::size_t>(n)]) << s.describe() << " n=" << n;
  }
}

TEST(MonicPolynomial, FiniteOrthogonalityAndNorms) {
  for (const auto& s : finite_catalog()) {
    const auto p = mvop::monic_sequence(s, s.N());
    for (long n = 0; n <= s.N(); ++n) {
      for (long k = 0; k < n; ++k)
        EXPECT_TRUE(finite_pairing(s, p[static_cast<std::size_t>(n)], p[static_cast<std::size_t>(k)]).is_zero())
            << s.describe() << " n=" << n << " k=" << k;
      const auto norm = mvop::squared_norm(s, n);
      EXPECT_EQ(norm.coefficient, finite_pairing(s, p[static_cast<std::size_t>(n)], p[static_cast<std::size_t>(n)]));
      EXPECT_EQ(norm.mass.exponent(), 0);
    }
  }
}

TEST(MonicPolynomial, InfiniteOrthogonalityTruncated) {
  for (const auto& s : infinite_catalog()) {
    const auto p = mvop::monic_sequence(s, 6);
    const auto sum = [&](long n, long k) {
      double acc = 0.0;
      for (long x = 0; x <= 400; ++x) {
        const double xd = static_cast<double>(x);
        acc += mvop::to_double(p[static_cast<std::size_t>(n)])(xd) * mvop::to_double(p[static_cast<std::size_t>(k)])(xd) *
               mvop::weight_value_double(s, x);
      }
      return acc;
    };
    for (long n = 0; n <= 6; ++n) {
      const auto norm = mvop::squared_norm(s, n);
      const double expected = norm.coefficient.to_double() * std::exp(norm.mass.log_value());
      EXPECT_NEAR(sum(n, n) / expected, 1.0, 1e-10) << s.describe() << " n=" << n;
      EXPECT_GT(norm.coefficient, q(0));
      for (long k = 0; k < n; ++k) EXPECT_LT(std::fabs(sum(n, k)) / expected, 1e-10);
    }
  }
}

// ---------------------------------------------------------------------------

TEST(SquaredNorm, Examples) {
  EXPECT_EQ(mvop::squared_norm(ScalarWeightSpec::krawtchouk(q(1, 2), 4), 1).coefficient, q(1));
  const auto c = mvop::squared_norm(ScalarWeightSpec::charlier(q(1)), 2);
  EXPECT_EQ(c.coefficient, q(2));
  EXPECT_EQ(c.mass, mvop::MassFactor::exponential(q(1)));
  EXPECT_EQ(c.mass.symbol(), "exp(1)");
  EXPECT_EQ(mvop::squared_norm(ScalarWeightSpec::krawtchouk(q(1, 2), 4), 5).coefficient, q(0));
}

TEST(SquaredNorm, KrawtchoukClosedForm) {
  // (-N)_n (-1)^n n! p^n (1-p)^n
  const Rational p(1, 3);
  const long N = 6;
  const auto s = ScalarWeightSpec::krawtchouk(p, N);
  for (long n = 0; n <= N; ++n) {
    const Rational closed = mvop::pochhammer(q(-N), n) * mvop::pow(q(-1), n) * mvop::factorial(n) *
                            mvop::pow(p, n) * mvop::pow(q(1) - p, n);
    EXPECT_EQ(mvop::squared_norm(s, n).coefficient, closed);
  }
}

TEST(SquaredNorm, PositiveWithinSupport) {
  for (const auto& s : finite_catalog()) {
    if (mvop::finite_total_mass(s) < q(0)) continue;
    for (long n = 0; n <= s.N(); ++n) EXPECT_GT(mvop::squared_norm(s, n).coefficient, q(0)) << s.describe();
  }
  for (const auto& s : finite_catalog()) EXPECT_TRUE(mvop::squared_norm(s, s.N() + 1).coefficient.is_zero());
}

TEST(SquaredNorm, UniformSignForNegativeHahnParameters) {
  // alpha, beta < -N: every weight value carries the sign (-1)^N.
  for (long N : {4L, 5L}) {
    const auto s = ScalarWeightSpec::hahn(q(-N - 4), q(-N - 5), N);
    const int sign = N % 2 == 0 ? 1 : -1;
    for (long x = 0; x <= N; ++x) EXPECT_EQ(mvop::weight_value(s, x).sign(), sign);
    for (long n = 0; n <= N; ++n) EXPECT_EQ(mvop::squared_norm(s, n).coefficient.sign(), sign);
  }
}

TEST(MassFactor, ExactRatios) {
  using mvop::MassFactor;
  EXPECT_EQ(MassFactor::exponential(q(2)).exact_ratio(MassFactor::exponential(q(2))), q(1));
  EXPECT_FALSE(MassFactor::exponential(q(2)).exact_ratio(MassFactor::exponential(q(1))).has_value());
  // (1-c)^(-beta1) / (1-c)^(-beta2) = (1-c)^(beta2-beta1)
  EXPECT_EQ(MassFactor::meixner_power(q(1), q(1, 3)).exact_ratio(MassFactor::meixner_power(q(3), q(1, 3))),
            q(4, 9));
  EXPECT_FALSE(
      MassFactor::meixner_power(q(1), q(1, 3)).exact_ratio(MassFactor::meixner_power(q(1, 2), q(1, 3))).has_value());
  EXPECT_NEAR(MassFactor::meixner_power(q(2), q(1, 2)).log_value(), 2.0 * std::log(2.0), 1e-15);
}

// ---------------------------------------------------------------------------

TEST(ExtendedPolynomial, FallingFactorial) {
  EXPECT_EQ(mvop::extended_polynomial(ScalarWeightSpec::krawtchouk(q(1, 2), 1)), P({q(0), q(-1), q(1)}));
  EXPECT_EQ(mvop::extended_polynomial(ScalarWeightSpec::krawtchouk(q(1, 2), 4)),
            P({q(0), q(24), q(-50), q(35), q(-10), q(1)}));
  EXPECT_THROW(mvop::extended_polynomial(ScalarWeightSpec::charlier(q(1))), std::invalid_argument);
}

TEST(ExtendedPolynomial, InnerProductRecurrenceOracle) {
  // b_N, c_N from exact sums, then x p_N - b_N p_N - c_N p_{N-1}.
  for (const auto& s : {ScalarWeightSpec::krawtchouk(q(1, 3), 3), ScalarWeightSpec::hahn(q(1, 2), q(2), 4),
                        ScalarWeightSpec::hahn(q(0), q(0), 2)}) {
    const auto gs = gram_schmidt(s, s.N());
    const P& pN = gs.back();
    const P& pN1 = gs[gs.size() - 2];
    const Rational bN = finite_pairing(s, pN * P::x(), pN) / finite_pairing(s, pN, pN);
    const Rational cN = finite_pairing(s, pN, pN) / finite_pairing(s, pN1, pN1);
    const P built = pN * P::x() - pN * bN - pN1 * cN;
    EXPECT_EQ(built, mvop::falling_factorial<Rational>(static_cast<int>(s.N() + 1))) << s.describe();
    EXPECT_EQ(mvop::monic_polynomial(s, s.N() + 1), built);
  }
}

// ---------------------------------------------------------------------------

TEST(Rodrigues, Examples) {
  EXPECT_EQ(mvop::rodrigues_polynomial(ScalarWeightSpec::charlier(q(1)), 1), P({q(-1), q(1)}));
  EXPECT_EQ(mvop::rodrigues_polynomial(ScalarWeightSpec::krawtchouk(q(2, 7), 5), 0), P(q(1)));
  EXPECT_EQ(mvop::rodrigues_polynomial(ScalarWeightSpec::hahn(q(0), q(0), 2), 1), P({q(-1), q(1)}));
}

TEST(Rodrigues, AgreesWithRecurrence) {
  auto all = finite_catalog();
  const auto inf = infinite_catalog();
  all.insert(all.end(), inf.begin(), inf.end());
  for (const auto& s : all) {
    const long top = s.finite() ? std::min<long>(8, s.N()) : 8;
    for (long n = 0; n <= top; ++n)
      EXPECT_EQ(mvop::rodrigues_polynomial(s, n), mvop::monic_polynomial(s, n)) << s.describe() << " n=" << n;
  }
}

TEST(Rodrigues, RejectsDegreeBeyondN) {
  EXPECT_THROW(mvop::rodrigues_polynomial(ScalarWeightSpec::krawtchouk(q(1, 2), 3), 4), std::invalid_argument);
}

// ---------------------------------------------------------------------------

TEST(ScalarOperator, Examples) {
  const auto ch = mvop::scalar_operator(ScalarWeightSpec::charlier(q(3)));
  const P p({q(-3), q(1)});
  EXPECT_EQ(ch.apply(p), -p);
  EXPECT_EQ(ch.eigenvalue_at(1), q(-1));
  EXPECT_EQ(mvop::scalar_operator(ScalarWeightSpec::meixner(q(1), q(1, 2))).eigenvalue_at(2), q(-1));
  const auto kr = ScalarWeightSpec::krawtchouk(q(1, 2), 4);
  const auto op = mvop::scalar_operator(kr);
  const P ext = mvop::extended_polynomial(kr);
  EXPECT_EQ(op.apply(ext), ext * op.eigenvalue_at(5));
  EXPECT_EQ(op.eigenvalue_at(5), q(-5));
  EXPECT_TRUE(op.k.is_zero());
}

TEST(ScalarOperator, EigenRelationAllFamilies) {
  auto all = finite_catalog();
  const auto inf = infinite_catalog();
  all.insert(all.end(), inf.begin(), inf.end());
  for (const auto& s : all) {
    const auto op = mvop::scalar_operator(s);
    const long top = s.finite() ? s.N() + 1 : 10;
    const auto p = mvop::monic_sequence(s, top);
    for (long n = 0; n <= top; ++n)
      EXPECT_EQ(op.apply(p[static_cast<std::size_t>(n)]), p[static_cast<std::size_t>(n)] * op.eigenvalue_at(n))
          << s.describe() << " n=" << n;
  }
}

TEST(ScalarOperator, HahnEigenvalue) {
  const auto s = ScalarWeightSpec::hahn(q(1, 2), q(3, 2), 6);
  const auto op = mvop::scalar_operator(s);
  for (long n = 0; n <= 7; ++n) EXPECT_EQ(op.eigenvalue_at(n), q(n) * (q(n) + q(3)));
}

}  // namespace
