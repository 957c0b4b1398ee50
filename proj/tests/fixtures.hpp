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

// Shared test data: hand-transcribed golden polynomials and the family test
// matrix.

#ifndef MVOP_TESTS_FIXTURES_HPP
#define MVOP_TESTS_FIXTURES_HPP

#include <vector>

#include "mvop/mvop.hpp"

namespace fixtures {

using mvop::FamilySpec;
using mvop::MatPoly;
using mvop::Poly;
using mvop::Rational;
using mvop::ScalarWeightSpec;

inline Rational q(long p, long d = 1) { return Rational(p, d); }

/// Polynomial from coefficients listed highest power first.
inline Poly<Rational> hi(std::initializer_list<Rational> c) {
  std::vector<Rational> v(c);
  return Poly<Rational>(std::vector<Rational>(v.rbegin(), v.rend()));
}

/// The five Krawtchouk matrix polynomials for p = s = 1/2, N = 4, written
/// out by hand in factored form and expanded here.
inline MatPoly<Rational> krawtchouk_golden(long n, const Rational& a) {
  using P = Poly<Rational>;
  const P x = P::x();
  const Rational a2 = a * a;
  MatPoly<Rational> Q(2, 2);
  switch (n) {
    case 0:
      Q(0, 0) = P(q(1));
      Q(0, 1) = P(-q(2) * a);
      Q(1, 1) = P(q(1));
      break;
    case 1:
      Q(0, 0) = x - P(q(2));
      Q(0, 1) = -a * (x * q(2) - P(q(3)));
      Q(1, 0) = P(-a);
      Q(1, 1) = x * a2 + x - P(q(2));
      break;
    case 2:
      Q(0, 0) = (x - P(q(1))) * (x - P(q(3)));
      Q(0, 1) = -q(1, 2) * a * hi({q(4), q(-13), q(6)});
      Q(1, 0) = -q(3, 2) * a * (x - P(q(2)));
      Q(1, 1) = hi({q(3, 2) * a2, -q(3) * a2, q(0)}) + hi({q(1), q(-4), q(3)});
      break;
    case 3:
      Q(0, 0) = (x * q(1, 2) - P(q(1))) * hi({q(2), q(-8), q(3)});
      Q(0, 1) = -q(1, 2) * a * hi({q(4), q(-21), q(26), q(-3)});
      Q(1, 0) = -q(3, 2) * a * (x - P(q(1))) * (x - P(q(3)));
      Q(1, 1) = hi({q(3, 2) * a2, -q(6) * a2, q(9, 2) * a2, q(0)}) + hi({q(1), q(-6), q(19, 2), q(-3)});
      break;
    case 4:
      Q(0, 0) = hi({q(1), q(-8), q(20), q(-16), q(3, 2)});
      Q(0, 1) = -q(1, 2) * a * x * (x * q(2) - P(q(5))) * hi({q(2), q(-10), q(9)});
      Q(1, 0) = -q(1, 2) * a * (x - P(q(2))) * hi({q(2), q(-8), q(3)});
      Q(1, 1) = hi({a2, -q(6) * a2, q(19, 2) * a2, -q(3) * a2, q(0)}) + hi({q(1), q(-8), q(20), q(-16), q(3, 2)});
      break;
    default: throw std::invalid_argument("krawtchouk_golden: n must be 0..4");
  }
  return Q;
}

inline FamilySpec krawtchouk44(const Rational& a = Rational(1)) {
  const auto w = ScalarWeightSpec::krawtchouk(q(1, 2), 4);
  return FamilySpec({a}, {w, w});
}

/// Finite-support families: Krawtchouk m = 2, 3 and Hahn m = 2 with integer
/// and non-integer parameters.
inline std::vector<FamilySpec> finite_matrix() {
  using S = ScalarWeightSpec;
  return {
      krawtchouk44(),
      FamilySpec({q(2, 3)}, {S::krawtchouk(q(1, 3), 5), S::krawtchouk(q(3, 5), 5)}),
      FamilySpec({q(1), q(1, 2)}, {S::krawtchouk(q(1, 3), 4), S::krawtchouk(q(1, 2), 4), S::krawtchouk(q(2, 5), 4)}),
      FamilySpec({q(1), q(1, 2)}, {S::hahn(q(1), q(1), 5), S::hahn(q(0), q(0), 5), S::hahn(q(2), q(0), 5)}),
      FamilySpec({q(1)}, {S::hahn(q(1), q(1), 5), S::hahn(q(0), q(0), 5)}),
      FamilySpec({q(3, 2)}, {S::hahn(q(1, 2), q(5, 2), 4), S::hahn(q(-1, 3), q(4, 3), 4)}),
      FamilySpec({q(1)}, {S::hahn(q(-9), q(-8), 4), S::hahn(q(-11), q(-8), 4)}),
  };
}

}  // namespace fixtures

#endif  // MVOP_TESTS_FIXTURES_HPP
