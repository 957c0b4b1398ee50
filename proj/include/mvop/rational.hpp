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

#ifndef MVOP_RATIONAL_HPP
#define MVOP_RATIONAL_HPP

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mvop {

/// Exact fraction with arbitrary-precision numerator and denominator.
///
/// Always stored in lowest terms with a positive denominator, so structural
/// equality is value equality.
class Rational {
 public:
  Rational() = default;

  template <std::integral I>
  Rational(I value) : v_(static_cast<long>(value)) {}  // NOLINT: implicit by intent

  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_.canonicalize();
  }

  explicit Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

  /// Parses "p/q", "p", with optional leading sign and surrounding blanks.
  static Rational parse(std::string_view text) {
    std::string s;
    for (char ch : text)
      if (ch != ' ' && ch != '\t') s.push_back(ch);
    if (s.empty()) throw std::invalid_argument("Rational: empty string");
    if (s.front() == '+') s.erase(s.begin());
    const auto slash = s.find('/');
    auto valid_int = [](std::string_view t) {
      if (!t.empty() && t.front() == '-') t.remove_prefix(1);
      if (t.empty()) return false;
      for (char ch : t)
        if (ch < '0' || ch > '9') return false;
      return true;
    };
    const std::string num = s.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den.front() == '-')
      throw std::invalid_argument("Rational: cannot parse '" + std::string(text) + "'");
    mpz_class n(num, 10);
    mpz_class d(den, 10);
    if (d == 0) throw std::domain_error("Rational: zero denominator in '" + std::string(text) + "'");
    return Rational(mpq_class(n, d));
  }

  /// "p/q", or "p" for integers.
  [[nodiscard]] std::string str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  [[nodiscard]] double to_double() const { return v_.get_d(); }
  [[nodiscard]] int sign() const { return sgn(v_); }
  [[nodiscard]] bool is_zero() const { return sgn(v_) == 0; }
  [[nodiscard]] bool is_integer() const { return v_.get_den() == 1; }
  [[nodiscard]] mpz_class numerator() const { return v_.get_num(); }
  [[nodiscard]] mpz_class denominator() const { return v_.get_den(); }
  [[nodiscard]] const mpq_class& gmp() const { return v_; }

  /// Integer value; throws unless is_integer() and it fits in a long.
  [[nodiscard]] long to_long() const {
    if (!is_integer() || !v_.get_num().fits_slong_p())
      throw std::domain_error("Rational: " + str() + " is not a machine integer");
    return v_.get_num().get_si();
  }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class v_;
};

inline Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) return Rational(1) / pow(base, -exponent);
  Rational result(1);
  Rational b = base;
  unsigned long e = static_cast<unsigned long>(exponent);
  while (e != 0) {
    if (e & 1UL) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// Rising factorial (a)_n = a(a+1)...(a+n-1), (a)_0 = 1.
inline Rational pochhammer(const Rational& a, long n) {
  if (n < 0) throw std::domain_error("pochhammer: negative length");
  Rational r(1);
  for (long i = 0; i < n; ++i) r *= a + Rational(i);
  return r;
}

inline Rational factorial(long n) { return pochhammer(Rational(1), n); }

// Uniform scalar helpers so the algebra templates work over Rational and double.

inline bool is_zero(const Rational& r) { return r.is_zero(); }
inline bool is_zero(double d) { return d == 0.0; }
inline bool is_zero(long double d) { return d == 0.0L; }

inline double to_double(const Rational& r) { return r.to_double(); }
inline double to_double(double d) { return d; }
inline double to_double(long double d) { return static_cast<double>(d); }

inline double magnitude(const Rational& r) { return std::fabs(r.to_double()); }
inline double magnitude(double d) { return std::fabs(d); }
inline double magnitude(long double d) { return static_cast<double>(std::fabs(d)); }

}  // namespace mvop

#endif  // MVOP_RATIONAL_HPP
