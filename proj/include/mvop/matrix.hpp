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

#ifndef MVOP_MATRIX_HPP
#define MVOP_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "poly.hpp"
#include "rational.hpp"

namespace mvop {

namespace detail {
inline void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}
}  // namespace detail

/// Dense row-major matrix over a field-like scalar.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      detail::require(row.size() == cols_, "Matrix: ragged initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix diagonal(const std::vector<T>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  [[nodiscard]] bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& v) { return mvop::is_zero(v); });
  }

  [[nodiscard]] Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  [[nodiscard]] double max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, magnitude(v));
    return m;
  }

  Matrix& operator+=(const Matrix& o) {
    detail::require(rows_ == o.rows_ && cols_ == o.cols_, "Matrix: dimension mismatch in +");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    detail::require(rows_ == o.rows_ && cols_ == o.cols_, "Matrix: dimension mismatch in -");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) {
    for (auto& v : a.data_) v = -v;
    return a;
  }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    detail::require(a.cols_ == b.rows_, "Matrix: dimension mismatch in *");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (mvop::is_zero(a(i, k))) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
      }
    return out;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

namespace detail {
// Pivot choice: first nonzero for exact scalars, largest magnitude otherwise.
template <class T>
std::size_t pick_pivot(const Matrix<T>& a, std::size_t col) {
  std::size_t best = a.rows();
  double best_mag = 0.0;
  for (std::size_t r = col; r < a.rows(); ++r) {
    if (is_zero(a(r, col))) continue;
    if constexpr (std::is_same_v<T, Rational>) return r;
    const double m = magnitude(a(r, col));
    if (best == a.rows() || m > best_mag) {
      best = r;
      best_mag = m;
    }
  }
  return best;
}
}  // namespace detail

/// Gauss-Jordan inverse. Throws std::domain_error when singular.
template <class T>
Matrix<T> inverse(Matrix<T> a) {
  detail::require(a.rows() == a.cols(), "inverse: matrix is not square");
  const std::size_t n = a.rows();
  Matrix<T> inv = Matrix<T>::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    const std::size_t piv = detail::pick_pivot(a, col);
    if (piv == n) throw std::domain_error("inverse: singular matrix");
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    const T p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || is_zero(a(r, col))) continue;
      const T f = a(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

template <class T>
T determinant(Matrix<T> a) {
  detail::require(a.rows() == a.cols(), "determinant: matrix is not square");
  const std::size_t n = a.rows();
  T det(1);
  for (std::size_t col = 0; col < n; ++col) {
    const std::size_t piv = detail::pick_pivot(a, col);
    if (piv == n) return T(0);
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (is_zero(a(r, col))) continue;
      const T f = a(r, col) / a(col, col);
      for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
    }
  }
  return det;
}

/// Leading principal minors all strictly positive.
template <class T>
bool is_positive_definite(const Matrix<T>& a) {
  for (std::size_t k = 1; k <= a.rows(); ++k) {
    Matrix<T> minor(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = a(i, j);
    if (!(determinant(minor) > T(0))) return false;
  }
  return true;
}

/// m x m array of polynomials; multiplication keeps the operand order.
template <class T>
class MatPoly {
 public:
  MatPoly() = default;
  MatPoly(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  explicit MatPoly(const Matrix<T>& constant) : MatPoly(constant.rows(), constant.cols()) {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = Poly<T>(constant(i, j));
  }

  static MatPoly identity(std::size_t n) { return MatPoly(Matrix<T>::identity(n)); }
  static MatPoly diagonal(const std::vector<Poly<T>>& d) {
    MatPoly m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  Poly<T>& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Poly<T>& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  /// Maximum entry degree; -1 for the zero matrix polynomial.
  [[nodiscard]] int degree() const {
    int d = -1;
    for (const auto& e : entries_) d = std::max(d, e.degree());
    return d;
  }
  [[nodiscard]] bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Poly<T>& p) { return p.is_zero(); });
  }

  /// Matrix of x^k coefficients.
  [[nodiscard]] Matrix<T> coeff(int k) const {
    Matrix<T> c(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) c(i, j) = (*this)(i, j).coeff(k);
    return c;
  }
  [[nodiscard]] Matrix<T> leading() const { return coeff(degree()); }

  [[nodiscard]] Matrix<T> eval(const T& at) const {
    Matrix<T> v(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) v(i, j) = (*this)(i, j)(at);
    return v;
  }

  template <class Fn>
  [[nodiscard]] MatPoly map(Fn&& fn) const {
    MatPoly out(rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = fn(entries_[k]);
    return out;
  }

  MatPoly& operator+=(const MatPoly& o) {
    detail::require(rows_ == o.rows_ && cols_ == o.cols_, "MatPoly: dimension mismatch in +");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
    return *this;
  }
  MatPoly& operator-=(const MatPoly& o) {
    detail::require(rows_ == o.rows_ && cols_ == o.cols_, "MatPoly: dimension mismatch in -");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
    return *this;
  }

  friend MatPoly operator+(MatPoly a, const MatPoly& b) { return a += b; }
  friend MatPoly operator-(MatPoly a, const MatPoly& b) { return a -= b; }
  friend MatPoly operator-(const MatPoly& a) {
    return a.map([](const Poly<T>& p) { return -p; });
  }
  friend MatPoly operator*(const MatPoly& a, const T& s) {
    return a.map([&](const Poly<T>& p) { return p * s; });
  }
  friend MatPoly operator*(const T& s, const MatPoly& a) { return a * s; }
  friend MatPoly operator*(const MatPoly& a, const Poly<T>& s) {
    return a.map([&](const Poly<T>& p) { return p * s; });
  }
  friend MatPoly operator*(const Poly<T>& s, const MatPoly& a) { return a * s; }

  friend MatPoly operator*(const MatPoly& a, const MatPoly& b) {
    detail::require(a.cols_ == b.rows_, "MatPoly: dimension mismatch in *");
    MatPoly out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
      }
    return out;
  }
  friend MatPoly operator*(const Matrix<T>& a, const MatPoly& b) { return MatPoly(a) * b; }
  friend MatPoly operator*(const MatPoly& a, const Matrix<T>& b) { return a * MatPoly(b); }

  friend bool operator==(const MatPoly& a, const MatPoly& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Poly<T>> entries_;
};

template <class T>
MatPoly<T> delta(const MatPoly<T>& p) {
  return p.map([](const Poly<T>& e) { return delta(e); });
}
template <class T>
MatPoly<T> nabla(const MatPoly<T>& p) {
  return p.map([](const Poly<T>& e) { return nabla(e); });
}
template <class T>
MatPoly<T> shift(const MatPoly<T>& p, const T& k) {
  return p.map([&](const Poly<T>& e) { return shift(e, k); });
}
template <class T>
MatPoly<T> derivative(const MatPoly<T>& p) {
  return p.map([](const Poly<T>& e) { return derivative(e); });
}
template <class T>
MatPoly<T> compose_affine(const MatPoly<T>& p, const T& alpha, const T& beta) {
  return p.map([&](const Poly<T>& e) { return compose_affine(e, alpha, beta); });
}
template <class T>
MatPoly<T> scale_argument(const MatPoly<T>& p, const T& s) {
  return p.map([&](const Poly<T>& e) { return scale_argument(e, s); });
}

inline MatPoly<double> to_double(const MatPoly<Rational>& p) {
  MatPoly<double> out(p.rows(), p.cols());
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) out(i, j) = to_double(p(i, j));
  return out;
}

inline Matrix<double> to_double(const Matrix<Rational>& m) {
  Matrix<double> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_double();
  return out;
}

/// Largest |coefficient| over all entries and powers.
template <class T>
double max_abs_coefficient(const MatPoly<T>& p) {
  double m = 0.0;
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j)
      for (const auto& c : p(i, j).coefficients()) m = std::max(m, magnitude(c));
  return m;
}

}  // namespace mvop

#endif  // MVOP_MATRIX_HPP
