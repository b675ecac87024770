// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "superyang/exact.hpp"

namespace superyang {

struct SingularError : std::domain_error {
  using std::domain_error::domain_error;
};

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix unit(std::size_t n, std::size_t i, std::size_t j) {
    Matrix m(n, n);
    m(i, j) = T(1);
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
  const std::vector<T>& data() const { return a_; }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!superyang::is_zero(x)) return false;
    return true;
  }
  bool is_identity() const {
    if (r_ != c_) return false;
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) {
        if (i == j ? !((*this)(i, j) == T(1)) : !superyang::is_zero((*this)(i, j))) return false;
      }
    return true;
  }

  Matrix& operator+=(const Matrix& b) {
    check_same(b);
    for (std::size_t k = 0; k < a_.size(); ++k)
      if (!superyang::is_zero(b.a_[k])) a_[k] += b.a_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& b) {
    check_same(b);
    for (std::size_t k = 0; k < a_.size(); ++k)
      if (!superyang::is_zero(b.a_[k])) a_[k] -= b.a_[k];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) {
    for (auto& x : a.a_)
      if (!superyang::is_zero(x)) x = -x;
    return a;
  }
  Matrix& scale(const T& s) {
    for (auto& x : a_)
      if (!superyang::is_zero(x)) x *= s;
    return *this;
  }
  friend Matrix operator*(const T& s, Matrix a) { return a.scale(s); }

  // Zero entries are skipped; the operators handled here are sparse.
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("matrix shape mismatch in product");
    Matrix r(a.r_, b.c_);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k) {
        const T& x = a(i, k);
        if (superyang::is_zero(x)) continue;
        for (std::size_t j = 0; j < b.c_; ++j) {
          const T& y = b(k, j);
          if (superyang::is_zero(y)) continue;
          r(i, j) += x * y;
        }
      }
    return r;
  }
  // r += a*b without temporaries for the result
  static void mul_add(Matrix& r, const Matrix& a, const Matrix& b) {
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k) {
        const T& x = a(i, k);
        if (superyang::is_zero(x)) continue;
        for (std::size_t j = 0; j < b.c_; ++j) {
          const T& y = b(k, j);
          if (superyang::is_zero(y)) continue;
          r(i, j) += x * y;
        }
      }
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }

  Matrix block(std::size_t i0, std::size_t j0, std::size_t r, std::size_t c) const {
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = (*this)(i0 + i, j0 + j);
    return m;
  }
  void set_block(std::size_t i0, std::size_t j0, const Matrix& m) {
    for (std::size_t i = 0; i < m.r_; ++i)
      for (std::size_t j = 0; j < m.c_; ++j) (*this)(i0 + i, j0 + j) = m(i, j);
  }

  template <class F>
  auto map(F f) const {
    using U = decltype(f(a_[0]));
    Matrix<U> m(r_, c_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m(i, j) = f((*this)(i, j));
    return m;
  }

 private:
  void check_same(const Matrix& b) const {
    if (r_ != b.r_ || c_ != b.c_) throw std::invalid_argument("matrix shape mismatch");
  }
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

template <class T>
bool is_zero(const Matrix<T>& m) {
  return m.is_zero();
}

using MatQ = Matrix<Rat>;
using MatF = Matrix<RatFun>;
using MatP = Matrix<MPoly>;

// Ordinary (sign-free) Kronecker product.
template <class T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (is_zero(a(i, j))) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          if (!is_zero(b(k, l))) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return r;
}

// Gauss-Jordan inverse over a field (Rat or RatFun).
template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = m.rows();
  Matrix<T> a = m, inv = Matrix<T>::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    for (std::size_t r = col; r < n; ++r)
      if (!is_zero(a(r, col))) {
        piv = r;
        break;
      }
    if (piv == n) throw SingularError("singular matrix (column " + std::to_string(col) + ")");
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    T p = T(1) / a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      if (!is_zero(a(col, j))) a(col, j) *= p;
      if (!is_zero(inv(col, j))) inv(col, j) *= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || is_zero(a(r, col))) continue;
      T f = a(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        if (!is_zero(a(col, j))) a(r, j) -= f * a(col, j);
        if (!is_zero(inv(col, j))) inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

inline MatQ evaluate(const MatF& m, const Rat& t) {
  return m.map([&](const RatFun& f) { return f.eval(t); });
}

}  // namespace superyang
