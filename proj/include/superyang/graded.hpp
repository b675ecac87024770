// SPDX-License-Identifier: MIT
// Index parities for gl(m|n), the graded tensor product of operators, and the
// structural operators P and theta on V (x) V.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "superyang/matrix.hpp"

namespace superyang {

struct GradedDims {
  int m = 1, n = 1;
  GradedDims() = default;
  GradedDims(int m_, int n_) : m(m_), n(n_) {
    if (m < 0 || n < 0 || m + n < 1)
      throw std::invalid_argument("gl(" + std::to_string(m) + "|" + std::to_string(n) +
                                  ") needs m, n >= 0 and m + n >= 1");
  }
  int size() const { return m + n; }
  // 1-based, as in the relation index ranges
  int parity(int i) const {
    if (i < 1 || i > m + n)
      throw std::out_of_range("index " + std::to_string(i) + " outside 1.." + std::to_string(m + n));
    return i <= m ? 0 : 1;
  }
  // 0-based internal basis index
  int p0(int i) const { return i < m ? 0 : 1; }
  friend bool operator==(const GradedDims& a, const GradedDims& b) { return a.m == b.m && a.n == b.n; }
  std::string str() const { return "gl(" + std::to_string(m) + "|" + std::to_string(n) + ")"; }
};

inline int parity(const GradedDims& d, int i) { return d.parity(i); }

// Parities of the basis vectors of a graded module.
struct Grading {
  std::vector<int> p;
  Grading() = default;
  explicit Grading(std::vector<int> q) : p(std::move(q)) {}
  explicit Grading(const GradedDims& d) {
    for (int i = 0; i < d.size(); ++i) p.push_back(d.p0(i));
  }
  std::size_t size() const { return p.size(); }
  int operator[](std::size_t i) const { return p[i]; }
  friend bool operator==(const Grading& a, const Grading& b) { return a.p == b.p; }
  // basis of A (x) B, row-major
  friend Grading operator*(const Grading& a, const Grading& b) {
    Grading g;
    for (int x : a.p)
      for (int y : b.p) g.p.push_back((x + y) & 1);
    return g;
  }
};

// (A (x) B)(v_b (x) v_d) = (-1)^{([c]+[d])[b]} A v_b (x) B v_d for the matrix
// unit E_{cd} of B.  This is the Koszul action; it satisfies
// (A(x)B)(C(x)D) = (-1)^{[B][C]} AC (x) BD for homogeneous B, C.  Non-homogeneous
// B is handled entrywise, which is the decomposition into homogeneous parts.
template <class T>
Matrix<T> graded_kron(const Matrix<T>& a, const Grading& ga, const Matrix<T>& b, const Grading& gb) {
  if (a.cols() != ga.size() || b.cols() != gb.size() || a.rows() != ga.size() ||
      b.rows() != gb.size())
    throw std::invalid_argument("graded_kron: grading does not match matrix size");
  const std::size_t nb = b.rows();
  Matrix<T> r(a.rows() * nb, a.cols() * nb);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (is_zero(a(i, j))) continue;
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) {
          if (is_zero(b(k, l))) continue;
          T v = a(i, j) * b(k, l);
          if (((gb[k] + gb[l]) * ga[j]) & 1) v = -v;
          r(i * nb + k, j * nb + l) = v;
        }
    }
  return r;
}

// Same layout without any sign; used for negative controls.
template <class T>
Matrix<T> plain_kron(const Matrix<T>& a, const Grading&, const Matrix<T>& b, const Grading&) {
  return kron(a, b);
}

template <class T = Rat>
Matrix<T> matrix_unit(const GradedDims& d, int i, int j) {  // 1-based row i, column j
  d.parity(i);
  d.parity(j);
  return Matrix<T>::unit(static_cast<std::size_t>(d.size()), static_cast<std::size_t>(i - 1),
                         static_cast<std::size_t>(j - 1));
}

// P(v_a (x) v_b) = (-1)^{[a][b]} v_b (x) v_a
template <class T = Rat>
Matrix<T> permutation_op(const GradedDims& d) {
  const std::size_t N = static_cast<std::size_t>(d.size());
  Matrix<T> P(N * N, N * N);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) {
      int s = d.p0(static_cast<int>(a)) * d.p0(static_cast<int>(b));
      P(b * N + a, a * N + b) = T(s ? -1 : 1);
    }
  return P;
}

template <class T = Rat>
Matrix<T> theta_op(const GradedDims& d) {
  const std::size_t N = static_cast<std::size_t>(d.size());
  Matrix<T> th(N * N, N * N);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b)
      th(a * N + b, a * N + b) = T(d.p0(static_cast<int>(a)) * d.p0(static_cast<int>(b)) ? -1 : 1);
  return th;
}

// Nonzero entries only between basis vectors of equal total parity.
template <class T>
bool weight_conserving(const Matrix<T>& m, const Grading& g) {
  if (m.rows() != g.size() || m.cols() != g.size()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!is_zero(m(i, j)) && ((g[i] + g[j]) & 1)) return false;
  return true;
}

}  // namespace superyang
