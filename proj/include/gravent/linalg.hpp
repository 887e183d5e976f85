#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "gravent/errors.hpp"
#include "gravent/real.hpp"

namespace gravent {

/// Dense fixed-size square matrix, row-major. Sized for the 2x2/4x4 blocks of
/// two-mode phase space and the 8x8 real embedding of Hermitian 4x4 matrices.
template <class Real, int N>
class SquareMatrix {
 public:
  SquareMatrix() { e_.fill(Real(0)); }

  static SquareMatrix identity() {
    SquareMatrix m;
    for (int i = 0; i < N; ++i) m(i, i) = Real(1);
    return m;
  }

  Real& operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * N + j]; }
  const Real& operator()(int i, int j) const {
    return e_[static_cast<std::size_t>(i) * N + j];
  }

  SquareMatrix transposed() const {
    SquareMatrix t;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix c;
    for (int i = 0; i < N; ++i)
      for (int k = 0; k < N; ++k) {
        const Real aik = a(i, k);
        if (aik == Real(0)) continue;
        for (int j = 0; j < N; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix c;
    for (std::size_t i = 0; i < a.e_.size(); ++i) c.e_[i] = a.e_[i] + b.e_[i];
    return c;
  }

  friend SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix c;
    for (std::size_t i = 0; i < a.e_.size(); ++i) c.e_[i] = a.e_[i] - b.e_[i];
    return c;
  }

  friend SquareMatrix operator*(const Real& s, const SquareMatrix& a) {
    SquareMatrix c;
    for (std::size_t i = 0; i < a.e_.size(); ++i) c.e_[i] = s * a.e_[i];
    return c;
  }

  Real max_abs() const {
    using std::fabs;
    Real m(0);
    for (const Real& x : e_) {
      Real a = fabs(x);
      if (a > m) m = a;
    }
    return m;
  }

  friend Real max_abs_diff(const SquareMatrix& a, const SquareMatrix& b) {
    return (a - b).max_abs();
  }

 private:
  std::array<Real, static_cast<std::size_t>(N) * N> e_;
};

template <class Real>
using Mat2 = SquareMatrix<Real, 2>;
template <class Real>
using Mat4 = SquareMatrix<Real, 4>;
template <class Real>
using Mat8 = SquareMatrix<Real, 8>;

template <class Real>
Real det2(const Mat2<Real>& m) {
  return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

/// Determinant of the 2x2 submatrix anchored at (row, col).
template <class Real, int N>
Real block_det2(const SquareMatrix<Real, N>& m, int row, int col) {
  return m(row, col) * m(row + 1, col + 1) - m(row, col + 1) * m(row + 1, col);
}

/// Cholesky factor L (lower, M = L L^T) of a symmetric positive definite
/// matrix. Throws not_positive_definite when a pivot is non-positive.
template <class Real, int N>
SquareMatrix<Real, N> cholesky(const SquareMatrix<Real, N>& m) {
  using std::sqrt;
  SquareMatrix<Real, N> l;
  for (int j = 0; j < N; ++j) {
    Real d = m(j, j);
    for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > Real(0))) throw not_positive_definite("matrix is not positive definite");
    l(j, j) = sqrt(d);
    for (int i = j + 1; i < N; ++i) {
      Real s = m(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

/// Determinant of a symmetric positive definite matrix via Cholesky pivots.
template <class Real, int N>
Real det_spd(const SquareMatrix<Real, N>& m) {
  SquareMatrix<Real, N> l = cholesky(m);
  Real d(1);
  for (int i = 0; i < N; ++i) d *= l(i, i);
  return d * d;
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi sweeps, ascending.
/// Adequate and robust for the n <= 8 matrices used here, at any precision.
template <class Real, int N>
std::array<Real, N> symmetric_eigenvalues(SquareMatrix<Real, N> a) {
  using std::fabs;
  using std::sqrt;
  const Real eps = std::numeric_limits<Real>::epsilon();
  for (int sweep = 0; sweep < 60; ++sweep) {
    Real off(0), diag(0);
    for (int i = 0; i < N; ++i) {
      diag += fabs(a(i, i));
      for (int j = i + 1; j < N; ++j) off += fabs(a(i, j));
    }
    if (off <= eps * (diag + off)) break;
    for (int p = 0; p < N - 1; ++p) {
      for (int q = p + 1; q < N; ++q) {
        const Real apq = a(p, q);
        if (fabs(apq) <= eps * eps * diag) continue;
        // Classic Jacobi rotation annihilating a(p,q).
        const Real tau = (a(q, q) - a(p, p)) / (Real(2) * apq);
        Real t;
        if (tau >= Real(0))
          t = Real(1) / (tau + sqrt(Real(1) + tau * tau));
        else
          t = Real(-1) / (-tau + sqrt(Real(1) + tau * tau));
        const Real c = Real(1) / sqrt(Real(1) + t * t);
        const Real s = t * c;
        for (int k = 0; k < N; ++k) {
          const Real akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < N; ++k) {
          const Real apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::array<Real, N> ev;
  for (int i = 0; i < N; ++i) ev[static_cast<std::size_t>(i)] = a(i, i);
  for (int i = 1; i < N; ++i)
    for (int j = i; j > 0 && ev[j] < ev[j - 1]; --j) std::swap(ev[j], ev[j - 1]);
  return ev;
}

}  // namespace gravent
