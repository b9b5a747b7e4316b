#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Jacobi>

#include "banded.hpp"
#include "core.hpp"

namespace cmv {

// Streaming Cholesky of a Hermitian banded matrix, M = A A^*, with A lower
// banded (same bandwidth) and positive diagonal.  Column j only looks at rows
// j..j+w, so the factor of a truncation agrees with the factor of the
// semi-infinite matrix on an interior window; `valid` tracks that window.
template <class Real = double>
Banded<Real> banded_cholesky(const Banded<Real>& M, Real rel_pivot = Real(1e-12)) {
  const int n = M.n();
  const int w = M.lower;
  Banded<Real> A;
  A.m = DenseMatrix<Real>::Zero(n, n);
  A.lower = w;
  A.upper = 0;
  const Real scale = std::max(M.m.cwiseAbs().maxCoeff(), Real(1));
  for (int j = 0; j < n; ++j) {
    Real d = std::real(M.m(j, j));
    for (int k = std::max(0, j - w); k < j; ++k) d -= std::norm(A.m(j, k));
    if (d <= rel_pivot * scale)
      throw NotPositiveDefinite("positive definiteness fails at pivot " + std::to_string(j), j);
    const Real rjj = std::sqrt(d);
    A.m(j, j) = rjj;
    for (int i = j + 1; i <= std::min(n - 1, j + w); ++i) {
      Cplx<Real> v = M.m(i, j);
      for (int k = std::max(0, i - w); k < j; ++k) v -= A.m(i, k) * std::conj(A.m(j, k));
      A.m(i, j) = v / rjj;
    }
  }
  A.valid = std::max(0, std::min(M.valid, n) - w);
  return A;
}

template <class Real = double>
struct GeneralizedCholesky {
  Banded<Real> factor;     // lower banded, positive diagonal
  std::vector<int> signs;  // diagonal of E, entries +-1

  DenseMatrix<Real> sign_matrix() const {
    const int n = static_cast<int>(signs.size());
    DenseMatrix<Real> e = DenseMatrix<Real>::Zero(n, n);
    for (int j = 0; j < n; ++j) e(j, j) = Real(signs[j]);
    return e;
  }
};

// M = A E A^* with E a diagonal sign matrix.  Exists as long as no pivot
// degenerates; indefinite pivots just flip the sign.
template <class Real = double>
GeneralizedCholesky<Real> generalized_cholesky(const Banded<Real>& M,
                                               Real rel_pivot = Real(1e-12)) {
  const int n = M.n();
  const int w = M.lower;
  GeneralizedCholesky<Real> out;
  out.factor.m = DenseMatrix<Real>::Zero(n, n);
  out.factor.lower = w;
  out.factor.upper = 0;
  out.signs.assign(n, 1);
  const Real scale = std::max(M.m.cwiseAbs().maxCoeff(), Real(1));
  for (int j = 0; j < n; ++j) {
    Real d = std::real(M.m(j, j));
    for (int k = std::max(0, j - w); k < j; ++k)
      d -= Real(out.signs[k]) * std::norm(out.factor.m(j, k));
    if (std::abs(d) <= rel_pivot * scale)
      throw NotQuasiDefinite("quasi-definiteness fails at pivot " + std::to_string(j), j);
    out.signs[j] = d > Real(0) ? 1 : -1;
    const Real rjj = std::sqrt(std::abs(d));
    out.factor.m(j, j) = rjj;
    for (int i = j + 1; i <= std::min(n - 1, j + w); ++i) {
      Cplx<Real> v = M.m(i, j);
      for (int k = std::max(0, i - w); k < j; ++k)
        v -= Real(out.signs[k]) * out.factor.m(i, k) * std::conj(out.factor.m(j, k));
      out.factor.m(i, j) = v / (Real(out.signs[j]) * rjj);
    }
  }
  out.factor.valid = std::max(0, std::min(M.valid, n) - w);
  return out;
}

// Reversed factorization M = A^* E A, still with A lower banded and positive
// diagonal.  Computed by factoring the anti-transpose, so the recursion runs
// from the bottom-right corner; only meaningful for matrices known in full.
template <class Real = double>
GeneralizedCholesky<Real> reversed_generalized_cholesky(const Banded<Real>& M,
                                                        Real rel_pivot = Real(1e-12)) {
  const int n = M.n();
  Banded<Real> flipped;
  flipped.m = DenseMatrix<Real>(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) flipped.m(i, j) = M.m(n - 1 - i, n - 1 - j);
  flipped.lower = M.upper;
  flipped.upper = M.lower;
  flipped.valid = n;
  GeneralizedCholesky<Real> g;
  try {
    g = generalized_cholesky(flipped, rel_pivot);
  } catch (const NotQuasiDefinite& e) {
    const int idx = n - 1 - e.index;
    throw ReversedFactorizationBreakdown(
        "reversed factorization fails at pivot " + std::to_string(idx), idx);
  }
  GeneralizedCholesky<Real> out;
  out.factor.m = DenseMatrix<Real>(n, n);
  out.signs.assign(n, 1);
  // A = (J B J)^*, so A(i,j) = conj(B(n-1-j, n-1-i)).
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.factor.m(i, j) = std::conj(g.factor.m(n - 1 - j, n - 1 - i));
  for (int j = 0; j < n; ++j) out.signs[j] = g.signs[n - 1 - j];
  out.factor.lower = M.lower;
  out.factor.upper = 0;
  out.factor.valid = n;
  return out;
}

template <class Real = double>
struct ShiftedQR {
  DenseMatrix<Real> q;  // unitary, lower bandwidth 2
  DenseMatrix<Real> r;  // upper triangular, positive diagonal
  int valid = 0;
};

// QR factorization of C - zeta for a CMV matrix C and |zeta| < 1, by Givens
// elimination of the two subdiagonals.  The diagonal of R is rotated to be
// positive so the factorization is unique; for genuine CMV input R carries
// only three diagonals and matches the adjoint Cholesky factor of
// (z - zeta)(1/z - conj(zeta)) evaluated on C.
template <class Real = double>
ShiftedQR<Real> qr_shifted(const Banded<Real>& C, Cplx<Real> zeta,
                           Real tol = default_tol) {
  if (std::abs(zeta) >= Real(1) - tol)
    throw UnimodularParameter("shift must lie strictly inside the unit circle");
  const int n = C.n();
  ShiftedQR<Real> out;
  out.r = C.m - zeta * DenseMatrix<Real>::Identity(n, n);
  out.q = DenseMatrix<Real>::Identity(n, n);
  Eigen::JacobiRotation<Cplx<Real>> G;
  for (int j = 0; j < n; ++j) {
    for (int i = std::min(n - 1, j + C.lower); i > j; --i) {
      if (out.r(i, j) == Cplx<Real>(0)) continue;
      G.makeGivens(out.r(i - 1, j), out.r(i, j));
      out.r.applyOnTheLeft(i - 1, i, G.adjoint());
      out.q.applyOnTheRight(i - 1, i, G);
    }
  }
  for (int j = 0; j < n; ++j) {
    const Cplx<Real> d = out.r(j, j);
    if (std::abs(d) <= tol) continue;
    const Cplx<Real> phase = d / std::abs(d);
    out.r.row(j) *= std::conj(phase);
    out.q.col(j) *= phase;
  }
  out.valid = std::max(0, std::min(C.valid, n - 2));
  return out;
}

}  // namespace cmv
