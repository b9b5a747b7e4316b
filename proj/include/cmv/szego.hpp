#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "banded.hpp"
#include "cmv_matrix.hpp"
#include "core.hpp"
#include "darboux_forward.hpp"
#include "factorization.hpp"

namespace cmv {

template <class Real = double>
struct Jacobi {
  std::vector<Real> diag;
  std::vector<Real> off;  // off[k] couples sites k and k+1

  int n() const { return static_cast<int>(diag.size()); }

  Banded<Real> to_banded() const {
    const int m = n();
    Banded<Real> out;
    out.m = DenseMatrix<Real>::Zero(m, m);
    for (int k = 0; k < m; ++k) {
      out.m(k, k) = diag[k];
      if (k + 1 < m) {
        out.m(k + 1, k) = off[k];
        out.m(k, k + 1) = off[k];
      }
    }
    out.lower = 1;
    out.upper = 1;
    out.valid = m;
    return out;
  }
};

namespace detail {
template <class Real>
void require_real(const std::vector<Cplx<Real>>& a, Real tol) {
  for (const auto& v : a)
    if (std::abs(std::imag(v)) > tol)
      throw NonSymmetricMeasure("parameters must be real for the symmetric reduction");
}
}  // namespace detail

// Orthogonal involution tying the Laurent basis of a symmetric measure to the
// two polynomial bases on the interval: identity at site 0, then 2x2 blocks
// on sites (2k-1, 2k) built from a_{2k}.  An incomplete trailing block is
// padded with the identity.
template <class Real = double>
DenseMatrix<Real> szego_rotation(const SchurSequence<Real>& a, int n, Real tol = default_tol) {
  if (n < 2) throw ZeroArgument("matrix dimension must be at least 2");
  const auto pars = a.materialize(n + 1);
  detail::require_real(pars, tol);
  DenseMatrix<Real> s = DenseMatrix<Real>::Identity(n, n);
  const Real inv_sqrt2 = Real(1) / std::sqrt(Real(2));
  for (int k = 1; k + 1 < n + 1 && k + 1 <= n - 1; k += 2) {
    const Real av = std::real(pars[k + 1]);  // a_{2m} with 2m = k+1
    if (std::abs(av) >= Real(1))
      throw InvalidSchurParameter("parameter outside the open disk");
    const Real p = std::sqrt(Real(1) + av);
    const Real q = std::sqrt(Real(1) - av);
    s(k, k) = -p * inv_sqrt2;
    s(k, k + 1) = q * inv_sqrt2;
    s(k + 1, k) = q * inv_sqrt2;
    s(k + 1, k + 1) = p * inv_sqrt2;
  }
  return s;
}

template <class Real = double>
struct SzegoJacobi {
  Jacobi<Real> even;   // spectral variable x = z + 1/z, weight on the interval
  Jacobi<Real> odd;    // second kind: extra weight (4 - x^2)/4
  Real mixing_defect = 0;  // leakage between the two parities
};

// Conjugate C + C^* by the rotation and split the interleaved result into its
// two Jacobi halves.
template <class Real = double>
SzegoJacobi<Real> szego_jacobi(const SchurSequence<Real>& a, int n, Real tol = default_tol) {
  const Banded<Real> C = build_cmv(a, n, tol);
  detail::require_real(a.materialize(n + 2), tol);
  const DenseMatrix<Real> S = szego_rotation(a, n, tol);
  const DenseMatrix<Real> J = S * (C.m + C.m.adjoint()) * S;
  const int w = std::max(0, C.valid - 1);
  SzegoJacobi<Real> out;
  for (int k = 0; 2 * k < w; ++k) {
    out.even.diag.push_back(std::real(J(2 * k, 2 * k)));
    if (2 * k + 2 < w) out.even.off.push_back(std::real(J(2 * k + 2, 2 * k)));
  }
  for (int k = 0; 2 * k + 1 < w; ++k) {
    out.odd.diag.push_back(std::real(J(2 * k + 1, 2 * k + 1)));
    if (2 * k + 3 < w) out.odd.off.push_back(std::real(J(2 * k + 3, 2 * k + 1)));
  }
  Real defect = 0;
  for (int i = 0; i < w; ++i)
    for (int j = 0; j < w; ++j) {
      if ((i + j) % 2 == 0) continue;
      defect = std::max(defect, std::abs(J(i, j)));
    }
  out.mixing_defect = defect;
  return out;
}

template <class Real = double>
struct JacobiDarboux {
  Banded<Real> factor;  // lower bidiagonal, p(J) = factor factor^*
  Jacobi<Real> target;
};

// Classical Darboux step on a Jacobi matrix through the affine p(x) = p1 x +
// p0: Cholesky of p(J), then flip the factors.
template <class Real = double>
JacobiDarboux<Real> jacobi_darboux(const Jacobi<Real>& j, Real p0, Real p1,
                                   Real tol = default_tol) {
  const Banded<Real> J = j.to_banded();
  const int n = J.n();
  if (n < 3) throw ZeroArgument("matrix dimension must be at least 3");
  Banded<Real> M = J;
  M.m = p1 * J.m + p0 * DenseMatrix<Real>::Identity(n, n);
  JacobiDarboux<Real> out;
  out.factor = banded_cholesky(M);
  // K = A^{-1} J A is again tridiagonal and symmetric.
  const DenseMatrix<Real> lhs = J.m * out.factor.m;
  const DenseMatrix<Real> K =
      out.factor.m.template triangularView<Eigen::Lower>().solve(lhs);
  const int w = std::max(0, n - 2);
  for (int k = 0; k < w; ++k) {
    out.target.diag.push_back(std::real(K(k, k)));
    if (k + 1 < w) out.target.off.push_back(std::real(K(k + 1, k)));
  }
  return out;
}

// Entries allowed in the interleaved bidiagonal pair: the diagonal and the
// second subdiagonal.  Everything else should vanish.
template <class Real = double>
Real interleave_defect(const DenseMatrix<Real>& m, int w) {
  Real defect = 0;
  for (int i = 0; i < w; ++i)
    for (int j = 0; j < w; ++j) {
      if (i == j || i == j + 2) continue;
      defect = std::max(defect, std::abs(m(i, j)));
    }
  return defect;
}

template <class Real = double>
struct BidiagonalPair {
  Jacobi<Real> even;  // diag/off reused as diagonal and subdiagonal
  Jacobi<Real> odd;
};

template <class Real = double>
BidiagonalPair<Real> split_bidiagonal(const DenseMatrix<Real>& m, int w) {
  BidiagonalPair<Real> out;
  for (int k = 0; 2 * k < w; ++k) {
    out.even.diag.push_back(std::real(m(2 * k, 2 * k)));
    if (2 * k + 2 < w) out.even.off.push_back(std::real(m(2 * k + 2, 2 * k)));
  }
  for (int k = 0; 2 * k + 1 < w; ++k) {
    out.odd.diag.push_back(std::real(m(2 * k + 1, 2 * k + 1)));
    if (2 * k + 3 < w) out.odd.off.push_back(std::real(m(2 * k + 3, 2 * k + 1)));
  }
  return out;
}

template <class Real = double>
struct SzegoFactorSplit {
  Jacobi<Real> even, odd;           // bidiagonal halves of S A T (diag, subdiag)
  Real rotation_residual = 0;       // S A T against the two Jacobi factors
  Real pattern_defect = 0;          // leakage outside diagonal / 2nd subdiagonal
  Real factorization_residual = 0;  // p(J) - (S A T)(S A T)^T
  int window = 0;
};

// Rotate the CMV Darboux factor of a real degree-one step into the symmetric
// world: S A T interleaves the two Jacobi Darboux factors obtained from
// p(x) = alpha x + beta acting on the even/odd projections of the source.
template <class Real = double>
SzegoFactorSplit<Real> szego_factor_split(const SchurSequence<Real>& a,
                                          const HermitianLaurent<Real>& l, int n,
                                          Real tol = default_tol) {
  if (l.degree() != 1) throw ZeroArgument("degree-one transformation expected");
  if (std::abs(std::imag(l.alpha[0])) > tol)
    throw NonSymmetricMeasure("transformation coefficients must be real");
  // w = n - 3 rotated rows split into halves of ceil(w/2) and floor(w/2);
  // both halves must reach the tridiagonal minimum of jacobi_darboux.
  if (n < 9) throw ZeroArgument("window too small to split");
  const Real alpha = std::real(l.alpha[0]);
  const Real beta = l.beta;
  const auto fwd = forward(a, l, n, tol);
  const DenseMatrix<Real> S = szego_rotation(a, n, tol);
  const DenseMatrix<Real> T = szego_rotation(fwd.target, n, tol);
  const DenseMatrix<Real> B = S * fwd.factor.to_banded(n).m * T;

  const auto pj = szego_jacobi(a, n, tol);
  const auto even = jacobi_darboux(pj.even, beta, alpha, tol);
  const auto odd = jacobi_darboux(pj.odd, beta, alpha, tol);

  SzegoFactorSplit<Real> out;
  out.window = std::min({n - 2, 2 * even.factor.valid, 2 * odd.factor.valid + 1});
  const int w = out.window;
  out.pattern_defect = interleave_defect(B, w);
  auto halves = split_bidiagonal(B, w);
  out.even = std::move(halves.even);
  out.odd = std::move(halves.odd);
  Real res = 0;
  for (int i = 0; i < w; ++i)
    for (int j = 0; j < w; ++j) {
      Cplx<Real> want(0);
      if (i % 2 == 0 && j % 2 == 0)
        want = even.factor.m(i / 2, j / 2);
      else if (i % 2 == 1 && j % 2 == 1)
        want = odd.factor.m(i / 2, j / 2);
      res = std::max(res, std::abs(B(i, j) - want));
    }
  out.rotation_residual = res;

  const Banded<Real> C = build_cmv(a, n, tol);
  const DenseMatrix<Real> J = S * (C.m + C.m.adjoint()) * S;
  const DenseMatrix<Real> lhs = Cplx<Real>(alpha) * J +
      Cplx<Real>(beta) * DenseMatrix<Real>::Identity(n, n);
  out.factorization_residual =
      (lhs - B * B.adjoint()).topLeftCorner(w, w).cwiseAbs().maxCoeff();
  return out;
}

// Interlace the parameters with zeros: the Schur data of the image of a
// measure under z -> z^2 symmetrization.  A constant tail cannot stay a
// constant tail, so it must be cut explicitly.
template <class Real = double>
SchurSequence<Real> symmetrize_schur(const SchurSequence<Real>& a, int terms = -1) {
  SchurSequence<Real> out;
  out.u1 = a.u1;
  int count = static_cast<int>(a.prefix.size());
  if (a.tail == Tail::Constant && std::abs(a.tail_value) > Real(0)) {
    if (terms < 0)
      throw ZeroArgument("constant tail needs an explicit term count to symmetrize");
    count = terms;
    out.tail = Tail::Truncated;
  } else {
    if (terms >= 0) count = terms;
    out.tail = a.tail;
  }
  for (int k = 1; k <= count; ++k) {
    out.prefix.push_back(Cplx<Real>(0));
    out.prefix.push_back(a.at(k));
  }
  return out;
}

// Jacobi matrix with diagonal a_n - a_{n+1} (a_0 = 1) and off-diagonal rho_n;
// the image of the parameter sequence in the strong-moment world.
template <class Real = double>
Jacobi<Real> dvz(const SchurSequence<Real>& a, int n, Real tol = default_tol) {
  if (n < 2) throw ZeroArgument("matrix dimension must be at least 2");
  const auto pars = a.materialize(n + 2);
  detail::require_real(pars, tol);
  Jacobi<Real> out;
  for (int k = 0; k < n; ++k) {
    out.diag.push_back(std::real(pars[k]) - std::real(pars[k + 1]));
    if (k + 1 < n) out.off.push_back(rho(pars[k + 1], tol));
  }
  return out;
}

}  // namespace cmv
