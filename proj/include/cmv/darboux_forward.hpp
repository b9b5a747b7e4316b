#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "banded.hpp"
#include "cmv_matrix.hpp"
#include "core.hpp"

namespace cmv {

template <class Real = double>
struct ForwardResult {
  DarbouxFactor<Real> factor;
  SchurSequence<Real> target;    // truncated: first `count` parameters
  std::vector<Real> radicands;   // pivots r_n^2, kept for diagnostics
};

// Degree-one Darboux step a -> b through l(z) = alpha z + beta + conj(alpha)/z.
// Runs the coupled recurrence for the Cholesky factor of l(C) and reads the
// target parameters off it; breaks down exactly where l(C) stops being
// positive definite.  Producing b_1..b_count consumes a_1..a_{count+2}.
template <class Real = double>
ForwardResult<Real> forward(const SchurSequence<Real>& a, const HermitianLaurent<Real>& l,
                            int count, Real tol = default_tol) {
  if (l.degree() != 1) throw ZeroArgument("degree-one transformation expected");
  if (count < 1) throw ZeroArgument("need a positive parameter count");
  const Cplx<Real> alpha = l.alpha[0];
  const Real beta = l.beta;
  ForwardResult<Real> out;
  out.factor.r.reserve(count + 1);
  out.factor.s.reserve(count + 1);
  out.factor.t.reserve(count + 1);
  out.target.tail = Tail::Truncated;

  Cplx<Real> s_prev(0), t_prev2(0), t_prev1(0);
  Real r_prev(0);
  for (int n = 0; n <= count; ++n) {
    const Cplx<Real> an = a.at(n);
    const Cplx<Real> an1 = a.at(n + 1);
    const Cplx<Real> an2 = a.at(n + 2);
    const Real rad = beta - 2 * std::real(alpha * std::conj(an) * an1) -
                     std::norm(s_prev) - std::norm(t_prev2);
    out.radicands.push_back(rad);
    if (rad <= tol)
      throw NotPositiveDefinite("transformation breaks down at parameter " + std::to_string(n), n);
    const Real rn = std::sqrt(rad);
    if (n >= 1) out.target.prefix.push_back(an - s_prev * rho(an, tol) / r_prev);
    const Real rho1 = rho(an1, tol);
    const Real rho2 = rho(an2, tol);
    const Cplx<Real> sn =
        (rho1 * (std::conj(alpha) * an - alpha * an2) - s_prev * std::conj(t_prev1)) / rn;
    const Cplx<Real> tn = alpha * rho1 * rho2 / rn;
    out.factor.r.push_back(rn);
    out.factor.s.push_back(sn);
    out.factor.t.push_back(tn);
    t_prev2 = t_prev1;
    t_prev1 = tn;
    s_prev = sn;
    r_prev = rn;
  }
  out.target.u1 = a.u1 * out.radicands[0];
  return out;
}

// Same map expressed purely on parameters: b_n = a_n + P_n (alpha a_{n+1} -
// conj(alpha) b_{n-1}) with a telescoping positive prefactor.  Cheaper than
// the factor recurrence and a useful cross-check, but blind to breakdowns of
// l(C) itself: it only fails once some |b_n| reaches 1.
template <class Real = double>
SchurSequence<Real> nonlinear_ab_recurrence(const SchurSequence<Real>& a,
                                            const HermitianLaurent<Real>& l, int count,
                                            Real tol = default_tol) {
  if (l.degree() != 1) throw ZeroArgument("degree-one transformation expected");
  const Cplx<Real> alpha = l.alpha[0];
  const Real beta = l.beta;
  const Real r0sq = beta - 2 * std::real(alpha * a.at(1));
  if (r0sq <= tol) throw NotPositiveDefinite("transformation breaks down at parameter 0", 0);
  SchurSequence<Real> b;
  b.tail = Tail::Truncated;
  b.u1 = a.u1 * r0sq;
  const Real rho1 = rho(a.at(1), tol);
  Real p = rho1 * rho1 / r0sq;
  Cplx<Real> b_prev(1);  // b_0
  for (int n = 1; n <= count; ++n) {
    const Cplx<Real> bn = a.at(n) + p * (alpha * a.at(n + 1) - std::conj(alpha) * b_prev);
    const Real gap = Real(1) - std::norm(bn);
    if (gap <= tol)
      throw UnimodularParameter("target parameter " + std::to_string(n) + " leaves the disk");
    b.prefix.push_back(bn);
    const Real rn = rho(a.at(n + 1), tol);
    p *= rn * rn / gap;
    b_prev = bn;
  }
  return b;
}

// Max abs entry of CA - AD over the window where both truncations are exact.
template <class Real = double>
Real verify_intertwining(const Banded<Real>& C, const Banded<Real>& A, const Banded<Real>& D) {
  const int w = std::max(0, common_interior<Real>({&C, &A, &D}) - 2);
  if (w == 0) throw ZeroArgument("no interior window to compare");
  const DenseMatrix<Real> lhs = C.m * A.m;
  const DenseMatrix<Real> rhs = A.m * D.m;
  return (lhs - rhs).topLeftCorner(w, w).cwiseAbs().maxCoeff();
}

}  // namespace cmv
