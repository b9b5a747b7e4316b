#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "cmv_matrix.hpp"
#include "core.hpp"
#include "darboux_forward.hpp"

namespace cmv {

// Right-hand side of the Schur flow da_n/dt = (1-|a_n|^2)(lambda a_{n+1} -
// conj(lambda) a_{n-1}) with a_0 = 1 and the closure a_{L+1} = 0.  The state
// vector holds a_1..a_L.
template <class Real = double>
std::vector<Cplx<Real>> flow_rhs(const std::vector<Cplx<Real>>& a, Cplx<Real> lambda) {
  const int L = static_cast<int>(a.size());
  std::vector<Cplx<Real>> out(L);
  for (int n = 1; n <= L; ++n) {
    const Cplx<Real> prev = n == 1 ? Cplx<Real>(1) : a[n - 2];
    const Cplx<Real> next = n == L ? Cplx<Real>(0) : a[n];
    const Real gap = Real(1) - std::norm(a[n - 1]);
    out[n - 1] = gap * (lambda * next - std::conj(lambda) * prev);
  }
  return out;
}

// Fixed-step RK4 for the closed flow; `step` is a cap on the step size, the
// actual step divides `time` evenly.  Negative time runs the flow backwards.
template <class Real = double>
std::vector<Cplx<Real>> integrate_flow(std::vector<Cplx<Real>> a, Cplx<Real> lambda,
                                       Real time, Real step, Real margin = Real(1e-6)) {
  if (std::abs(std::abs(lambda) - Real(1)) > Real(1e-12))
    throw ZeroArgument("flow direction must be unimodular");
  if (step <= Real(0)) throw ZeroArgument("step must be positive");
  if (time == Real(0)) return a;
  const int L = static_cast<int>(a.size());
  const int nsteps = std::max(1, static_cast<int>(std::ceil(std::abs(time) / step)));
  const Real h = time / Real(nsteps);
  std::vector<Cplx<Real>> k1, k2, k3, k4, tmp(L);
  for (int s = 0; s < nsteps; ++s) {
    k1 = flow_rhs(a, lambda);
    for (int i = 0; i < L; ++i) tmp[i] = a[i] + (h / 2) * k1[i];
    k2 = flow_rhs(tmp, lambda);
    for (int i = 0; i < L; ++i) tmp[i] = a[i] + (h / 2) * k2[i];
    k3 = flow_rhs(tmp, lambda);
    for (int i = 0; i < L; ++i) tmp[i] = a[i] + h * k3[i];
    k4 = flow_rhs(tmp, lambda);
    for (int i = 0; i < L; ++i)
      a[i] += (h / 6) * (k1[i] + Real(2) * k2[i] + Real(2) * k3[i] + k4[i]);
    for (int i = 0; i < L; ++i)
      if (std::abs(a[i]) >= Real(1) - margin)
        throw BlowUp("parameter reached the unit circle during integration");
  }
  return a;
}

// One Darboux step along the flow: the transformation through l(z) = 1 +
// delta (lambda z + conj(lambda)/z) agrees with the time-delta flow map to
// first order.  Two parameters fall off the end of the window.
template <class Real = double>
SchurSequence<Real> darboux_flow_step(const SchurSequence<Real>& a, Cplx<Real> lambda,
                                      Real delta, int count, Real tol = default_tol) {
  if (std::abs(std::abs(lambda) - Real(1)) > Real(1e-12))
    throw ZeroArgument("flow direction must be unimodular");
  if (delta <= Real(0) || delta >= Real(0.5))
    throw ZeroArgument("step size must sit in (0, 1/2)");
  HermitianLaurent<Real> l;
  l.beta = Real(1);
  l.alpha = {delta * lambda};
  return forward(a, l, count, tol).target;
}

// Defect of the Lax form dC/dt = [pi(Re(lambda C)), C], where pi takes the
// strictly upper part minus the strictly lower part.  The derivative is a
// central difference of the integrated flow, so the defect is O(h^2) for a
// genuine solution.
template <class Real = double>
Real lax_residual(const std::vector<Cplx<Real>>& a, Cplx<Real> lambda, Real h,
                  int interior = -1, Real tol = default_tol) {
  const int L = static_cast<int>(a.size());
  if (L < 8) throw ZeroArgument("state too short for an interior window");
  if (interior < 0) interior = L - 6;  // truncation pollutes the last rows
  if (interior > L) throw ZeroArgument("window exceeds the state length");
  SchurSequence<Real> seq;
  seq.prefix = a;
  seq.tail = Tail::Zero;
  const Banded<Real> C0 = build_cmv(seq, L, tol);

  const auto ap = integrate_flow(a, lambda, h, h / 4);
  const auto am = integrate_flow(a, lambda, -h, h / 4);
  SchurSequence<Real> sp, sm;
  sp.prefix = ap;
  sm.prefix = am;
  const Banded<Real> Cp = build_cmv(sp, L, tol);
  const Banded<Real> Cm = build_cmv(sm, L, tol);
  const DenseMatrix<Real> dC = (Cp.m - Cm.m) / (2 * h);

  const DenseMatrix<Real> H =
      (lambda * C0.m + std::conj(lambda) * C0.m.adjoint()) / Real(2);
  DenseMatrix<Real> P = H.template triangularView<Eigen::StrictlyUpper>();
  P -= DenseMatrix<Real>(H.template triangularView<Eigen::StrictlyLower>());
  const DenseMatrix<Real> R = P * C0.m - C0.m * P;

  return (dC - R).topLeftCorner(interior, interior).cwiseAbs().maxCoeff();
}

}  // namespace cmv
