#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "banded.hpp"
#include "cmv_matrix.hpp"
#include "core.hpp"
#include "darboux_inverse.hpp"

namespace cmv {

// Schur data of a quasi-definite measure: parameters may leave the closed
// disk (never touching the circle), and u1 carries the sign of u[1].  The
// pivot signs are cumulative products of the gap signs.
template <class Real = double>
struct QuasiSchurSequence {
  SchurSequence<Real> seq;

  int e0() const { return seq.u1 < Real(0) ? -1 : 1; }

  int e(int n, Real tol = default_tol) const {
    int s = e0();
    for (int k = 1; k <= n; ++k) s *= gap_sign(seq.at(k), tol);
    return s;
  }

  std::vector<int> signs(int count, Real tol = default_tol) const {
    std::vector<int> out(count);
    int s = e0();
    for (int k = 0; k < count; ++k) {
      if (k > 0) s *= gap_sign(seq.at(k), tol);
      out[k] = s;
    }
    return out;
  }
};

template <class Real = double>
QuasiSchurSequence<Real> to_quasi(const SchurSequence<Real>& s) {
  return QuasiSchurSequence<Real>{s};
}

template <class Real = double>
struct QuasiCmvMatrix {
  Banded<Real> c;
  std::vector<int> e;  // diagonal of the sign matrix E, one per row

  DenseMatrix<Real> sign_matrix() const {
    const int n = static_cast<int>(e.size());
    DenseMatrix<Real> m = DenseMatrix<Real>::Zero(n, n);
    for (int j = 0; j < n; ++j) m(j, j) = Real(e[j]);
    return m;
  }
};

// Five-diagonal matrix of a quasi-definite measure.  Same shape as the
// unitary case; the only twist is that entries below the diagonal carry the
// signed square root, so C E C^* = E instead of C C^* = 1.
template <class Real = double>
QuasiCmvMatrix<Real> build_quasi_cmv(const QuasiSchurSequence<Real>& qs, int n,
                                     Real tol = default_tol) {
  if (n < 2) throw ZeroArgument("matrix dimension must be at least 2");
  const auto a = qs.seq.materialize(n + 2);
  std::vector<Real> up(n + 2, Real(0)), dn(n + 2, Real(0));
  for (int k = 1; k <= n + 1; ++k) {
    up[k] = rho(a[k], tol);
    dn[k] = rho_hat(a[k], tol);
  }
  QuasiCmvMatrix<Real> out;
  out.c.m = DenseMatrix<Real>::Zero(n, n);
  detail::fill_cmv<Real>(out.c.m, a, up, dn);
  out.c.lower = 2;
  out.c.upper = 2;
  out.c.valid = n - 2;
  out.e = qs.signs(n, tol);
  return out;
}

// Max abs entry of C E C^* - E and C^* E C - E over the interior window.
template <class Real = double>
Real quasi_unitarity_defect(const QuasiCmvMatrix<Real>& qc) {
  const int w = std::max(0, qc.c.valid - 2);
  if (w == 0) throw ZeroArgument("no interior window to compare");
  const DenseMatrix<Real> E = qc.sign_matrix();
  const DenseMatrix<Real> g1 = qc.c.m * E * qc.c.m.adjoint() - E;
  const DenseMatrix<Real> g2 = qc.c.m.adjoint() * E * qc.c.m - E;
  return std::max(g1.topLeftCorner(w, w).cwiseAbs().maxCoeff(),
                  g2.topLeftCorner(w, w).cwiseAbs().maxCoeff());
}

template <class Real = double>
struct QuasiForwardResult {
  DarbouxFactor<Real> factor;
  std::vector<int> factor_signs;  // diagonal of F in l(C) E = A F A^*
  QuasiSchurSequence<Real> target;
  std::vector<Real> pivots;  // signed pivots h_n
};

// Darboux step between quasi-definite measures: l(C) E = A F A^*.  Pivots may
// change sign freely; only an exact zero kills the construction.
template <class Real = double>
QuasiForwardResult<Real> quasi_forward(const QuasiSchurSequence<Real>& qa,
                                       const HermitianLaurent<Real>& l, int count,
                                       Real tol = default_tol) {
  if (l.degree() != 1) throw ZeroArgument("degree-one transformation expected");
  if (count < 1) throw ZeroArgument("need a positive parameter count");
  const Cplx<Real> alpha = l.alpha[0];
  const Real beta = l.beta;
  const std::vector<int> e = qa.signs(count + 3, tol);

  QuasiForwardResult<Real> out;
  out.target.seq.tail = Tail::Truncated;
  Cplx<Real> s_prev(0), t_prev2(0), t_prev1(0);
  Real r_prev(0);
  int f_prev1 = 1, f_prev2 = 1;
  for (int n = 0; n <= count; ++n) {
    const Cplx<Real> an = qa.seq.at(n);
    const Cplx<Real> an1 = qa.seq.at(n + 1);
    const Cplx<Real> an2 = qa.seq.at(n + 2);
    const Real h = e[n] * (beta - 2 * std::real(alpha * std::conj(an) * an1)) -
                   f_prev2 * std::norm(t_prev2) - f_prev1 * std::norm(s_prev);
    out.pivots.push_back(h);
    if (std::abs(h) <= tol)
      throw QuasiDefinitenessFailure("pivot vanishes at parameter " + std::to_string(n), n);
    const int fn = h > Real(0) ? 1 : -1;
    const Real rn = std::sqrt(std::abs(h));
    if (n >= 1) out.target.seq.prefix.push_back(an - s_prev * rho(an, tol) / r_prev);
    const Real rho1 = rho(an1, tol);
    const Real rho2 = rho(an2, tol);
    const Cplx<Real> sn = (Real(e[n + 1]) * rho1 * (std::conj(alpha) * an - alpha * an2) -
                           Real(f_prev1) * s_prev * std::conj(t_prev1)) /
                          (Real(fn) * rn);
    const Cplx<Real> tn = alpha * Real(e[n + 2]) * rho1 * rho2 / (Real(fn) * rn);
    out.factor.r.push_back(rn);
    out.factor.s.push_back(sn);
    out.factor.t.push_back(tn);
    out.factor_signs.push_back(fn);
    t_prev2 = t_prev1;
    t_prev1 = tn;
    s_prev = sn;
    r_prev = rn;
    f_prev2 = f_prev1;
    f_prev1 = fn;
  }
  out.target.seq.u1 =
      Real(out.factor_signs[0]) * std::abs(qa.seq.u1) * out.factor.r[0] * out.factor.r[0];
  return out;
}

template <class Real = double>
struct QuasiInverseParameters {
  Real er0sq = 1;            // e_0 r_0^2, sign included
  Cplx<Real> s0 = Cplx<Real>(0);
  Real er1sq = 1;            // e_1 r_1^2, sign included
};

template <class Real = double>
struct QuasiInverseResult {
  DarbouxFactor<Real> factor;
  std::vector<int> source_signs;  // e_n of the recovered measure
  QuasiSchurSequence<Real> source;
  std::vector<Real> pivots;  // signed pivots eps_n
};

// Inverse step in the quasi-definite setting.  The free corner data are the
// signed squares e0 r0^2 and e1 r1^2 together with s0; subsequent signs come
// out of the recurrence.
template <class Real = double>
QuasiInverseResult<Real> quasi_inverse(const QuasiSchurSequence<Real>& qb,
                                       const HermitianLaurent<Real>& l,
                                       const QuasiInverseParameters<Real>& free, int count,
                                       Real tol = default_tol) {
  if (l.degree() != 1) throw ZeroArgument("degree-one transformation expected");
  if (count < 1) throw ZeroArgument("need a positive step count");
  const Cplx<Real> alpha = l.alpha[0];
  const Real aa = std::abs(alpha);
  if (aa <= tol) throw ZeroArgument("transformation must have genuine degree one");
  const Real beta = l.beta;
  const Cplx<Real> u = alpha / aa;
  if (std::abs(free.er0sq) <= tol || std::abs(free.er1sq) <= tol)
    throw InvalidFactor("corner pivots must not vanish");
  const std::vector<int> f = qb.signs(count + 1, tol);

  QuasiInverseResult<Real> out;
  auto& r = out.factor.r;
  auto& s = out.factor.s;
  auto& t = out.factor.t;
  auto& e = out.source_signs;
  r = {std::sqrt(std::abs(free.er0sq)), std::sqrt(std::abs(free.er1sq))};
  s = {free.s0};
  e = {free.er0sq > Real(0) ? 1 : -1, free.er1sq > Real(0) ? 1 : -1};

  for (int n = 0; n <= count; ++n) {
    const Cplx<Real> bn = qb.seq.at(n);
    const Cplx<Real> bn1 = qb.seq.at(n + 1);
    const Cplx<Real> bn2 = qb.seq.at(n + 2);
    const Real eps = f[n] * (beta - 2 * std::real(alpha * std::conj(bn) * bn1)) -
                     e[n] * r[n] * r[n] - e[n + 1] * std::norm(s[n]);
    out.pivots.push_back(eps);
    if (std::abs(eps) <= tol)
      throw QuasiDefinitenessFailure("pivot vanishes at parameter " + std::to_string(n), n);
    e.push_back(eps > Real(0) ? 1 : -1);
    const Real tau = std::sqrt(std::abs(eps));
    const Real sig1 = rho(bn1, tol);
    const Real sig2 = rho(bn2, tol);
    t.push_back(u * Real(e[n + 2]) * Real(f[n]) * tau);
    s.push_back(std::conj(u) *
                (sig1 * (std::conj(alpha) * bn - alpha * bn2) -
                 Real(e[n + 1]) * Real(f[n]) * s[n] * r[n + 1]) /
                tau);
    r.push_back(aa * sig1 * sig2 / tau);
  }

  out.source.seq.tail = Tail::Truncated;
  out.source.seq.u1 = Real(e[0]) * std::abs(qb.seq.u1) / (r[0] * r[0]);
  for (int n = 1; n <= count + 1; ++n)
    out.source.seq.prefix.push_back(qb.seq.at(n) + s[n - 1] * rho(qb.seq.at(n), tol) / r[n]);
  return out;
}

template <class Real = double>
struct QuasiClassification {
  SolutionKind kind = SolutionKind::Spurious;
  Cplx<Real> a = Cplx<Real>(0);
  Real hermitian_residual = 0;
  Real cmv_residual = 0;
  int breakdown = -1;
  int e0 = 1;
  int e1 = 1;
};

// Classification of quasi inverse data.  Hermitian needs the corner pivot to
// match beta - 2 Re(alpha a); the quasi-CMV label additionally needs the
// signed admissibility relation for r1 and the right sign of e1, and the
// continuation must survive `depth` pivots.
template <class Real = double>
QuasiClassification<Real> quasi_classify(const QuasiSchurSequence<Real>& qb,
                                         const HermitianLaurent<Real>& l,
                                         const QuasiInverseParameters<Real>& free,
                                         int depth = 2, Real tol = default_tol,
                                         Real rel = Real(1e-8)) {
  if (l.degree() != 1) throw ZeroArgument("degree-one transformation expected");
  const Cplx<Real> alpha = l.alpha[0];
  const Real beta = l.beta;
  QuasiClassification<Real> out;
  out.e0 = free.er0sq > Real(0) ? 1 : -1;
  out.e1 = free.er1sq > Real(0) ? 1 : -1;
  const Real r0 = std::sqrt(std::abs(free.er0sq));
  const Real r1 = std::sqrt(std::abs(free.er1sq));
  const Real sig1 = rho(qb.seq.at(1), tol);
  out.a = qb.seq.at(1) + (free.s0 / r1) * sig1;
  const int f0 = qb.e0();
  const Real scale = std::max({std::abs(beta), r0 * r0, Real(1)});
  out.hermitian_residual =
      std::abs(Real(out.e0 * f0) * r0 * r0 - (beta - 2 * std::real(alpha * out.a))) / scale;

  const Real gap = Real(1) - std::norm(out.a);
  bool admissible = false;
  if (std::abs(gap) > rel) {
    const Real rho_a = std::sqrt(std::abs(gap));
    out.cmv_residual = std::abs(r1 - r0 * sig1 / rho_a) / std::max(r1, Real(1));
    const int want_e1 = out.e0 * (gap > Real(0) ? 1 : -1);
    admissible = out.cmv_residual <= rel && out.e1 == want_e1;
  } else {
    out.cmv_residual = Real(1);
  }

  try {
    quasi_inverse(qb, l, free, depth, tol);
  } catch (const Breakdown& ex) {
    out.breakdown = ex.index;
  }

  const bool herm = out.hermitian_residual <= rel;
  if (out.breakdown >= 0)
    out.kind = herm ? SolutionKind::HermitianSpurious : SolutionKind::Spurious;
  else if (herm && admissible)
    out.kind = std::abs(gap) > rel && gap > Real(0) ? SolutionKind::Cmv : SolutionKind::QuasiCmv;
  else if (herm)
    out.kind = SolutionKind::HermitianSpurious;
  else
    out.kind = SolutionKind::Spurious;
  return out;
}

}  // namespace cmv
