#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "banded.hpp"
#include "cmv_matrix.hpp"
#include "core.hpp"

namespace cmv {

// Free data of an inverse step: the reversed factorization fixes nothing at
// the top-left corner, so r_0 > 0, s_0 and r_1 > 0 parametrize all solutions.
template <class Real = double>
struct InverseParameters {
  Real r0 = 1;
  Real r1 = 1;
  Cplx<Real> s0 = Cplx<Real>(0);
};

template <class Real = double>
struct InverseResult {
  DarbouxFactor<Real> factor;
  SchurSequence<Real> source;   // candidate Schur data read off the factor
  std::vector<Real> radicands;  // pivots tau_n^2
};

// Inverse Darboux step through l(z) = alpha z + beta + conj(alpha)/z: given
// the target b and a choice of free parameters, grow the factor A with
// l(D) = A^* A.  The pivot recurrence fails (radicand <= 0) exactly when the
// chosen parameters admit no continuation.
template <class Real = double>
InverseResult<Real> inverse(const SchurSequence<Real>& b, const HermitianLaurent<Real>& l,
                            const InverseParameters<Real>& free, int count,
                            Real tol = default_tol) {
  if (l.degree() != 1) throw ZeroArgument("degree-one transformation expected");
  if (count < 1) throw ZeroArgument("need a positive step count");
  const Cplx<Real> alpha = l.alpha[0];
  const Real aa = std::abs(alpha);
  if (aa <= tol) throw ZeroArgument("transformation must have genuine degree one");
  const Real beta = l.beta;
  const Cplx<Real> u = alpha / aa;  // phase of alpha

  InverseResult<Real> out;
  auto& r = out.factor.r;
  auto& s = out.factor.s;
  auto& t = out.factor.t;
  r = {free.r0, free.r1};
  s = {free.s0};
  if (free.r0 <= tol || free.r1 <= tol) throw InvalidFactor("diagonal entries must be positive");

  for (int n = 0; n <= count; ++n) {
    const Cplx<Real> bn = b.at(n);
    const Cplx<Real> bn1 = b.at(n + 1);
    const Cplx<Real> bn2 = b.at(n + 2);
    const Real rad = beta - 2 * std::real(alpha * std::conj(bn) * bn1) -
                     r[n] * r[n] - std::norm(s[n]);
    out.radicands.push_back(rad);
    if (rad <= tol)
      throw ReversedFactorizationBreakdown(
          "reversed factorization breaks down at parameter " + std::to_string(n), n);
    const Real tau = std::sqrt(rad);
    const Real sig1 = rho(bn1, tol);
    const Real sig2 = rho(bn2, tol);
    t.push_back(u * tau);
    s.push_back(std::conj(u) *
                (sig1 * (std::conj(alpha) * bn - alpha * bn2) - s[n] * r[n + 1]) / tau);
    r.push_back(aa * sig1 * sig2 / tau);
  }

  out.source.tail = Tail::Truncated;
  out.source.u1 = b.u1 / (free.r0 * free.r0);
  for (int n = 1; n <= count + 1; ++n)
    out.source.prefix.push_back(b.at(n) + s[n - 1] * rho(b.at(n), tol) / r[n]);
  return out;
}

// Read the source parameters directly off a factor: a_n = b_n + s_{n-1}
// sigma_n / r_n.  Works for any factor with positive diagonal, whether or not
// it came from `inverse`.  When `consistency` is given it receives the max
// residual of the coupling relation alpha a_{n+2} = conj(alpha) b_n -
// s_n r_{n+1} / sigma_{n+1}, which vanishes exactly when the factor belongs
// to the transformation l.
template <class Real = double>
SchurSequence<Real> recover_source_schur(const SchurSequence<Real>& b,
                                         const DarbouxFactor<Real>& factor,
                                         Real tol = default_tol,
                                         const HermitianLaurent<Real>* l = nullptr,
                                         Real* consistency = nullptr) {
  const int m = std::min(static_cast<int>(factor.s.size()),
                         static_cast<int>(factor.r.size()) - 1);
  if (m < 1) throw InvalidFactor("factor too short to read source parameters");
  SchurSequence<Real> a;
  a.tail = Tail::Truncated;
  a.u1 = b.u1 / (factor.r[0] * factor.r[0]);
  for (int n = 1; n <= m; ++n)
    a.prefix.push_back(b.at(n) + factor.s[n - 1] * rho(b.at(n), tol) / factor.r[n]);
  if (consistency) {
    if (!l || l->degree() != 1) throw ZeroArgument("degree-one transformation expected");
    const Cplx<Real> alpha = l->alpha[0];
    Real worst(0);
    for (int n = 0; n + 2 <= m; ++n) {
      const Cplx<Real> want = std::conj(alpha) * b.at(n) -
                              factor.s[n] * factor.r[n + 1] / rho(b.at(n + 1), tol);
      worst = std::max(worst, std::abs(alpha * a.prefix[n + 1] - want));
    }
    *consistency = worst;
  }
  return a;
}

enum class SolutionKind { Spurious, HermitianSpurious, Cmv, QuasiCmv };

inline const char* to_string(SolutionKind k) {
  switch (k) {
    case SolutionKind::Spurious: return "spurious";
    case SolutionKind::HermitianSpurious: return "hermitian-spurious";
    case SolutionKind::Cmv: return "cmv";
    case SolutionKind::QuasiCmv: return "quasi-cmv";
  }
  return "?";
}

template <class Real = double>
struct Classification {
  SolutionKind kind = SolutionKind::Spurious;
  Cplx<Real> a = Cplx<Real>(0);   // candidate first source parameter
  Real hermitian_residual = 0;    // |r0^2 - (beta - 2 Re alpha a)| / scale
  Real cmv_residual = 0;          // |r1 - r0 sigma1 / rho(a)| relative
  int breakdown = -1;             // first failing pivot, -1 if none within depth
};

// Decide what kind of solution a choice of free parameters produces.  The
// corner conditions are algebraic, but passing them is not enough: the
// continuation has to survive, so we run `depth` steps of the inverse
// recurrence and refuse the CMV label on any breakdown.
template <class Real = double>
Classification<Real> classify(const SchurSequence<Real>& b, const HermitianLaurent<Real>& l,
                              const InverseParameters<Real>& free, int depth = 2,
                              Real tol = default_tol, Real rel = Real(1e-8)) {
  if (l.degree() != 1) throw ZeroArgument("degree-one transformation expected");
  const Cplx<Real> alpha = l.alpha[0];
  const Real beta = l.beta;
  Classification<Real> out;
  const Real sig1 = rho(b.at(1), tol);
  out.a = b.at(1) + (free.s0 / free.r1) * sig1;
  const Real scale = std::max({std::abs(beta), free.r0 * free.r0, Real(1)});
  out.hermitian_residual =
      std::abs(free.r0 * free.r0 - (beta - 2 * std::real(alpha * out.a))) / scale;
  const Real gap = Real(1) - std::norm(out.a);
  const Real rho_hat_a = std::sqrt(std::abs(gap));
  if (rho_hat_a > tol)
    out.cmv_residual = std::abs(free.r1 - free.r0 * sig1 / rho_hat_a) /
                       std::max(free.r1, Real(1));
  else
    out.cmv_residual = Real(1);

  try {
    inverse(b, l, free, depth, tol);
  } catch (const Breakdown& e) {
    out.breakdown = e.index;
  }

  const bool herm = out.hermitian_residual <= rel;
  const bool inside = gap > rel;
  const bool admissible = inside && out.cmv_residual <= rel;
  if (out.breakdown >= 0)
    out.kind = herm ? SolutionKind::HermitianSpurious : SolutionKind::Spurious;
  else if (herm && admissible)
    out.kind = SolutionKind::Cmv;
  else if (herm)
    out.kind = SolutionKind::HermitianSpurious;
  else
    out.kind = SolutionKind::Spurious;
  return out;
}

// Free parameters that point the inverse step at a prescribed first source
// parameter a1 inside the disk; the unique CMV-admissible choice.
template <class Real = double>
InverseParameters<Real> cmv_parameters_for(const SchurSequence<Real>& b,
                                           const HermitianLaurent<Real>& l, Cplx<Real> a1,
                                           Real tol = default_tol) {
  if (l.degree() != 1) throw ZeroArgument("degree-one transformation expected");
  if (std::abs(a1) >= Real(1))
    throw InfeasibleTarget("prescribed parameter must lie inside the disk");
  const Cplx<Real> alpha = l.alpha[0];
  const Real r0sq = l.beta - 2 * std::real(alpha * a1);
  if (r0sq <= tol)
    throw InfeasibleTarget("prescribed parameter is not reachable: corner pivot fails");
  InverseParameters<Real> p;
  p.r0 = std::sqrt(r0sq);
  const Real sig1 = rho(b.at(1), tol);
  const Real rho1 = rho(a1, tol);
  p.r1 = p.r0 * sig1 / rho1;
  p.s0 = (a1 - b.at(1)) * p.r1 / sig1;
  return p;
}

// Convert free data given at positions (r1, r2, s1) back to the canonical
// corner triple by running the pivot recurrence backwards one step.
template <class Real = double>
InverseParameters<Real> parameters_from_interior(const SchurSequence<Real>& b,
                                                 const HermitianLaurent<Real>& l, Real r1,
                                                 Real r2, Cplx<Real> s1,
                                                 Real tol = default_tol) {
  if (l.degree() != 1) throw ZeroArgument("degree-one transformation expected");
  const Cplx<Real> alpha = l.alpha[0];
  const Real aa = std::abs(alpha);
  if (aa <= tol) throw ZeroArgument("transformation must have genuine degree one");
  if (r1 <= tol || r2 <= tol) throw InvalidFactor("diagonal entries must be positive");
  const Cplx<Real> u = alpha / aa;
  const Real sig1 = rho(b.at(1), tol);
  const Real sig2 = rho(b.at(2), tol);
  const Real tau0 = aa * sig1 * sig2 / r2;
  InverseParameters<Real> p;
  p.r1 = r1;
  p.s0 = (sig1 * (std::conj(alpha) - alpha * b.at(2)) - u * s1 * tau0) / r1;
  const Real r0sq = l.beta - 2 * std::real(alpha * b.at(1)) - std::norm(p.s0) - tau0 * tau0;
  if (r0sq <= tol)
    throw InfeasibleTarget("interior data admits no corner: pivot fails");
  p.r0 = std::sqrt(r0sq);
  return p;
}

template <class Real = double>
struct SolutionMatrix {
  DenseMatrix<Real> m;
  int valid = 0;
};

// Solution matrix C = A D A^{-1} of the inverse problem.  Banded only when
// the parameters are admissible; spurious choices leak outside the CMV
// pattern, which is exactly what the classification measures.
template <class Real = double>
SolutionMatrix<Real> build_solution_matrix(const DarbouxFactor<Real>& factor,
                                           const SchurSequence<Real>& b, int n,
                                           Real tol = default_tol) {
  const Banded<Real> D = build_cmv(b, n, tol);
  const Banded<Real> A = factor.to_banded(n);
  SolutionMatrix<Real> out;
  const DenseMatrix<Real> lhs = A.m * D.m;
  out.m = A.m.template triangularView<Eigen::Lower>()
              .template solve<Eigen::OnTheRight>(lhs);
  out.valid = std::max(0, D.valid - 2);
  return out;
}

template <class Real = double>
Real solution_cmv_defect(const SolutionMatrix<Real>& C, const SchurSequence<Real>& a, int n,
                         Real tol = default_tol) {
  const Banded<Real> ref = build_cmv(a, n, tol);
  const int w = std::min(C.valid, ref.valid);
  if (w <= 0) throw ZeroArgument("no interior window to compare");
  return (C.m.topLeftCorner(w, w) - ref.m.topLeftCorner(w, w)).cwiseAbs().maxCoeff();
}

}  // namespace cmv
