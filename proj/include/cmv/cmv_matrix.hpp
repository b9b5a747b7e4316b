#pragma once

// CMV matrices and the zig-zag orthonormal Laurent basis.  A CMV matrix is
// the five-diagonal unitary representing multiplication by z in the
// orthonormal Laurent basis chi_0, chi_1, ... obtained by alternating the
// Szego polynomials phi_n and their reversed counterparts.

#include <vector>

#include "banded.hpp"
#include "core.hpp"

namespace cmv {

namespace detail {

// Shared five-diagonal fill.  Subdiagonal entries take rho_dn, superdiagonal
// entries rho_up; the definite case passes the same array twice, the
// quasi-definite case passes the signed variant below the diagonal.
template <class Real>
void fill_cmv(DenseMatrix<Real>& m, const std::vector<Cplx<Real>>& a,
              const std::vector<Real>& rho_up, const std::vector<Real>& rho_dn) {
  const int n = static_cast<int>(m.rows());
  m.setZero();
  for (int r = 0; r < n; ++r) {
    if (r % 2 == 0) {
      if (r >= 2) {
        m(r, r - 2) = rho_dn[r - 1] * rho_dn[r];
        m(r, r - 1) = std::conj(a[r - 1]) * rho_dn[r];
      }
      m(r, r) = -std::conj(a[r]) * a[r + 1];
      if (r + 1 < n) m(r, r + 1) = std::conj(a[r]) * rho_up[r + 1];
    } else {
      m(r, r - 1) = -rho_dn[r] * a[r + 1];
      m(r, r) = -std::conj(a[r]) * a[r + 1];
      if (r + 1 < n) m(r, r + 1) = -rho_up[r + 1] * a[r + 2];
      if (r + 2 < n) m(r, r + 2) = rho_up[r + 1] * rho_up[r + 2];
    }
  }
}

}  // namespace detail

// N x N truncation of the CMV matrix of a Schur sequence.  Entries use
// a_1 .. a_{N+1}; all of them must be strictly inside the unit disk.
template <class Real>
Banded<Real> build_cmv(const SchurSequence<Real>& seq, int N, Real tol = Real(default_tol)) {
  if (N < 2) throw ZeroArgument("cmv truncation needs order >= 2");
  std::vector<Cplx<Real>> a(N + 2);
  std::vector<Real> rh(N + 2, Real(0));
  a[0] = Cplx<Real>(1);
  for (int k = 1; k <= N + 1; ++k) {
    a[k] = seq.at(k);
    rh[k] = rho(a[k], tol);
    if (std::norm(a[k]) >= Real(1))
      throw InvalidSchurParameter("schur parameter outside the unit disk at index " +
                                  std::to_string(k));
  }
  Banded<Real> out;
  out.m.resize(N, N);
  detail::fill_cmv(out.m, a, rh, rh);
  out.lower = 2;
  out.upper = 2;
  out.valid = std::max(0, N - 2);
  return out;
}

// Read the Schur parameters back off a (definite) CMV truncation.  Inverts
// the five-diagonal fill: the rho chain comes from the products on the outer
// diagonals, the parameters from the inner columns.  Returns as many entries
// as the truncation determines.
template <class Real>
SchurSequence<Real> schur_from_cmv(const Banded<Real>& C, Real tol = Real(default_tol)) {
  const int N = C.n();
  if (N < 2) throw ZeroArgument("cmv truncation needs order >= 2");
  SchurSequence<Real> seq;
  seq.tail = Tail::Truncated;
  std::vector<Real> rh{Real(0), C.at(0, 1).real()};
  if (rh[1] <= tol) throw DegenerateBasis("leading complementary parameter vanishes");
  seq.prefix.push_back(-C.at(0, 0));
  for (int m = 2; m + 1 < N; ++m) {
    // rho_m from the outermost band, then a_m from an inner entry.
    const Real r = (m % 2 == 0) ? (C.at(m, m - 2) / rh[m - 1]).real()
                                : (C.at(m - 2, m) / rh[m - 1]).real();
    if (r <= tol) throw DegenerateBasis("complementary parameter chain vanishes at index " +
                                        std::to_string(m));
    rh.push_back(r);
    const Cplx<Real> am = (m % 2 == 0) ? -C.at(m - 1, m - 2) / rh[m - 1]
                                       : -C.at(m - 2, m - 1) / rh[m - 1];
    seq.prefix.push_back(am);
  }
  return seq;
}

// l(C) = beta I + sum_j alpha_j C^j + conj(alpha_j) (C^+)^j.  Hermitian and
// (4d+1)-diagonal; entries are truncation-independent for indices
// <= N - 2d - 2.
template <class Real>
Banded<Real> eval_on_cmv(const HermitianLaurent<Real>& l, const Banded<Real>& C) {
  const int N = C.n();
  const int d = l.degree();
  DenseMatrix<Real> acc = DenseMatrix<Real>::Zero(N, N);
  acc.diagonal().setConstant(Cplx<Real>(l.beta));
  DenseMatrix<Real> power = DenseMatrix<Real>::Identity(N, N);
  for (int j = 1; j <= d; ++j) {
    power = (power * C.m).eval();
    const DenseMatrix<Real> term = l.alpha[j - 1] * power;
    acc += term + term.adjoint();
  }
  Banded<Real> out;
  out.m = std::move(acc);
  out.lower = out.upper = 2 * d;
  out.valid = std::max(0, std::min(C.valid - 2 * (d - 1), N - 2 * d - 1));
  return out;
}

// First K+1 elements chi_0 .. chi_K of the orthonormal Laurent basis.
// chi_{2k} = z^{-k} phi*_{2k}, chi_{2k+1} = z^{-k} phi_{2k+1}, where phi_n are
// the orthonormal Szego polynomials of the sequence (phi_0 = 1/sqrt(u1)).
template <class Real>
std::vector<Laurent<Real>> orthonormal_laurent(const SchurSequence<Real>& seq, int K,
                                               Real tol = Real(default_tol)) {
  if (K < 0) throw ZeroArgument("basis prefix length must be nonnegative");
  if (!(seq.u1 > Real(0))) throw InvalidSchurParameter("total mass u1 must be positive");
  std::vector<Laurent<Real>> out;
  out.reserve(K + 1);
  std::vector<Cplx<Real>> phi{Cplx<Real>(Real(1) / std::sqrt(seq.u1))};
  out.push_back(Laurent<Real>{0, phi});
  for (int n = 1; n <= K; ++n) {
    const Cplx<Real> an = seq.at(n);
    if (std::norm(an) >= Real(1))
      throw InvalidSchurParameter("schur parameter outside the unit disk at index " +
                                  std::to_string(n));
    const Real rn = rho(an, tol);
    // rho_n phi_n = z phi_{n-1} + a_n phi*_{n-1}
    std::vector<Cplx<Real>> next(n + 1);
    for (int j = 0; j <= n; ++j) {
      Cplx<Real> v = j > 0 ? phi[j - 1] : Cplx<Real>(0);
      if (j < n) v += an * std::conj(phi[n - 1 - j]);
      next[j] = v / rn;
    }
    phi = std::move(next);
    Laurent<Real> chi;
    if (n % 2 == 0) {
      chi.low = -n / 2;
      chi.c.resize(n + 1);
      for (int i = 0; i <= n; ++i) chi.c[i] = std::conj(phi[n - i]);
    } else {
      chi.low = -(n - 1) / 2;
      chi.c = phi;
    }
    out.push_back(std::move(chi));
  }
  return out;
}

// Index of the Laurent power first reached by chi_n (the zig-zag order
// 1, z, z^-1, z^2, z^-2, ...).
inline int zigzag_new_power(int n) { return n % 2 == 0 ? -n / 2 : (n + 1) / 2; }

// Transformed zig-zag family chi_n = sum_m A(n,m) omega_m, where omega is the
// orthonormal basis of the target sequence b.  This is the basis of the
// solution attached to a reversed factor A, orthonormal only when A comes
// from a genuine CMV source.
template <class Real>
std::vector<Laurent<Real>> zigzag_from_factor(const Banded<Real>& A,
                                              const SchurSequence<Real>& b, int K) {
  if (A.n() < K + 1) throw InvalidFactor("factor too short for the requested order");
  const auto omega = orthonormal_laurent(b, K);
  std::vector<Laurent<Real>> out(K + 1);
  for (int n = 0; n <= K; ++n) {
    Laurent<Real> acc;
    for (int m = std::max(0, n - A.lower); m <= n; ++m) {
      const Cplx<Real> w = A.at(n, m);
      if (w == Cplx<Real>(0)) continue;
      acc = acc + w * omega[m];
    }
    out[n] = std::move(acc);
  }
  return out;
}

template <class Real>
std::vector<Laurent<Real>> zigzag_from_factor(const DarbouxFactor<Real>& A,
                                              const SchurSequence<Real>& b, int K) {
  A.require(K + 1);
  for (int k = 0; k + 2 <= K; ++k)
    if (A.t[k] == Cplx<Real>(0))
      throw InvalidFactor("degenerate factor: third band vanishes at index " +
                          std::to_string(k));
  return zigzag_from_factor(A.to_banded(K + 1), b, K);
}

// Read Schur parameters and mass off a zig-zag basis prefix: ratios of the
// extremal coefficients of each chi_n.
template <class Real>
SchurSequence<Real> schur_from_zigzag(const std::vector<Laurent<Real>>& chis,
                                      Real tol = Real(default_tol)) {
  if (chis.empty()) throw ZeroArgument("empty basis prefix");
  const Cplx<Real> c0 = chis[0].coeff(0);
  if (!(c0.real() > tol) || std::abs(c0.imag()) > tol)
    throw DegenerateBasis("chi_0 must be a positive constant");
  SchurSequence<Real> seq;
  seq.tail = Tail::Truncated;
  seq.u1 = Real(1) / (c0.real() * c0.real());
  for (int n = 1; n < static_cast<int>(chis.size()); ++n) {
    const int k = n / 2;
    Real scale(0);
    for (const auto& c : chis[n].c) scale = std::max(scale, std::abs(c));
    if (n % 2 == 0) {
      const Cplx<Real> lead = chis[n].coeff(-k);
      if (std::abs(lead) <= tol * scale)
        throw DegenerateBasis("extremal coefficient vanishes at index " + std::to_string(n));
      seq.prefix.push_back(std::conj(chis[n].coeff(k) / lead));
    } else {
      const Cplx<Real> lead = chis[n].coeff(k + 1);
      if (std::abs(lead) <= tol * scale)
        throw DegenerateBasis("extremal coefficient vanishes at index " + std::to_string(n));
      seq.prefix.push_back(chis[n].coeff(-k) / lead);
    }
  }
  return seq;
}

// Moments of the (possibly non-Hermitian) functional that makes a zig-zag
// family biorthogonal to chi_0: solve u[chi_n] = delta_{n0} / chi_0 along the
// zig-zag order.  A prefix chi_0 .. chi_{2K} determines u[z^-K .. z^K].
template <class Real = double>
struct FunctionalMoments {
  int K = 0;
  std::vector<Cplx<Real>> values;  // u[z^j], j = -K .. K

  Cplx<Real> u(int j) const {
    if (std::abs(j) > K) throw ZeroArgument("moment index out of range");
    return values[j + K];
  }
};

template <class Real>
FunctionalMoments<Real> moments_from_zigzag(const std::vector<Laurent<Real>>& chis,
                                            Real tol = Real(default_tol)) {
  if (chis.empty()) throw ZeroArgument("empty basis prefix");
  const Cplx<Real> c0 = chis[0].coeff(0);
  if (!(std::abs(c0) > tol)) throw DegenerateBasis("chi_0 must be a nonzero constant");
  const int K = (static_cast<int>(chis.size()) - 1) / 2;
  FunctionalMoments<Real> out;
  out.K = K;
  out.values.assign(2 * K + 1, Cplx<Real>(0));
  auto set = [&](int j, const Cplx<Real>& v) { out.values[j + K] = v; };
  set(0, Cplx<Real>(1) / (c0 * c0));
  for (int n = 1; n <= 2 * K; ++n) {
    const int p = zigzag_new_power(n);
    Real scale(0);
    for (const auto& c : chis[n].c) scale = std::max(scale, std::abs(c));
    const Cplx<Real> gamma = chis[n].coeff(p);
    if (std::abs(gamma) <= tol * scale)
      throw DegenerateBasis("extremal coefficient vanishes at index " + std::to_string(n));
    Cplx<Real> acc(0);  // u[chi_n] = 0 for n >= 1
    for (int j = chis[n].low; j <= chis[n].high(); ++j) {
      if (j == p) continue;
      const Cplx<Real> cj = chis[n].coeff(j);
      if (cj == Cplx<Real>(0)) continue;
      acc += cj * out.values[j + K];
    }
    set(p, -acc / gamma);
  }
  return out;
}

// max |(C C^+ - I)_{ij}| over the leading 2x2 block; zero exactly for CMV
// truncations (rows 0 and 1 are complete once N >= 4), strictly positive for
// spurious solutions.
template <class Real>
Real leading_unitarity_defect(const Banded<Real>& C) {
  if (C.n() < 4) throw ZeroArgument("need at least a 4x4 truncation");
  const auto rows = C.m.topRows(2);
  DenseMatrix<Real> g = rows * rows.adjoint();
  g -= DenseMatrix<Real>::Identity(2, 2);
  return g.cwiseAbs().maxCoeff();
}

}  // namespace cmv
