#pragma once

// Scalar-level building blocks for CMV/Darboux computations: Schur parameter
// sequences, Hermitian Laurent polynomials, Laurent-coefficient arithmetic,
// and the error taxonomy shared by every module.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace cmv {

template <class Real>
using Cplx = std::complex<Real>;

template <class Real>
using DenseMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <class Real>
using RealDenseMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

template <class Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

inline constexpr double default_tol = 1e-10;

// ---------------------------------------------------------------------------
// Errors

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroArgument : Error { using Error::Error; };
struct UnimodularParameter : Error { using Error::Error; };
struct InvalidSchurParameter : Error { using Error::Error; };
struct DegenerateBasis : Error { using Error::Error; };
struct InvalidFactor : Error { using Error::Error; };
struct NonSymmetricMeasure : Error { using Error::Error; };
struct InfeasibleTarget : Error { using Error::Error; };
struct BlowUp : Error { using Error::Error; };

// Breakdown of a pivoted recurrence/factorization; `index` is the first step
// that could not be completed.
struct Breakdown : Error {
  int index;
  Breakdown(const std::string& what, int n) : Error(what), index(n) {}
};

struct NotPositiveDefinite : Breakdown { using Breakdown::Breakdown; };
struct NotQuasiDefinite : Breakdown { using Breakdown::Breakdown; };
struct ReversedFactorizationBreakdown : Breakdown { using Breakdown::Breakdown; };
struct BlockBreakdown : Breakdown { using Breakdown::Breakdown; };
struct QuasiDefinitenessFailure : Breakdown { using Breakdown::Breakdown; };

// ---------------------------------------------------------------------------
// Schur parameter sequences

enum class Tail { Zero, Constant, Truncated };

// A sequence a_1, a_2, ... of Schur parameters together with the total mass
// u[1] of the underlying functional.  a_0 = 1 by convention and is never
// stored.  The tail rule extends the stored prefix: Zero and Constant are
// exact infinite tails, Truncated marks everything past the prefix as
// unknown (it reads as zero, but only the prefix is trustworthy).
template <class Real = double>
struct SchurSequence {
  std::vector<Cplx<Real>> prefix;
  Tail tail = Tail::Zero;
  Cplx<Real> tail_value{};
  Real u1 = Real(1);

  Cplx<Real> at(int n) const {
    if (n < 0) throw ZeroArgument("schur index must be nonnegative");
    if (n == 0) return Cplx<Real>(1);
    if (n <= static_cast<int>(prefix.size())) return prefix[n - 1];
    return tail == Tail::Constant ? tail_value : Cplx<Real>(0);
  }

  // Length of the exactly known prefix (infinite tails know everything).
  int known() const {
    return tail == Tail::Truncated ? static_cast<int>(prefix.size())
                                   : std::numeric_limits<int>::max();
  }

  // a_0 = 1, a_1, ..., a_{count-1}; out[n] is a_n.
  std::vector<Cplx<Real>> materialize(int count) const {
    std::vector<Cplx<Real>> out(count);
    for (int n = 0; n < count; ++n) out[n] = at(n);
    return out;
  }
};

// rho_n = sqrt(|1 - |a|^2|); the unsigned complementary parameter.  Valid for
// both the definite (|a| < 1) and quasi-definite (|a| != 1) regimes.
template <class Real>
Real rho(const Cplx<Real>& a, Real tol = Real(default_tol)) {
  const Real gap = Real(1) - std::norm(a);
  if (std::abs(gap) <= tol * tol)
    throw UnimodularParameter("schur parameter has unit modulus");
  return std::sqrt(std::abs(gap));
}

// Signed variant: rho_hat = sg(1 - |a|^2) rho.
template <class Real>
Real rho_hat(const Cplx<Real>& a, Real tol = Real(default_tol)) {
  const Real r = rho(a, tol);
  return std::norm(a) > Real(1) ? -r : r;
}

// Sign of 1 - |a|^2; refuses the unit circle where it is ill-defined.
template <class Real>
int gap_sign(const Cplx<Real>& a, Real tol = Real(default_tol)) {
  const Real gap = Real(1) - std::norm(a);
  if (std::abs(gap) <= tol * tol)
    throw UnimodularParameter("schur parameter has unit modulus");
  return gap > Real(0) ? 1 : -1;
}

// ---------------------------------------------------------------------------
// Hermitian Laurent polynomials  l(z) = beta + sum_j alpha_j z^j + conj(alpha_j) z^-j

template <class Real = double>
struct HermitianLaurent {
  Real beta = Real(0);
  std::vector<Cplx<Real>> alpha;  // alpha[j-1] multiplies z^j; highest must be nonzero

  int degree() const { return static_cast<int>(alpha.size()); }

  Cplx<Real> coeff(int j) const {
    const int d = degree();
    if (j == 0) return Cplx<Real>(beta);
    if (j > 0 && j <= d) return alpha[j - 1];
    if (j < 0 && -j <= d) return std::conj(alpha[-j - 1]);
    return Cplx<Real>(0);
  }
};

template <class Real>
Cplx<Real> laurent_eval(const HermitianLaurent<Real>& l, const Cplx<Real>& z) {
  if (z == Cplx<Real>(0)) throw ZeroArgument("cannot evaluate a laurent polynomial at 0");
  const Cplx<Real> zi = Cplx<Real>(1) / z;
  Cplx<Real> acc(l.beta, 0), zp(1, 0), zm(1, 0);
  for (int j = 1; j <= l.degree(); ++j) {
    zp *= z;
    zm *= zi;
    acc += l.alpha[j - 1] * zp + std::conj(l.alpha[j - 1]) * zm;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// General Laurent-coefficient vectors (elements of the Laurent space)

template <class Real = double>
struct Laurent {
  int low = 0;                 // exponent carried by c[0]
  std::vector<Cplx<Real>> c;   // coefficients of z^low .. z^(low + size - 1)

  int high() const { return low + static_cast<int>(c.size()) - 1; }

  Cplx<Real> coeff(int k) const {
    const int i = k - low;
    if (i < 0 || i >= static_cast<int>(c.size())) return Cplx<Real>(0);
    return c[i];
  }

  Cplx<Real> eval(const Cplx<Real>& z) const {
    if (z == Cplx<Real>(0) && low < 0)
      throw ZeroArgument("cannot evaluate a laurent polynomial at 0");
    // Horner over the support from the top power down.
    Cplx<Real> acc(0);
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) acc = acc * z + c[i];
    Cplx<Real> shift(1);
    if (low > 0)
      for (int k = 0; k < low; ++k) shift *= z;
    else
      for (int k = 0; k < -low; ++k) shift /= z;
    return acc * shift;
  }

  // f_*(z) = conj(f(1/conj(z))): conjugate coefficients, negate exponents.
  Laurent substar() const {
    Laurent out;
    out.low = -high();
    out.c.resize(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
      out.c[i] = std::conj(c[c.size() - 1 - i]);
    return out;
  }
};

template <class Real>
Laurent<Real> operator+(const Laurent<Real>& f, const Laurent<Real>& g) {
  if (f.c.empty()) return g;
  if (g.c.empty()) return f;
  Laurent<Real> out;
  out.low = std::min(f.low, g.low);
  const int hi = std::max(f.high(), g.high());
  out.c.assign(hi - out.low + 1, Cplx<Real>(0));
  for (int k = out.low; k <= hi; ++k) out.c[k - out.low] = f.coeff(k) + g.coeff(k);
  return out;
}

template <class Real>
Laurent<Real> operator-(const Laurent<Real>& f, const Laurent<Real>& g) {
  Laurent<Real> neg = g;
  for (auto& x : neg.c) x = -x;
  return f + neg;
}

template <class Real>
Laurent<Real> operator*(const Laurent<Real>& f, const Laurent<Real>& g) {
  Laurent<Real> out;
  if (f.c.empty() || g.c.empty()) return out;
  out.low = f.low + g.low;
  out.c.assign(f.c.size() + g.c.size() - 1, Cplx<Real>(0));
  for (std::size_t i = 0; i < f.c.size(); ++i)
    for (std::size_t j = 0; j < g.c.size(); ++j) out.c[i + j] += f.c[i] * g.c[j];
  return out;
}

template <class Real>
Laurent<Real> operator*(const Cplx<Real>& s, const Laurent<Real>& f) {
  Laurent<Real> out = f;
  for (auto& x : out.c) x *= s;
  return out;
}

template <class Real>
Laurent<Real> operator*(Real s, const Laurent<Real>& f) {
  return Cplx<Real>(s) * f;
}

// Multiply by z^k.
template <class Real>
Laurent<Real> shifted(const Laurent<Real>& f, int k) {
  Laurent<Real> out = f;
  out.low += k;
  return out;
}

template <class Real>
Laurent<Real> laurent_from(const HermitianLaurent<Real>& l) {
  const int d = l.degree();
  Laurent<Real> out;
  out.low = -d;
  out.c.resize(2 * d + 1);
  for (int k = -d; k <= d; ++k) out.c[k + d] = l.coeff(k);
  return out;
}

// l(z) = scale * prod_j (z - zeta_j)(1/z - conj(zeta_j)); real on the unit
// circle by construction, nonnegative there when scale > 0.
template <class Real>
HermitianLaurent<Real> laurent_from_conjugate_zeros(const std::vector<Cplx<Real>>& zeros,
                                                    Real scale = Real(1)) {
  if (scale == Real(0)) throw ZeroArgument("zero scale gives the zero polynomial");
  Laurent<Real> acc{0, {Cplx<Real>(scale)}};
  for (const auto& zeta : zeros) {
    Laurent<Real> factor;
    factor.low = -1;
    factor.c = {-zeta, Cplx<Real>(Real(1) + std::norm(zeta)), -std::conj(zeta)};
    acc = acc * factor;
  }
  HermitianLaurent<Real> out;
  const int d = static_cast<int>(zeros.size());
  out.beta = acc.coeff(0).real();
  out.alpha.resize(d);
  for (int j = 1; j <= d; ++j)
    out.alpha[j - 1] = (acc.coeff(j) + std::conj(acc.coeff(-j))) / Real(2);
  return out;
}

}  // namespace cmv
