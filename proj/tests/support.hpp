#pragma once

// Shared helpers for the test suite: deterministic RNG draws, quadrature
// oracles on the unit circle, and a plain dense Cholesky used as an
// independent cross-check of the streaming factorizations.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include <cmv/cmv.hpp>

namespace testsupport {

using Cx = std::complex<double>;

inline std::mt19937& rng() {
  static std::mt19937 gen(0x5eed1234u);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

// Uniform draw from the closed disk of the given radius.
inline Cx disk(double radius) {
  const double r = radius * std::sqrt(uniform(0.0, 1.0));
  const double th = uniform(0.0, 2 * std::numbers::pi);
  return Cx(r * std::cos(th), r * std::sin(th));
}

inline cmv::SchurSequence<double> random_schur(int len, double radius,
                                               cmv::Tail tail = cmv::Tail::Zero) {
  cmv::SchurSequence<double> s;
  s.tail = tail;
  s.prefix.resize(len);
  for (auto& a : s.prefix) a = disk(radius);
  return s;
}

// Positive-on-the-circle degree-1 polynomial: beta > 2|alpha| with margin.
inline cmv::HermitianLaurent<double> random_positive_laurent() {
  cmv::HermitianLaurent<double> l;
  Cx a = disk(1.0);
  while (std::abs(a) < 0.05) a = disk(1.0);
  l.alpha = {a};
  l.beta = 2 * std::abs(a) + uniform(0.05, 1.5);
  return l;
}

// Trapezoid rule on the circle; spectrally accurate for smooth weights.
// Returns u[z^j] = (1/2pi) \int w(theta) e^{i j theta} dtheta.
inline Cx circle_moment(const std::function<double(double)>& weight, int j,
                        int points = 4096) {
  Cx acc(0.0);
  for (int k = 0; k < points; ++k) {
    const double th = 2 * std::numbers::pi * k / points;
    acc += weight(th) * std::polar(1.0, j * th);
  }
  return acc / double(points);
}

// u[chi_j conj(chi_i)] against an explicit weight; used to check
// orthonormality of computed bases.
inline Cx circle_pairing(const std::function<double(double)>& weight,
                         const cmv::Laurent<double>& f, const cmv::Laurent<double>& g,
                         int points = 4096) {
  Cx acc(0.0);
  for (int k = 0; k < points; ++k) {
    const double th = 2 * std::numbers::pi * k / points;
    const Cx z = std::polar(1.0, th);
    acc += weight(th) * f.eval(z) * std::conj(g.eval(z));
  }
  return acc / double(points);
}

// Textbook dense Cholesky with pivot reporting: returns the breakdown index,
// or nullopt if the whole matrix factors.  L is filled as far as it got.
inline std::optional<int> dense_cholesky_breakdown(const Eigen::MatrixXcd& M,
                                                   Eigen::MatrixXcd& L,
                                                   double rel_tol = 1e-12) {
  const int n = static_cast<int>(M.rows());
  const double scale = M.diagonal().real().cwiseAbs().maxCoeff();
  L = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    double d = M(j, j).real();
    for (int k = 0; k < j; ++k) d -= std::norm(L(j, k));
    if (d <= rel_tol * scale) return j;
    L(j, j) = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      Cx v = M(i, j);
      for (int k = 0; k < j; ++k) v -= L(i, k) * std::conj(L(j, k));
      L(i, j) = v / L(j, j).real();
    }
  }
  return std::nullopt;
}

inline double chebyshev_u(int n, double t) {
  if (n < 0) return 0.0;
  double um1 = 0.0, u = 1.0;
  for (int k = 0; k < n; ++k) {
    const double next = 2 * t * u - um1;
    um1 = u;
    u = next;
  }
  return u;
}

}  // namespace testsupport
