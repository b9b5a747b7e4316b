#pragma once

// Banded matrices stored densely (Eigen expressions stay available) with the
// band profile and a truncation-trust marker carried alongside.  Every
// operation on a finite section of an infinite banded operator is exact only
// on leading indices; `valid` counts how many leading rows/columns agree with
// the infinite object, and consumers clip comparisons accordingly.

#include <algorithm>

#include "core.hpp"

namespace cmv {

template <class Real = double>
struct Banded {
  DenseMatrix<Real> m;
  int lower = 0;   // nonzero subdiagonals
  int upper = 0;   // nonzero superdiagonals
  int valid = 0;   // leading rows/cols that are truncation-independent

  int n() const { return static_cast<int>(m.rows()); }

  Cplx<Real> at(int i, int j) const {
    if (i < 0 || j < 0 || i >= n() || j >= n()) return Cplx<Real>(0);
    return m(i, j);
  }
};

template <class Real>
Banded<Real> make_banded(DenseMatrix<Real> m, int lower, int upper, int valid) {
  return Banded<Real>{std::move(m), lower, upper, valid};
}

// Largest index window on which all operands are trustworthy.
template <class Real>
int common_interior(std::initializer_list<const Banded<Real>*> ops) {
  int v = std::numeric_limits<int>::max();
  for (const auto* b : ops) v = std::min({v, b->valid, b->n()});
  return std::max(v, 0);
}

// max |(A - B)_{ij}| over i, j < window.
template <class Real>
Real window_distance(const DenseMatrix<Real>& a, const DenseMatrix<Real>& b, int window) {
  const int w = std::min<int>({window, static_cast<int>(a.rows()), static_cast<int>(b.rows()),
                               static_cast<int>(a.cols()), static_cast<int>(b.cols())});
  if (w <= 0) return Real(0);
  return (a.topLeftCorner(w, w) - b.topLeftCorner(w, w)).cwiseAbs().maxCoeff();
}

template <class Real>
Real hermiticity_defect(const DenseMatrix<Real>& a, int window) {
  const int w = std::min<int>(window, static_cast<int>(a.rows()));
  if (w <= 0) return Real(0);
  auto blk = a.topLeftCorner(w, w);
  return (blk - blk.adjoint()).cwiseAbs().maxCoeff();
}

// Three-band lower triangular factor of a degree-one Darboux transformation,
// stored by its defining scalars.  The materialized matrix alternates
// conjugation down each column:
//
//   [ r0                     ]
//   [ s0    r1               ]
//   [ t0    conj(s1)  r2     ]
//   [       conj(t1)  s2  r3 ]   ...
//
// r_n > 0 always; t_n != 0 whenever the factor comes from a CMV source.
template <class Real = double>
struct DarbouxFactor {
  std::vector<Real> r;
  std::vector<Cplx<Real>> s;
  std::vector<Cplx<Real>> t;

  void require(int n) const {
    if (static_cast<int>(r.size()) < n || static_cast<int>(s.size()) < n - 1 ||
        static_cast<int>(t.size()) < n - 2)
      throw InvalidFactor("factor too short for the requested order");
    for (int k = 0; k < n; ++k)
      if (!(r[k] > Real(0))) throw InvalidFactor("factor diagonal must be positive");
  }

  Banded<Real> to_banded(int n) const {
    require(n);
    Banded<Real> out;
    out.m = DenseMatrix<Real>::Zero(n, n);
    for (int k = 0; k < n; ++k) {
      out.m(k, k) = r[k];
      if (k + 1 < n) out.m(k + 1, k) = k % 2 == 0 ? s[k] : std::conj(s[k]);
      if (k + 2 < n) out.m(k + 2, k) = k % 2 == 0 ? t[k] : std::conj(t[k]);
    }
    out.lower = 2;
    out.upper = 0;
    out.valid = n;
    return out;
  }
};

}  // namespace cmv
