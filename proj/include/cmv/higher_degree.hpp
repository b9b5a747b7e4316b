#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "banded.hpp"
#include "cmv_matrix.hpp"
#include "core.hpp"
#include "factorization.hpp"

namespace cmv {

template <class Real = double>
struct ForwardDegreeResult {
  Banded<Real> factor;                       // Cholesky factor of l(C)
  SchurSequence<Real> target;                // parameters read off the new basis
  std::vector<Laurent<Real>> target_basis;   // zig-zag basis of the target measure
};

// Darboux step for l of any degree d: factor l(C) = A A^*, pull the target
// zig-zag basis through A in function space, and read the parameters off the
// extremal coefficients.  Agrees with the streaming degree-one path but pays
// for a full matrix build, so the window shrinks with d.
template <class Real = double>
ForwardDegreeResult<Real> forward_degree(const SchurSequence<Real>& a,
                                         const HermitianLaurent<Real>& l, int n,
                                         Real tol = default_tol) {
  const int d = l.degree();
  if (d < 1) throw ZeroArgument("transformation must have positive degree");
  const Banded<Real> C = build_cmv(a, n, tol);
  const Banded<Real> M = eval_on_cmv(l, C);
  ForwardDegreeResult<Real> out;
  out.factor = banded_cholesky(M);
  const int K = out.factor.valid - 1;
  if (K < 3) throw ZeroArgument("truncation too small for this degree");
  const auto chis = orthonormal_laurent(a, K, tol);
  auto& omegas = out.target_basis;
  omegas.reserve(K + 1);
  for (int k = 0; k <= K; ++k) {
    Laurent<Real> acc = chis[k];
    for (int m = std::max(0, k - out.factor.lower); m < k; ++m)
      acc = acc + (-out.factor.m(k, m)) * omegas[m];
    const Real diag = std::real(out.factor.m(k, k));
    omegas.push_back((Cplx<Real>(1) / diag) * acc);
  }
  out.target = schur_from_zigzag(omegas, tol);
  return out;
}

template <class Real = double>
struct InverseDegreeResult {
  DenseMatrix<Real> factor;  // lower banded, bandwidth 2d, l(D) = factor^* factor
  int block = 0;             // block size 2d
  int blocks = 0;            // completed diagonal blocks
};

// Inverse step for degree d: grow the factor of the reversed factorization
// block by block.  The corner block R0 (2d x 2d, lower triangular, positive
// diagonal) is free and parametrizes every solution; each further block is
// forced, and the construction dies where the block pivot loses positivity.
template <class Real = double>
InverseDegreeResult<Real> inverse_degree(const SchurSequence<Real>& b,
                                         const HermitianLaurent<Real>& l,
                                         const DenseMatrix<Real>& R0, int blocks,
                                         Real tol = default_tol) {
  const int d = l.degree();
  if (d < 1) throw ZeroArgument("transformation must have positive degree");
  const int q = 2 * d;
  if (R0.rows() != q || R0.cols() != q)
    throw InvalidFactor("corner block must be 2d x 2d");
  for (int i = 0; i < q; ++i) {
    if (std::real(R0(i, i)) <= tol || std::abs(std::imag(R0(i, i))) > tol)
      throw InvalidFactor("corner block needs a positive diagonal");
    for (int j = i + 1; j < q; ++j)
      if (std::abs(R0(i, j)) > tol) throw InvalidFactor("corner block must be lower triangular");
  }
  if (blocks < 1) throw ZeroArgument("need a positive block count");

  const int n = q * (blocks + 2) + 4 * d + 2;
  const Banded<Real> D = build_cmv(b, n, tol);
  const Banded<Real> M = eval_on_cmv(l, D);

  InverseDegreeResult<Real> out;
  out.block = q;
  out.blocks = blocks;
  const int nn = q * (blocks + 1);
  out.factor = DenseMatrix<Real>::Zero(nn, nn);
  DenseMatrix<Real> R = R0;
  const Real scale = std::max(M.m.cwiseAbs().maxCoeff(), Real(1));
  for (int k = 0; k < blocks; ++k) {
    out.factor.block(q * k, q * k, q, q) = R;
    const DenseMatrix<Real> L = M.m.block(q * k, q * k, q, q);
    const DenseMatrix<Real> Msub = M.m.block(q * (k + 1), q * k, q, q);
    for (int i = 0; i < q; ++i)
      if (std::abs(Msub(i, i)) <= tol * scale)
        throw DegenerateBasis("degenerate band: subdiagonal block is singular");
    const DenseMatrix<Real> P = L - R.adjoint() * R;
    Eigen::SelfAdjointEigenSolver<DenseMatrix<Real>> es(P);
    if (es.eigenvalues().minCoeff() <= tol * scale)
      throw BlockBreakdown("block pivot loses positivity at block " + std::to_string(k), k);
    const DenseMatrix<Real> abs_S = es.operatorSqrt();
    // Polar part: |S| M^{-1} = Q U with U upper triangular, then S = Q^* |S|.
    DenseMatrix<Real> X =
        Msub.template triangularView<Eigen::Upper>().template solve<Eigen::OnTheRight>(abs_S);
    Eigen::HouseholderQR<DenseMatrix<Real>> qr(X);
    DenseMatrix<Real> Q = qr.householderQ();
    DenseMatrix<Real> U = qr.matrixQR().template triangularView<Eigen::Upper>();
    for (int i = 0; i < q; ++i) {
      const Cplx<Real> di = U(i, i);
      if (std::abs(di) <= tol * scale)
        throw BlockBreakdown("degenerate polar factor at block " + std::to_string(k), k);
      const Cplx<Real> phase = di / std::abs(di);
      U.row(i) *= std::conj(phase);
      Q.col(i) *= phase;
    }
    out.factor.block(q * (k + 1), q * k, q, q) = Q.adjoint() * abs_S;
    const DenseMatrix<Real> Uadj = U.adjoint();
    R = Uadj.template triangularView<Eigen::Lower>().solve(
        DenseMatrix<Real>::Identity(q, q));
  }
  out.factor.block(q * blocks, q * blocks, q, q) = R;
  return out;
}

// Residual of the reversed factorization: max abs entry of A^* A - l(D) over
// the exact window of the truncation.
template <class Real = double>
Real reversed_factorization_residual(const InverseDegreeResult<Real>& inv,
                                     const SchurSequence<Real>& b,
                                     const HermitianLaurent<Real>& l,
                                     Real tol = default_tol) {
  const int nn = static_cast<int>(inv.factor.rows());
  const int n = nn + 4 * l.degree() + 2;
  const Banded<Real> D = build_cmv(b, n, tol);
  const Banded<Real> M = eval_on_cmv(l, D);
  const int w = nn - inv.block;  // last block row of A^*A misses its neighbor
  const DenseMatrix<Real> gram = inv.factor.adjoint() * inv.factor;
  return (gram.topLeftCorner(w, w) - M.m.topLeftCorner(w, w)).cwiseAbs().maxCoeff();
}

}  // namespace cmv
