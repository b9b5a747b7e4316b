#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>

#include "support.hpp"

using namespace cmv;
using testsupport::Cx;

namespace {

Banded<double> hermitian_from(const std::vector<std::vector<Cx>>& rows, int lower) {
  const int n = static_cast<int>(rows.size());
  Banded<double> out;
  out.m.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.m(i, j) = rows[i][j];
  out.lower = out.upper = lower;
  out.valid = n;
  return out;
}

// Random lower-banded matrix with positive diagonal; the primitive whose
// products B E B^* have a known factorization.
Banded<double> random_lower_banded(int n, int w) {
  Banded<double> b;
  b.m = DenseMatrix<double>::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    b.m(j, j) = testsupport::uniform(0.3, 2.0);
    for (int i = j + 1; i <= std::min(n - 1, j + w); ++i) b.m(i, j) = testsupport::disk(1.0);
  }
  b.lower = w;
  b.upper = 0;
  b.valid = n;
  return b;
}

}  // namespace

TEST_CASE("streaming cholesky against the dense textbook routine") {
  for (int trial = 0; trial < 5; ++trial) {
    const auto a = testsupport::random_schur(12, 0.75);
    const auto C = build_cmv(a, 20);
    const auto l = testsupport::random_positive_laurent();
    const auto M = eval_on_cmv(l, C);

    const auto A = banded_cholesky(M);
    Eigen::MatrixXcd L;
    REQUIRE(!testsupport::dense_cholesky_breakdown(M.m, L).has_value());
    CHECK((A.m - L).cwiseAbs().maxCoeff() < 1e-12 * M.m.cwiseAbs().maxCoeff());
    CHECK((A.m * A.m.adjoint() - M.m).cwiseAbs().maxCoeff() <
          1e-12 * M.m.cwiseAbs().maxCoeff());
    CHECK(A.lower == 2);
    CHECK(A.upper == 0);
    CHECK(A.valid == M.valid - 2);
  }
}

TEST_CASE("breakdown index matches the dense routine") {
  // indefinite five-diagonal hermitian matrices: both routines must stop at
  // the same pivot
  int broke = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 12;
    Banded<double> M;
    M.m = DenseMatrix<double>::Zero(n, n);
    for (int j = 0; j < n; ++j) {
      M.m(j, j) = testsupport::uniform(-1.0, 1.0);
      for (int i = j + 1; i <= std::min(n - 1, j + 2); ++i) {
        M.m(i, j) = testsupport::disk(1.0);
        M.m(j, i) = std::conj(M.m(i, j));
      }
    }
    M.lower = M.upper = 2;
    M.valid = n;
    Eigen::MatrixXcd L;
    const auto oracle = testsupport::dense_cholesky_breakdown(M.m, L);
    try {
      banded_cholesky(M);
      CHECK(!oracle.has_value());
    } catch (const NotPositiveDefinite& e) {
      REQUIRE(oracle.has_value());
      CHECK(e.index == *oracle);
      ++broke;
    }
  }
  CHECK(broke >= 15);  // random sign diagonals essentially never stay definite
}

TEST_CASE("generalized factorization recovers a planted factor") {
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 14;
    const auto B = random_lower_banded(n, 2);
    std::vector<int> signs(n);
    for (auto& e : signs) e = testsupport::uniform(0.0, 1.0) < 0.5 ? -1 : 1;
    GeneralizedCholesky<double> planted{B, signs};
    Banded<double> M;
    M.m = B.m * planted.sign_matrix() * B.m.adjoint();
    M.lower = M.upper = 2;
    M.valid = n;

    const auto g = generalized_cholesky(M);
    CHECK(g.signs == signs);
    CHECK((g.factor.m - B.m).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((g.factor.m * g.sign_matrix() * g.factor.m.adjoint() - M.m).cwiseAbs().maxCoeff() <
          1e-10);
  }
}

TEST_CASE("generalized factorization degenerates to cholesky on definite input") {
  const auto a = testsupport::random_schur(8, 0.7);
  const auto C = build_cmv(a, 14);
  const auto l = testsupport::random_positive_laurent();
  const auto M = eval_on_cmv(l, C);
  const auto g = generalized_cholesky(M);
  const auto A = banded_cholesky(M);
  for (int s : g.signs) CHECK(s == 1);
  CHECK((g.factor.m - A.m).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("reversed factorization recovers a planted factor") {
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 14;
    const auto B = random_lower_banded(n, 2);
    std::vector<int> signs(n);
    for (auto& e : signs) e = testsupport::uniform(0.0, 1.0) < 0.5 ? -1 : 1;
    GeneralizedCholesky<double> planted{B, signs};
    Banded<double> M;
    M.m = B.m.adjoint() * planted.sign_matrix() * B.m;
    M.lower = M.upper = 2;
    M.valid = n;

    const auto g = reversed_generalized_cholesky(M);
    CHECK(g.signs == signs);
    CHECK((g.factor.m - B.m).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("two-by-two examples: one factorization, not the other") {
  // M1 factors forward with signature (+, -) but has no reversed form
  const auto M1 = hermitian_from({{Cx(1), Cx(1)}, {Cx(1), Cx(0)}}, 1);
  const auto g1 = generalized_cholesky(M1);
  CHECK(g1.signs == std::vector<int>{1, -1});
  CHECK(std::abs(g1.factor.m(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(g1.factor.m(1, 0) - 1.0) < 1e-15);
  CHECK(std::abs(g1.factor.m(1, 1) - 1.0) < 1e-15);
  CHECK_THROWS_AS(reversed_generalized_cholesky(M1), ReversedFactorizationBreakdown);
  try {
    reversed_generalized_cholesky(M1);
  } catch (const ReversedFactorizationBreakdown& e) {
    CHECK(e.index == 1);
  }

  // M2 is the reflection: no forward form, reversed with signature (-, +)
  const auto M2 = hermitian_from({{Cx(0), Cx(1)}, {Cx(1), Cx(1)}}, 1);
  CHECK_THROWS_AS(generalized_cholesky(M2), NotQuasiDefinite);
  try {
    generalized_cholesky(M2);
  } catch (const NotQuasiDefinite& e) {
    CHECK(e.index == 0);
  }
  const auto g2 = reversed_generalized_cholesky(M2);
  CHECK(g2.signs == std::vector<int>{-1, 1});
  CHECK(std::abs(g2.factor.m(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(g2.factor.m(1, 0) - 1.0) < 1e-15);
  CHECK(std::abs(g2.factor.m(1, 1) - 1.0) < 1e-15);
  CHECK((g2.factor.m.adjoint() * g2.sign_matrix() * g2.factor.m - M2.m)
            .cwiseAbs()
            .maxCoeff() < 1e-14);
}

TEST_CASE("factor of a truncation is truncation independent on its window") {
  const auto a = testsupport::random_schur(16, 0.8);
  const auto l = testsupport::random_positive_laurent();
  const auto big = banded_cholesky(eval_on_cmv(l, build_cmv(a, 30)));
  const auto small = banded_cholesky(eval_on_cmv(l, build_cmv(a, 18)));
  const int w = std::min(big.valid, small.valid);
  REQUIRE(w >= 10);
  CHECK(window_distance(big.m, small.m, w) < 1e-12);
}

TEST_CASE("shifted qr of a cmv matrix") {
  const auto a = testsupport::random_schur(10, 0.7);
  const int n = 18;
  const auto C = build_cmv(a, n);
  const Cx zeta(0.3, -0.2);
  const auto qr = qr_shifted(C, zeta);

  const DenseMatrix<double> target = C.m - zeta * DenseMatrix<double>::Identity(n, n);
  CHECK((qr.q * qr.r - target).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((qr.q.adjoint() * qr.q - DenseMatrix<double>::Identity(n, n)).cwiseAbs().maxCoeff() <
        1e-13);
  for (int j = 0; j < n - 1; ++j) CHECK(qr.r(j, j).real() > 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) CHECK(std::abs(qr.r(i, j)) < 1e-13);

  // on the interior window R is three-banded and equals the adjoint Cholesky
  // factor of (z - zeta)(1/z - conj(zeta)) evaluated on C
  const auto l = laurent_from_conjugate_zeros<double>({zeta});
  const auto M = eval_on_cmv(l, C);
  CHECK(window_distance(M.m, (target.adjoint() * target).eval(), M.valid) < 1e-13);
  const auto A = banded_cholesky(M);
  const int w = std::min(A.valid, qr.valid);
  REQUIRE(w >= 10);
  CHECK(window_distance(DenseMatrix<double>(A.m.adjoint()), qr.r, w) < 1e-12);
  for (int i = 0; i < w; ++i)
    for (int j = i + 3; j < w; ++j) CHECK(std::abs(qr.r(i, j)) < 1e-12);

  CHECK_THROWS_AS(qr_shifted(C, Cx(1.0, 0.0)), UnimodularParameter);
}
