#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "support.hpp"

using namespace cmv;
using testsupport::Cx;

namespace {

double unitarity_defect(const Banded<double>& C) {
  const int w = C.valid;
  DenseMatrix<double> g = (C.m * C.m.adjoint()).topLeftCorner(w, w);
  g -= DenseMatrix<double>::Identity(w, w);
  return g.cwiseAbs().maxCoeff();
}

double leading_defect(const DenseMatrix<double>& m) {
  DenseMatrix<double> g = m.topRows(2) * m.topRows(2).adjoint();
  g -= DenseMatrix<double>::Identity(2, 2);
  return g.cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("random cmv truncations are unitary inside") {
  for (int trial = 0; trial < 8; ++trial) {
    auto a = testsupport::random_schur(50, 0.9);
    auto C = build_cmv(a, 48);
    CHECK(unitarity_defect(C) < 1e-11);
  }
}

TEST_CASE("forward factorizations close against the operator") {
  for (int trial = 0; trial < 8; ++trial) {
    auto a = testsupport::random_schur(50, 0.9);
    auto l = testsupport::random_positive_laurent();
    const int n = 48;
    auto C = build_cmv(a, n);
    auto M = eval_on_cmv(l, C);
    auto fwd = forward(a, l, n);
    auto A = fwd.factor.to_banded(n);
    const int w = M.valid;
    CHECK((M.m - A.m * A.m.adjoint()).topLeftCorner(w, w).cwiseAbs().maxCoeff() <
          1e-10);

    auto D = build_cmv(fwd.target, n);
    CHECK(verify_intertwining(C, A, D) < 1e-10);
  }
}

TEST_CASE("the factor entries satisfy the ratio identities") {
  for (int trial = 0; trial < 8; ++trial) {
    auto a = testsupport::random_schur(40, 0.9);
    auto l = testsupport::random_positive_laurent();
    const int count = 36;
    auto fwd = forward(a, l, count);
    const auto& r = fwd.factor.r;
    const auto& t = fwd.factor.t;
    for (int n = 1; n + 2 < count; ++n) {
      const double rho_n = rho(a.at(n));
      const double sig_n = rho(fwd.target.at(n));
      const double lhs = r[n - 1] * sig_n;
      const double rhs = r[n] * rho_n;
      CHECK(std::abs(lhs - rhs) < 1e-11 * std::max(1.0, std::abs(rhs)));
      const Cx tl = t[n - 1] * rho(a.at(n + 2));
      const Cx tr = t[n] * sig_n;
      CHECK(std::abs(tl - tr) < 1e-11 * std::max(1.0, std::abs(tr)));
    }
  }
}

TEST_CASE("the nonlinear recurrence reproduces the streamed target") {
  for (int trial = 0; trial < 8; ++trial) {
    auto a = testsupport::random_schur(40, 0.9);
    auto l = testsupport::random_positive_laurent();
    const int count = 32;
    auto fwd = forward(a, l, count);
    auto b = nonlinear_ab_recurrence(a, l, count);
    for (int k = 1; k < count; ++k)
      CHECK(std::abs(b.at(k) - fwd.target.at(k)) < 1e-11);
  }
}

TEST_CASE("the cmv label tracks the leading unitarity defect") {
  for (int trial = 0; trial < 6; ++trial) {
    auto a = testsupport::random_schur(20, 0.8);
    auto l = testsupport::random_positive_laurent();
    auto fwd = forward(a, l, 16);
    const auto& b = fwd.target;

    auto good = cmv_parameters_for(b, l, a.at(1));
    auto cls = classify(b, l, good, 8);
    CHECK(cls.kind == SolutionKind::Cmv);
    auto inv = inverse(b, l, good, 12);
    auto sol = build_solution_matrix(inv.factor, b, 14);
    CHECK(leading_defect(sol.m) < 1e-9);

    auto off = good;
    off.r0 *= 1.05;
    auto bad = classify(b, l, off, 8);
    CHECK(bad.kind != SolutionKind::Cmv);
    try {
      auto leak = inverse(b, l, off, 12);
      auto badsol = build_solution_matrix(leak.factor, b, 14);
      CHECK(leading_defect(badsol.m) > 1e-9);
    } catch (const Breakdown&) {
      // an early dead pivot is the other consistent way to fail
    }
  }
}
