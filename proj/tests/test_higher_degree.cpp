#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "support.hpp"

using namespace cmv;
using testsupport::Cx;

namespace {

// Source with the dressed circle weight 1 / |z + 0.6|^2.
SchurSequence<double> dressed_source() {
  SchurSequence<double> a;
  a.prefix = {Cx(0.6, 0.0)};
  a.tail = Tail::Zero;
  a.u1 = 1.5625;
  return a;
}

double weight_at(double theta) {
  return 1.0 / std::norm(std::polar(1.0, theta) + Cx(0.6, 0.0));
}

}  // namespace

TEST_CASE("two conjugate zeros multiply out as expected") {
  const auto l2 = laurent_from_conjugate_zeros<double>({Cx(-0.6, 0.0), Cx(0.3, 0.0)});
  CHECK(l2.degree() == 2);
  CHECK(l2.beta == doctest::Approx(1.1224));
  CHECK(std::abs(l2.alpha[0] - Cx(0.246, 0.0)) < 1e-15);
  CHECK(std::abs(l2.alpha[1] - Cx(-0.18, 0.0)) < 1e-15);

  // nonnegative on the circle, vanishing exactly at the prescribed zeros
  const auto lz = laurent_from(l2);
  CHECK(std::abs(lz.eval(Cx(-0.6, 0.0) / std::abs(Cx(-0.6, 0.0)))) > 0.1);
  for (double theta = 0.0; theta < 6.3; theta += 0.1)
    CHECK(std::real(lz.eval(std::polar(1.0, theta))) > -1e-15);
  CHECK(std::abs(lz.eval(Cx(-0.6, 0.0))) < 1e-15);
  CHECK(std::abs(lz.eval(Cx(0.3, 0.0))) < 1e-15);
}

TEST_CASE("degree one reduces to the streaming step") {
  for (int trial = 0; trial < 2; ++trial) {
    auto a = testsupport::random_schur(26, 0.6);
    a.u1 = testsupport::uniform(0.4, 1.8);
    auto l = testsupport::random_positive_laurent();
    l.beta = 2 * std::abs(l.alpha[0]) + testsupport::uniform(0.3, 1.0);

    const auto fd = forward_degree(a, l, 24);
    const int K = fd.factor.valid - 1;
    REQUIRE(K >= 14);
    const auto st = forward(a, l, K);

    for (int k = 0; k + 2 < K; ++k) {
      CHECK(std::abs(fd.factor.m(k, k) - Cx(st.factor.r[k], 0.0)) < 1e-10);
      const Cx s = k % 2 == 0 ? st.factor.s[k] : std::conj(st.factor.s[k]);
      CHECK(std::abs(fd.factor.m(k + 1, k) - s) < 1e-10);
      const Cx t = k % 2 == 0 ? st.factor.t[k] : std::conj(st.factor.t[k]);
      CHECK(std::abs(fd.factor.m(k + 2, k) - t) < 1e-10);
    }
    CHECK(fd.target.u1 == doctest::Approx(st.target.u1).epsilon(1e-10));
    for (int n = 0; n + 3 < K; ++n)
      CHECK(std::abs(fd.target.prefix[n] - st.target.prefix[n]) < 1e-9);
  }
}

TEST_CASE("degree two composes the two degree-one steps") {
  const auto a = dressed_source();
  const auto la = laurent_from_conjugate_zeros<double>({Cx(-0.6, 0.0)});
  const auto lb = laurent_from_conjugate_zeros<double>({Cx(0.3, 0.0)});
  const auto l2 = laurent_from_conjugate_zeros<double>({Cx(-0.6, 0.0), Cx(0.3, 0.0)});

  // first step peels the weight singularity off: the intermediate is lebesgue
  const auto step1 = forward(a, la, 30);
  CHECK(step1.target.u1 == doctest::Approx(1.0));
  for (const auto& bn : step1.target.prefix) CHECK(std::abs(bn) < 1e-13);

  const auto step2 = forward(step1.target, lb, 26);
  CHECK(step2.target.u1 == doctest::Approx(1.09));

  const auto direct = forward_degree(a, l2, 44);
  CHECK(direct.target.u1 == doctest::Approx(1.09).epsilon(1e-10));
  for (int n = 0; n < 12; ++n)
    CHECK(std::abs(direct.target.prefix[n] - step2.target.prefix[n]) < 1e-9);

  // random source: same agreement without any closed form in sight
  auto ar = testsupport::random_schur(30, 0.5);
  ar.u1 = 0.9;
  const auto r1 = forward(ar, la, 30);
  const auto r2 = forward(r1.target, lb, 26);
  const auto rd = forward_degree(ar, l2, 44);
  CHECK(rd.target.u1 == doctest::Approx(r2.target.u1).epsilon(1e-9));
  for (int n = 0; n < 12; ++n)
    CHECK(std::abs(rd.target.prefix[n] - r2.target.prefix[n]) < 1e-9);
}

TEST_CASE("degree-two target moments match the circle quadrature") {
  const auto a = dressed_source();
  const auto l2 = laurent_from_conjugate_zeros<double>({Cx(-0.6, 0.0), Cx(0.3, 0.0)});
  const auto lz = laurent_from(l2);

  const auto fd = forward_degree(a, l2, 36);
  REQUIRE(static_cast<int>(fd.target_basis.size()) >= 7);
  const std::vector<Laurent<double>> head(fd.target_basis.begin(), fd.target_basis.begin() + 7);
  const auto u = moments_from_zigzag(head);

  for (int k = -3; k <= 3; ++k) {
    const auto direct = testsupport::circle_moment(
        [&](double theta) { return std::real(lz.eval(std::polar(1.0, theta))) * weight_at(theta); },
        k);
    CHECK(std::abs(u.u(k) - direct) < 1e-10);
  }
}

TEST_CASE("blocked inverse reconstructs the factor from its corner") {
  const auto a = dressed_source();
  const auto l2 = laurent_from_conjugate_zeros<double>({Cx(-0.6, 0.0), Cx(0.3, 0.0)});
  const auto fd = forward_degree(a, l2, 44);
  const auto b = fd.target;

  const DenseMatrix<double> R0 = fd.factor.m.topLeftCorner(4, 4);
  const auto inv = inverse_degree(b, l2, R0, 3);
  CHECK(inv.block == 4);
  CHECK(inv.factor.rows() == 16);
  CHECK((inv.factor - fd.factor.m.topLeftCorner(16, 16)).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(reversed_factorization_residual(inv, b, l2) < 1e-10);

  // inflating the corner block overshoots the available positivity at once
  try {
    inverse_degree(b, l2, DenseMatrix<double>(2.0 * R0), 3);
    CHECK(false);
  } catch (const BlockBreakdown& e) {
    CHECK(e.index == 0);
  }
}

TEST_CASE("degree-one blocked inverse matches the streaming factor") {
  SchurSequence<double> b;
  b.tail = Tail::Constant;
  b.tail_value = Cx(0.5, 0.0);
  b.u1 = 2.0;
  HermitianLaurent<double> l;
  l.beta = 2.0;
  l.alpha = {Cx(-1.0, 0.0)};

  // the spurious corner drives the alternating factor: a sharp pattern test
  InverseParameters<double> free;
  free.r0 = std::sqrt(2.0);
  free.r1 = 0.5;
  free.s0 = Cx(-std::sqrt(3.0) / 2.0, 0.0);
  const auto st = inverse(b, l, free, 12);

  DenseMatrix<double> R0 = DenseMatrix<double>::Zero(2, 2);
  R0(0, 0) = free.r0;
  R0(1, 0) = free.s0;
  R0(1, 1) = free.r1;
  const auto blocked = inverse_degree(b, l, R0, 5);
  CHECK(blocked.factor.rows() == 12);
  CHECK((blocked.factor - st.factor.to_banded(12).m).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(std::real(blocked.factor(2, 2)) == doctest::Approx(1.5));
  CHECK(std::real(blocked.factor(3, 3)) == doctest::Approx(0.5));
  CHECK(std::real(blocked.factor(4, 4)) == doctest::Approx(1.5));
  CHECK(reversed_factorization_residual(blocked, b, l) < 1e-11);
}

TEST_CASE("degenerate prescriptions are rejected") {
  const auto a = dressed_source();
  const auto l2 = laurent_from_conjugate_zeros<double>({Cx(-0.6, 0.0), Cx(0.3, 0.0)});
  CHECK_THROWS_AS(forward_degree(a, l2, 6), ZeroArgument);

  SchurSequence<double> b;
  b.u1 = 1.0;
  CHECK_THROWS_AS(inverse_degree(b, l2, DenseMatrix<double>(DenseMatrix<double>::Identity(3, 3)), 2),
                  InvalidFactor);
  DenseMatrix<double> up = DenseMatrix<double>::Identity(4, 4);
  up(0, 2) = 0.3;
  CHECK_THROWS_AS(inverse_degree(b, l2, up, 2), InvalidFactor);
  DenseMatrix<double> neg = DenseMatrix<double>::Identity(4, 4);
  neg(1, 1) = -1.0;
  CHECK_THROWS_AS(inverse_degree(b, l2, neg, 2), InvalidFactor);
  CHECK_THROWS_AS(inverse_degree(b, l2, DenseMatrix<double>(DenseMatrix<double>::Identity(4, 4)), 0),
                  ZeroArgument);

  HermitianLaurent<double> flat;
  flat.beta = 1.0;
  CHECK_THROWS_AS(forward_degree(a, flat, 20), ZeroArgument);
}
