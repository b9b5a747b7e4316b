#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "support.hpp"

using namespace cmv;
using testsupport::Cx;

namespace {

double laurent_distance(const Laurent<double>& f, const Laurent<double>& g) {
  double err = 0;
  for (int k = std::min(f.low, g.low); k <= std::max(f.high(), g.high()); ++k)
    err = std::max(err, std::abs(f.coeff(k) - g.coeff(k)));
  return err;
}

HermitianLaurent<double> degree_one(double alpha_re, double alpha_im, double beta) {
  HermitianLaurent<double> l;
  l.alpha = {Cx(alpha_re, alpha_im)};
  l.beta = beta;
  return l;
}

}  // namespace

TEST_CASE("dividing out the weight singularity gives lebesgue") {
  // source with weight 1/|z + 0.6|^2 (up to mass), transformed through
  // l = (z + 0.6)(1/z + 0.6): the target must be the free sequence
  SchurSequence<double> a;
  a.prefix = {Cx(0.6, 0.0)};
  a.u1 = 1.5625;
  const auto l = laurent_from_conjugate_zeros<double>({Cx(-0.6, 0.0)});
  CHECK(l.beta == doctest::Approx(1.36));
  CHECK(l.alpha[0].real() == doctest::Approx(0.6));

  const auto res = forward(a, l, 8);
  CHECK(res.target.u1 == doctest::Approx(1.0).epsilon(1e-14));
  for (const auto& b : res.target.prefix) CHECK(std::abs(b) < 1e-14);

  CHECK(res.factor.r[0] == doctest::Approx(0.8));
  CHECK(res.factor.r[1] == doctest::Approx(1.0));
  CHECK(res.factor.r[2] == doctest::Approx(1.0));
  CHECK(std::abs(res.factor.s[0] - Cx(0.6, 0.0)) < 1e-14);
  CHECK(std::abs(res.factor.s[1]) < 1e-14);
  CHECK(std::abs(res.factor.t[0] - Cx(0.6, 0.0)) < 1e-14);
  CHECK(std::abs(res.factor.t[1] - Cx(0.6, 0.0)) < 1e-14);
}

TEST_CASE("constant-target example") {
  SchurSequence<double> a;
  a.prefix = {Cx(1.0 / 3.0, 0.0)};
  a.tail = Tail::Constant;
  a.tail_value = Cx(0.5, 0.0);
  a.u1 = 0.75;
  const auto l = degree_one(-1.0, 0.0, 2.0);

  const auto res = forward(a, l, 10);
  CHECK(res.radicands[0] == doctest::Approx(8.0 / 3.0));
  CHECK(res.target.u1 == doctest::Approx(2.0));
  for (const auto& b : res.target.prefix) CHECK(std::abs(b - Cx(0.5, 0.0)) < 1e-13);

  CHECK(res.factor.r[0] == doctest::Approx(std::sqrt(8.0 / 3.0)));
  CHECK(res.factor.r[1] == doctest::Approx(1.5));
  CHECK(res.factor.r[2] == doctest::Approx(1.5));
  CHECK(std::abs(res.factor.s[0] - Cx(-std::sqrt(3.0) / 6.0, 0.0)) < 1e-14);
  CHECK(std::abs(res.factor.s[1]) < 1e-14);
  CHECK(std::abs(res.factor.t[0] - Cx(-0.5, 0.0)) < 1e-14);
  CHECK(std::abs(res.factor.t[1] - Cx(-0.5, 0.0)) < 1e-14);
}

TEST_CASE("factor factors l(C) and intertwines the two matrices") {
  for (int trial = 0; trial < 4; ++trial) {
    const int N = 16;
    auto a = testsupport::random_schur(N + 4, 0.7);
    a.u1 = testsupport::uniform(0.25, 3.0);
    const auto l = testsupport::random_positive_laurent();
    const auto res = forward(a, l, N + 2);

    const auto C = build_cmv(a, N);
    const auto D = build_cmv(res.target, N);
    const auto A = res.factor.to_banded(N);

    const auto M = eval_on_cmv(l, C);
    const DenseMatrix<double> G = A.m * A.m.adjoint();
    CHECK(window_distance(M.m, G, M.valid) < 1e-11);
    CHECK(verify_intertwining(C, A, D) < 1e-11);
  }
}

TEST_CASE("target basis carries the factor") {
  auto a = testsupport::random_schur(14, 0.7);
  a.u1 = 1.7;
  const auto l = testsupport::random_positive_laurent();
  const int count = 12;
  const auto res = forward(a, l, count);
  const int K = count - 1;
  const auto chi = orthonormal_laurent(a, K);
  const auto mapped = zigzag_from_factor(res.factor, res.target, K);
  for (int n = 0; n <= K; ++n) CHECK(laurent_distance(chi[n], mapped[n]) < 1e-10);
}

TEST_CASE("the map multiplies the moment functional") {
  for (int trial = 0; trial < 4; ++trial) {
    auto a = testsupport::random_schur(10, 0.7);
    a.u1 = testsupport::uniform(0.3, 2.0);
    const auto l = testsupport::random_positive_laurent();
    const auto res = forward(a, l, 8);

    const auto ua = moments_from_zigzag(orthonormal_laurent(a, 6));
    const auto ub = moments_from_zigzag(orthonormal_laurent(res.target, 4));
    for (int k = -2; k <= 2; ++k) {
      Cx want(0.0);
      for (int j = -1; j <= 1; ++j) want += l.coeff(j) * ua.u(k + j);
      CHECK(std::abs(ub.u(k) - want) < 1e-10);
    }
  }
}

TEST_CASE("parameter-only recurrence agrees with the factor recurrence") {
  for (int trial = 0; trial < 4; ++trial) {
    auto a = testsupport::random_schur(16, 0.75);
    a.u1 = testsupport::uniform(0.3, 2.0);
    const auto l = testsupport::random_positive_laurent();
    const auto res = forward(a, l, 12);
    const auto b = nonlinear_ab_recurrence(a, l, 12);
    CHECK(b.u1 == doctest::Approx(res.target.u1).epsilon(1e-12));
    REQUIRE(b.prefix.size() == res.target.prefix.size());
    for (std::size_t n = 0; n < b.prefix.size(); ++n)
      CHECK(std::abs(b.prefix[n] - res.target.prefix[n]) < 1e-11);
  }
}

TEST_CASE("scaling the transformation rescales only the factor and the mass") {
  auto a = testsupport::random_schur(10, 0.7);
  a.u1 = 1.1;
  auto l = testsupport::random_positive_laurent();
  const double c = 2.7;
  auto lc = l;
  lc.beta *= c;
  lc.alpha[0] *= c;

  const auto r1 = forward(a, l, 8);
  const auto r2 = forward(a, lc, 8);
  const double sq = std::sqrt(c);
  CHECK(r2.target.u1 == doctest::Approx(c * r1.target.u1));
  for (std::size_t n = 0; n < r1.target.prefix.size(); ++n)
    CHECK(std::abs(r1.target.prefix[n] - r2.target.prefix[n]) < 1e-12);
  for (std::size_t n = 0; n < r1.factor.r.size(); ++n)
    CHECK(r2.factor.r[n] == doctest::Approx(sq * r1.factor.r[n]));
  for (std::size_t n = 0; n < r1.factor.s.size(); ++n)
    CHECK(std::abs(r2.factor.s[n] - sq * r1.factor.s[n]) < 1e-12);
}

TEST_CASE("breakdown exactly where positivity fails") {
  SchurSequence<double> a;
  a.prefix = {Cx(0.9, 0.0)};

  // radicand 0.01 at step 0, then the schur complement overshoots
  try {
    forward(a, degree_one(1.0, 0.0, 1.81), 6);
    FAIL("expected a breakdown");
  } catch (const NotPositiveDefinite& e) {
    CHECK(e.index == 1);
  }

  // flat zero at the first pivot
  try {
    forward(a, degree_one(1.0, 0.0, 1.8), 6);
    FAIL("expected a breakdown");
  } catch (const NotPositiveDefinite& e) {
    CHECK(e.index == 0);
  }

  CHECK_THROWS_AS(nonlinear_ab_recurrence(a, degree_one(1.0, 0.0, 1.8), 6),
                  NotPositiveDefinite);

  HermitianLaurent<double> quad;
  quad.beta = 3.0;
  quad.alpha = {Cx(0.1, 0.0), Cx(0.05, 0.0)};
  CHECK_THROWS_AS(forward(a, quad, 4), ZeroArgument);
  CHECK_THROWS_AS(forward(a, degree_one(0.3, 0.0, 2.0), 0), ZeroArgument);
}
