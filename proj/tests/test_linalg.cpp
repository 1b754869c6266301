// SPDX-License-Identifier: Apache-2.0

#include <Eigen/Dense>

#include "doctest.h"
#include "hetnet/linalg.hpp"
#include "hetnet/random.hpp"

using namespace hetnet;

namespace {

Eigen::MatrixXcd to_eigen(const HermitianMatrix& a) {
  Eigen::MatrixXcd m(a.order(), a.order());
  for (std::size_t r = 0; r < a.order(); ++r)
    for (std::size_t c = 0; c < a.order(); ++c) m(r, c) = a(r, c);
  return m;
}

HermitianMatrix random_pd(RandomStream& rng, std::size_t n) {
  auto a = HermitianMatrix::scaled_identity(n, 0.1);
  for (std::size_t k = 0; k < n + 2; ++k) {
    CVector v(n);
    for (auto& x : v) x = rng.complex_normal();
    a.add_outer(rng.uniform(0.5, 2.0), v);
  }
  return a;
}

double norm2(std::span<const cplx> v) { return std::sqrt(squared_norm(v)); }

}  // namespace

TEST_CASE("add_outer produces an exactly Hermitian matrix") {
  RandomStream rng(5);
  const auto a = random_pd(rng, 7);
  for (std::size_t r = 0; r < 7; ++r) {
    CHECK(a(r, r).imag() == 0.0);
    for (std::size_t c = 0; c < 7; ++c) CHECK(a(r, c) == std::conj(a(c, r)));
  }
  CHECK(a.hermitian_defect() == 0.0);
  HermitianMatrix m(3);
  CHECK_THROWS_AS(m.add_outer(1.0, CVector(2)), std::invalid_argument);
}

TEST_CASE("quadratic form and multiply agree with Eigen") {
  RandomStream rng(6);
  const auto a = random_pd(rng, 5);
  CVector x(5);
  for (auto& v : x) v = rng.complex_normal();
  const Eigen::VectorXcd ex = Eigen::Map<const Eigen::VectorXcd>(x.data(), 5);
  const Eigen::VectorXcd ey = to_eigen(a) * ex;
  const auto y = a.multiply(x);
  for (int i = 0; i < 5; ++i) CHECK(std::abs(y[i] - ey(i)) <= 1e-12 * ey.norm());
  CHECK(a.quadratic_form(x) == doctest::Approx(ex.dot(ey).real()).epsilon(1e-12));
}

TEST_CASE("hermitian_solve") {
  const CVector b{{1.0, 2.0}, {-3.0, 0.5}, {0.0, -1.0}};
  SUBCASE("identity") { CHECK(hermitian_solve(HermitianMatrix::scaled_identity(3, 1.0), b) == b); }
  SUBCASE("2I") {
    const auto x = hermitian_solve(HermitianMatrix::scaled_identity(3, 2.0), b);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(x[i] - b[i] / 2.0) <= 1e-15 * std::abs(b[i]));
  }
  SUBCASE("random PD: residual and Eigen agreement") {
    RandomStream rng(17);
    for (std::size_t n : {1u, 2u, 4u, 8u, 20u}) {
      for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_pd(rng, n);
        CVector rhs(n);
        for (auto& v : rhs) v = rng.complex_normal();
        const auto x = hermitian_solve(a, rhs);
        const auto ax = a.multiply(x);
        CVector r(n);
        for (std::size_t i = 0; i < n; ++i) r[i] = ax[i] - rhs[i];
        CHECK(norm2(r) <= 1e-10 * norm2(rhs));
        const Eigen::VectorXcd ex =
            to_eigen(a).ldlt().solve(Eigen::Map<const Eigen::VectorXcd>(rhs.data(), static_cast<long>(n)));
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(x[i] - ex(i)) <= 1e-9 * ex.norm());
      }
    }
  }
}

TEST_CASE("non-PD input reports the failing pivot") {
  auto a = HermitianMatrix::scaled_identity(4, 1.0);
  a(2, 2) = -1.0;
  try {
    CholeskyFactor f(a);
    FAIL("expected SingularMatrixError");
  } catch (const SingularMatrixError& e) {
    CHECK(e.pivot() == 2);
  }
  HermitianMatrix rank_one(3);
  rank_one.add_outer(1.0, CVector{{1, 0}, {1, 0}, {1, 0}});
  try {
    CholeskyFactor f(rank_one);
    FAIL("expected SingularMatrixError");
  } catch (const SingularMatrixError& e) {
    CHECK(e.pivot() >= 1);
  }
}
