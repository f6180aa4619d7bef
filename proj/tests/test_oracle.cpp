#include <doctest.h>

#include <cmath>
#include <vector>

#include "philyap/gallery.hpp"
#include "philyap/lyapunov.hpp"
#include "philyap/lyapunov.hpp"
#include "philyap/oracle.hpp"

using namespace philyap;
using gallery::random_symmetric;
using gallery::random_uniform;

namespace {

DenseMatrix ones(std::size_t n) { return DenseMatrix(n, n, std::vector<double>(n * n, 1.0)); }

}  // namespace

TEST_CASE("vec and unvec") {
  const DenseMatrix x{{1, 2}, {3, 4}};
  CHECK(oracle::vec(x) == std::vector<double>{1, 3, 2, 4});
  CHECK(oracle::unvec(oracle::vec(x), 2) == x);
  CHECK_THROWS_AS(oracle::unvec(std::vector<double>(3), 2), ShapeError);
}

TEST_CASE("kron_sum") {
  CHECK(oracle::kron_sum(DenseMatrix{{-1.5}}) == DenseMatrix{{-3.0}});
  const std::vector<double> d{1, 2}, want{2, 3, 3, 4};
  CHECK(oracle::kron_sum(DenseMatrix::diagonal(d)) == DenseMatrix::diagonal(want));

  const DenseMatrix a = random_uniform(3, 3, 1);
  const DenseMatrix x = random_uniform(3, 3, 2);
  const DenseMatrix k = oracle::kron_sum(a);
  const DenseMatrix kx = multiply(k, DenseMatrix(9, 1, oracle::vec(x)));
  const DenseMatrix lx = LyapunovOperator(a).apply(x);
  CHECK(relative_error(lx, oracle::unvec(kx.data(), 3)) <= 1e-15);

  CHECK_THROWS_WITH_AS(oracle::kron_sum(DenseMatrix::zeros(65, 65)), "oracle scale exceeded", std::length_error);
}

TEST_CASE("kron_sum of a defective block has the single eigenvalue 2 lambda") {
  const double lambda = -0.7;
  const DenseMatrix k = oracle::kron_sum(DenseMatrix{{lambda, 1}, {0, lambda}});
  const DenseMatrix shifted = k - (2 * lambda) * DenseMatrix::identity(4);
  CHECK_FALSE(multiply(shifted, shifted).is_zero());
  CHECK(multiply(multiply(shifted, shifted), shifted).is_zero());
}

TEST_CASE("phi_reference examples") {
  const DenseMatrix q = random_symmetric(3, 3);
  for (int l = 0; l <= 4; ++l)
    CHECK(relative_error(q * inverse_factorial(l), oracle::phi_reference(DenseMatrix::zeros(3, 3), q, l)) <= 1e-15);

  const std::vector<double> d{1, -1};
  const DenseMatrix a = DenseMatrix::diagonal(d);
  const DenseMatrix p2 = oracle::phi_reference(a, ones(2), 2);
  CHECK(p2(0, 1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(p2(0, 0) == doctest::Approx((std::exp(2.0) - 1 - 2) / 4).epsilon(1e-14));
  CHECK(p2(1, 1) == doctest::Approx((std::exp(-2.0) - 1 + 2) / 4).epsilon(1e-14));

  const DenseMatrix q2 = random_symmetric(2, 4);
  const DenseMatrix e0 = oracle::phi_reference(a, q2, 0);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(e0(i, j) == doctest::Approx(std::exp(d[i] + d[j]) * q2(i, j)).epsilon(1e-14));

  CHECK(oracle::phi_reference(a, DenseMatrix::zeros(2, 2), 3).is_zero());
  const std::vector<DenseMatrix> all = oracle::phi_reference_all(a, ones(2), 3);
  CHECK(all.size() == 4);
  CHECK(relative_error(p2, all[2]) <= 1e-15);
}

TEST_CASE("scalar_phi") {
  CHECK(oracle::scalar_phi(0, 1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-16));
  CHECK(oracle::scalar_phi(1, 0.0) == 1.0);
  CHECK(oracle::scalar_phi(2, 0.0) == 0.5);
  CHECK(oracle::scalar_phi(1, -30.0) == doctest::Approx((1 - std::exp(-30.0)) / 30).epsilon(1e-15));
  CHECK(oracle::scalar_phi(3, 1e-3) == doctest::Approx(1.0 / 6 + 1e-3 / 24 + 1e-6 / 120 + 1e-9 / 720).epsilon(1e-14));
}

TEST_CASE("dle_reference") {
  const DenseMatrix q = random_symmetric(3, 5);
  CHECK(relative_error(0.7 * q, oracle::dle_reference(DenseMatrix::zeros(3, 3), q, 1, 0.7)) <= 1e-12);
  const DenseMatrix x = oracle::dle_reference(DenseMatrix{{-1.0}}, DenseMatrix{{1.0}}, 1, 1.0);
  CHECK(x(0, 0) == doctest::Approx((1 - std::exp(-2.0)) / 2).epsilon(1e-12));
  CHECK_THROWS_AS(oracle::dle_reference(DenseMatrix{{-1.0}}, DenseMatrix{{1.0}}, 0, 1.0), std::invalid_argument);
}

TEST_CASE("the two references agree") {
  for (int l = 1; l <= 4; ++l) {
    const DenseMatrix a = 0.5 * random_uniform(4, 4, 10 + l);
    const DenseMatrix q = random_symmetric(4, 20 + l);
    const double t = 0.8;
    const DenseMatrix via_exp = std::pow(t, l) * oracle::phi_reference(t * a, q, l);
    CHECK(relative_error(via_exp, oracle::dle_reference(a, q, l, t)) <= 1e-9);
  }
}

TEST_CASE("spectral Laplacian reference agrees with the Kronecker one") {
  const std::size_t n = 7;
  const double c = 30.0;
  const DenseMatrix q = random_symmetric(n, 6);
  const std::vector<DenseMatrix> spectral = oracle::laplacian_phi_reference(n, c, q, 4);
  const std::vector<DenseMatrix> kron = oracle::phi_reference_all(gallery::laplacian_1d(n, c), q, 4);
  REQUIRE(spectral.size() == 4);
  for (int l = 1; l <= 4; ++l) CHECK(relative_error(kron[l], spectral[l - 1]) <= 1e-12);
}
