#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "philyap/dense_matrix.hpp"
#include "philyap/gallery.hpp"
#include "philyap/kernels.hpp"
#include "philyap/norm_estimate.hpp"

using namespace philyap;
using gallery::random_uniform;

TEST_CASE("construction rejects bad shapes and non-finite data") {
  CHECK_THROWS_AS(DenseMatrix(0, 3), ShapeError);
  CHECK_THROWS_AS(DenseMatrix(2, 2, std::vector<double>(3)), ShapeError);
  CHECK_THROWS_AS(DenseMatrix(1, 1, {std::numeric_limits<double>::quiet_NaN()}), NumericalError);
  CHECK_THROWS_AS(DenseMatrix(1, 2, {1.0, INFINITY}), NumericalError);
  CHECK_THROWS(DenseMatrix({{1, 2}, {3}}));
}

TEST_CASE("one_norm") {
  CHECK(one_norm(DenseMatrix{{1, -2}, {3, 4}}) == 6);
  CHECK(one_norm(DenseMatrix::zeros(3, 4)) == 0);
  CHECK(one_norm(DenseMatrix::identity(5)) == 1);
}

TEST_CASE("frobenius_norm") {
  CHECK(frobenius_norm(DenseMatrix{{3, 4}, {0, 0}}) == doctest::Approx(5));
  CHECK(frobenius_norm(DenseMatrix::identity(7)) == doctest::Approx(std::sqrt(7.0)));
  CHECK(frobenius_norm(DenseMatrix::zeros(2, 2)) == 0);
}

TEST_CASE("relative_error") {
  const DenseMatrix i2 = DenseMatrix::identity(2);
  CHECK(relative_error(i2, i2) == 0);
  CHECK(relative_error(i2, 1.01 * i2) == doctest::Approx(0.01));
  CHECK(relative_error(DenseMatrix{{2, 0}, {0, 2}}, DenseMatrix{{2, 0}, {0, 1}}) == doctest::Approx(0.5));
  CHECK_THROWS_WITH_AS(relative_error(DenseMatrix::zeros(2, 2), i2), "zero reference", std::domain_error);
  CHECK_THROWS_AS(relative_error(i2, DenseMatrix::identity(3)), ShapeError);
}

TEST_CASE("arithmetic surfaces overflow") {
  DenseMatrix big{{1e308}};
  CHECK_THROWS_AS(big += big, NumericalError);
  CHECK_THROWS_AS(multiply(DenseMatrix{{1e200}}, DenseMatrix{{1e200}}), NumericalError);
}

TEST_CASE("multiply ticks the counter and checks shapes") {
  ProductCounter c;
  const DenseMatrix a = random_uniform(3, 4, 1);
  const DenseMatrix b = random_uniform(4, 2, 2);
  const DenseMatrix ab = multiply(a, b, &c);
  CHECK(c.count() == 1);
  CHECK(ab.rows() == 3);
  CHECK(ab.cols() == 2);
  CHECK_THROWS_AS(multiply(a, a), ShapeError);
  double s = 0;
  for (std::size_t k = 0; k < 4; ++k) s += a(2, k) * b(k, 1);
  CHECK(ab(2, 1) == doctest::Approx(s));
  const DenseMatrix abt = multiply_transposed(a, b.transposed(), &c);
  CHECK(c.count() == 2);
  CHECK(abt == ab);
}

TEST_CASE("congruence of a symmetric matrix is exactly symmetric") {
  ProductCounter c;
  const DenseMatrix e = random_uniform(6, 6, 3);
  const DenseMatrix x = gallery::random_symmetric(6, 4);
  const DenseMatrix y = congruence(e, x, &c);
  CHECK(c.count() == 2);
  CHECK(y.is_exactly_symmetric());
  CHECK(relative_error(multiply(multiply(e, x), e.transposed()), y) < 1e-14);
}

TEST_CASE("norm submultiplicativity on random pairs") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DenseMatrix a = random_uniform(5, 5, seed);
    const DenseMatrix b = random_uniform(5, 5, seed + 100);
    CHECK(one_norm(multiply(a, b)) <= one_norm(a) * one_norm(b) * (1 + 1e-15));
  }
}

TEST_CASE("parallel kernels match the serial reference bitwise") {
  for (std::size_t n : {1u, 7u, 33u, 130u}) {
    const std::size_t m = n + 3, k = n + 1;
    const DenseMatrix a = random_uniform(m, k, n);
    const DenseMatrix b = random_uniform(k, n, n + 1);
    const DenseMatrix bt = random_uniform(n, k, n + 2);
    std::vector<double> c1(m * n), c2(m * n);
    kernels::gemm(m, k, n, a.data(), b.data(), c1);
    kernels::gemm_serial(m, k, n, a.data(), b.data(), c2);
    CHECK(c1 == c2);
    kernels::gemm_nt(m, k, n, a.data(), bt.data(), c1);
    kernels::gemm_nt_serial(m, k, n, a.data(), bt.data(), c2);
    CHECK(c1 == c2);

    const DenseMatrix sq = random_uniform(n, k, n + 3);
    std::vector<double> s1(n * n), s2(n * n);
    kernels::gemm_nt_symmetric(n, k, sq.data(), sq.data(), s1);
    kernels::gemm_nt_symmetric_serial(n, k, sq.data(), sq.data(), s2);
    CHECK(s1 == s2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) CHECK(s1[i * n + j] == s1[j * n + i]);

    const DenseMatrix p = random_uniform(n, n, n + 4);
    kernels::add_transpose(n, p.data(), s1);
    kernels::add_transpose_serial(n, p.data(), s2);
    CHECK(s1 == s2);

    std::vector<double> y1(p.data().begin(), p.data().end()), y2 = y1;
    kernels::axpy(0.37, sq.data().subspan(0, n * n), y1);
    kernels::axpy_serial(0.37, sq.data().subspan(0, n * n), y2);
    CHECK(y1 == y2);
  }
  CHECK(kernels::max_threads() >= 1);
}

TEST_CASE("estimate_power_norm small cases are exact") {
  NormEstimate e = estimate_power_norm(DenseMatrix::identity(4), 7);
  CHECK(e.exact);
  CHECK(e.value == 1);
  const std::vector<double> d{2, 1};
  e = estimate_power_norm(DenseMatrix::diagonal(d), 3);
  CHECK(e.value == 8);
}

TEST_CASE("estimated power norm is a lower bound within a factor 3") {
  NormOptions opts;
  opts.exact_threshold = 0;  // force the estimator
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const DenseMatrix a = random_uniform(8, 8, seed);
    const double truth = one_norm(multiply(multiply(a, a), a));
    const NormEstimate e = estimate_power_norm(a, 3, opts);
    CHECK_FALSE(e.exact);
    CHECK(e.products_used > 0);
    CHECK(e.value <= truth * (1 + 1e-14));
    CHECK(e.value >= truth / 3);
  }
}

TEST_CASE("estimator is deterministic and reports overflow") {
  NormOptions opts;
  opts.exact_threshold = 0;
  const DenseMatrix a = random_uniform(20, 20, 5);
  CHECK(estimate_power_norm(a, 4, opts).value == estimate_power_norm(a, 4, opts).value);
  const DenseMatrix huge = 1e200 * DenseMatrix::identity(3);
  CHECK_THROWS_WITH_AS(estimate_power_norm(huge, 3, opts), "norm overflow", NumericalError);
  CHECK_THROWS_AS(estimate_power_norm(huge, 3), NumericalError);
}

TEST_CASE("power norm ladder") {
  const DenseMatrix a = random_uniform(6, 6, 9);
  PowerNormLadder ladder(a);
  CHECK(ladder.norm(0) == 1);
  CHECK(ladder.norm(1) == one_norm(a));
  CHECK(ladder.norm(2) == doctest::Approx(one_norm(multiply(a, a))).epsilon(1e-14));
  const auto used = ladder.products_used();
  ladder.norm(2);
  CHECK(ladder.products_used() == used);
}
