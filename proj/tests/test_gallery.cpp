#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "philyap/gallery.hpp"

using namespace philyap;
using namespace philyap::gallery;

TEST_CASE("laplacian_1d") {
  CHECK(laplacian_1d(3, 1.0) == DenseMatrix{{-2, 1, 0}, {1, -2, 1}, {0, 1, -2}});
  // det(T + 2I - mu I) = -(mu^3 - 2 mu) vanishes at lambda = -2 + 2cos(k pi / 4).
  for (int k = 1; k <= 3; ++k) {
    const double mu = 2 * std::cos(k * std::numbers::pi / 4);  // lambda + 2
    CHECK(std::abs(mu * mu * mu - 2 * mu) < 1e-14);
  }
  CHECK(laplacian_1d(5, 2500.0)(2, 2) == -5000.0);
}

TEST_CASE("fdm operator") {
  CHECK(fdm_advection_diffusion(1) == DenseMatrix{{-16}});
  const DenseMatrix d = fdm_diffusion(2), v = fdm_advection(2), a = fdm_advection_diffusion(2);
  CHECK(a == d + v);
  CHECK(d.is_exactly_symmetric());
  // Centered advection couples only grid neighbours and has a zero diagonal.
  for (std::size_t i = 0; i < 4; ++i) CHECK(v(i, i) == 0.0);
  CHECK(v(0, 3) == 0.0);
  CHECK(v(1, 2) == 0.0);
  const DenseMatrix s = a + a.transposed();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK((s(i, j) != 0.0) == (d(i, j) != 0.0));
  CHECK(d(0, 0) == -2 * 2 * 9.0);
  CHECK(d(0, 1) == 9.0);

  const DenseMatrix big = fdm_diffusion(5);
  for (std::size_t i = 0; i < big.rows(); ++i) {
    double sum = 0;
    for (std::size_t j = 0; j < big.cols(); ++j) sum += big(i, j);
    CHECK(sum <= 0.0);
  }
  CHECK(fdm_advection_diffusion(10).rows() == 100);
}

TEST_CASE("load_vector_indicator") {
  const DenseMatrix all = load_vector_indicator(3, Axis::kY, 0.0, 1.0);
  for (double v : all.data()) CHECK(v == 1.0);
  auto count = [](const DenseMatrix& m) {
    int c = 0;
    for (double v : m.data()) c += v == 1.0;
    return c;
  };
  const DenseMatrix b4 = load_vector_indicator(4, Axis::kX, 0.1, 0.3);
  CHECK(count(b4) == 4);
  for (std::size_t r = 0; r < 16; ++r) CHECK(b4(r, 0) == (r % 4 == 0 ? 1.0 : 0.0));
  CHECK(count(load_vector_indicator(10, Axis::kX, 0.1, 0.3)) == 20);
  CHECK(count(load_vector_indicator(10, Axis::kX, 0.7, 0.9)) == 20);
  const DenseMatrix by = load_vector_indicator(4, Axis::kY, 0.1, 0.3);
  CHECK(by(1, 0) == 1.0);  // (0.4, 0.2)
  CHECK(by(4, 0) == 0.0);  // (0.2, 0.4)
  CHECK_THROWS_AS(load_vector_indicator(4, Axis::kX, 0.5, 0.5), std::invalid_argument);
}

TEST_CASE("random generators") {
  const DenseMatrix u = random_uniform(20, 20, 5);
  for (double v : u.data()) {
    CHECK(v >= -1.0);
    CHECK(v < 1.0);
  }
  CHECK(u == random_uniform(20, 20, 5));
  CHECK_FALSE(u == random_uniform(20, 20, 6));
  CHECK(random_symmetric(7, 1).is_exactly_symmetric());
}

TEST_CASE("structured suite") {
  const auto suite = structured_suite(8, 42);
  CHECK(suite.size() >= 12);
  CHECK(suite.size() == case_names().size());
  std::set<std::string> names;
  const auto again = structured_suite(8, 42);
  for (std::size_t i = 0; i < suite.size(); ++i) {
    names.insert(suite[i].name);
    CHECK(suite[i].name == case_names()[i]);
    CHECK(suite[i].q.is_exactly_symmetric());
    CHECK(suite[i].a == again[i].a);
    CHECK(suite[i].q == again[i].q);
    CHECK(suite[i].a.is_square());
  }
  CHECK(names.size() == suite.size());

  CHECK(make_case("zero", 5, 1).a.is_zero());
  const DenseMatrix j = make_case("jordan", 4, 1).a;
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(j(i, i) == 0.5);
    if (i + 1 < 4) CHECK(j(i, i + 1) == 1.0);
  }
  const DenseMatrix skew = make_case("random_skew", 6, 3).a;
  CHECK(skew + skew.transposed() == DenseMatrix::zeros(6, 6));
  const DenseMatrix nil = make_case("nilpotent", 5, 3).a;
  DenseMatrix p = nil;
  for (int k = 1; k < 5; ++k) p = multiply(p, nil);
  CHECK(p.is_zero());
  const DenseMatrix spread = make_case("diag_spread", 7, 1).a;
  CHECK(one_norm(spread) == doctest::Approx(1e3));
  CHECK(make_case("fdm", 8, 1).a.rows() == 9);
  CHECK_THROWS_AS(make_case("nope", 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(structured_suite(1, 1), std::invalid_argument);
}
