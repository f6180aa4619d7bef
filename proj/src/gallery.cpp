#include "philyap/gallery.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace philyap::gallery {
namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t case_seed(std::string_view name, std::uint64_t seed, std::uint64_t salt) {
  return fnv1a(name) ^ (seed * 0x9e3779b97f4a7c15ULL) ^ salt;
}

double uniform_pm1(std::mt19937_64& gen) {
  return std::ldexp(static_cast<double>(gen() >> 11), -52) - 1.0;
}

std::size_t ceil_sqrt(std::size_t n) {
  std::size_t r = 1;
  while (r * r < n) ++r;
  return r;
}

double node(std::size_t i, std::size_t n0) { return static_cast<double>(i) / static_cast<double>(n0 + 1); }

DenseMatrix spread_diagonal(std::size_t n) {
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double e = (n == 1) ? 0.0 : -3.0 + 6.0 * static_cast<double>(i) / static_cast<double>(n - 1);
    a(i, i) = -std::pow(10.0, e);
  }
  return a;
}

DenseMatrix jordan(std::size_t n, double lambda) {
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = lambda;
    if (i + 1 < n) a(i, i + 1) = 1.0;
  }
  return a;
}

DenseMatrix nonnormal_triangular(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = -1.0 - static_cast<double>(i) / static_cast<double>(n);
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = 5.0 * uniform_pm1(gen);
  }
  return a;
}

DenseMatrix defective_blocks(std::size_t n) {
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; i += 2) {
    const double lambda = -0.5 * static_cast<double>(i / 2 + 1);
    a(i, i) = lambda;
    if (i + 1 < n) {
      a(i + 1, i + 1) = lambda;
      a(i, i + 1) = 1.0;
    }
  }
  return a;
}

}  // namespace

DenseMatrix random_uniform(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  DenseMatrix m(rows, cols);
  for (double& x : m.data()) x = uniform_pm1(gen);
  return m;
}

DenseMatrix random_symmetric(std::size_t n, std::uint64_t seed) {
  const DenseMatrix m = random_uniform(n, n, seed);
  DenseMatrix q(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double v = 0.5 * (m(i, j) + m(j, i));
      q(i, j) = v;
      q(j, i) = v;
    }
  return q;
}

DenseMatrix laplacian_1d(std::size_t n, double c) {
  if (n < 1) throw std::invalid_argument("laplacian_1d: n must be >= 1");
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = -2.0 * c;
    if (i + 1 < n) {
      a(i, i + 1) = c;
      a(i + 1, i) = c;
    }
  }
  return a;
}

DenseMatrix fdm_diffusion(std::size_t n0) {
  if (n0 < 1) throw std::invalid_argument("fdm: n0 must be >= 1");
  const std::size_t n = n0 * n0;
  const double inv_h2 = static_cast<double>((n0 + 1) * (n0 + 1));
  DenseMatrix a(n, n);
  for (std::size_t j = 0; j < n0; ++j)
    for (std::size_t i = 0; i < n0; ++i) {
      const std::size_t r = j * n0 + i;
      a(r, r) = -4.0 * inv_h2;
      if (i > 0) a(r, r - 1) = inv_h2;
      if (i + 1 < n0) a(r, r + 1) = inv_h2;
      if (j > 0) a(r, r - n0) = inv_h2;
      if (j + 1 < n0) a(r, r + n0) = inv_h2;
    }
  return a;
}

DenseMatrix fdm_advection(std::size_t n0) {
  if (n0 < 1) throw std::invalid_argument("fdm: n0 must be >= 1");
  const std::size_t n = n0 * n0;
  const double inv_2h = 0.5 * static_cast<double>(n0 + 1);
  DenseMatrix a(n, n);
  for (std::size_t j = 0; j < n0; ++j)
    for (std::size_t i = 0; i < n0; ++i) {
      const std::size_t r = j * n0 + i;
      const double bx = -10.0 * node(i + 1, n0) * inv_2h;
      const double by = -100.0 * node(j + 1, n0) * inv_2h;
      if (i + 1 < n0) a(r, r + 1) = bx;
      if (i > 0) a(r, r - 1) = -bx;
      if (j + 1 < n0) a(r, r + n0) = by;
      if (j > 0) a(r, r - n0) = -by;
    }
  return a;
}

DenseMatrix fdm_advection_diffusion(std::size_t n0) { return fdm_diffusion(n0) + fdm_advection(n0); }

DenseMatrix load_vector_indicator(std::size_t n0, Axis axis, double lo, double hi) {
  if (!(lo >= 0.0 && lo < hi && hi <= 1.0)) throw std::invalid_argument("load_vector_indicator: need 0 <= lo < hi <= 1");
  DenseMatrix b(n0 * n0, 1);
  for (std::size_t j = 0; j < n0; ++j)
    for (std::size_t i = 0; i < n0; ++i) {
      const double c = node(axis == Axis::kX ? i + 1 : j + 1, n0);
      if (c > lo && c <= hi) b(j * n0 + i, 0) = 1.0;
    }
  return b;
}

const std::vector<std::string>& case_names() {
  static const std::vector<std::string> names{
      "zero",         "identity",        "diag_spread",          "diag_small",       "jordan",
      "nilpotent",    "random_dense",    "random_symmetric",     "random_skew",      "nonnormal_triangular",
      "defective",    "laplacian",       "fdm"};
  return names;
}

GalleryCase make_case(std::string_view name, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("make_case: n must be >= 1");
  const std::uint64_t a_seed = case_seed(name, seed, 0xa);
  GalleryCase c{std::string(name), DenseMatrix(n, n), DenseMatrix(n, n), ""};
  if (name == "zero") {
    c.notes = "A = 0";
  } else if (name == "identity") {
    c.a = DenseMatrix::identity(n);
    c.notes = "A = I";
  } else if (name == "diag_spread") {
    c.a = spread_diagonal(n);
    c.notes = "diagonal, -10^-3 .. -10^3";
  } else if (name == "diag_small") {
    const DenseMatrix r = random_uniform(n, 1, a_seed);
    for (std::size_t i = 0; i < n; ++i) c.a(i, i) = 1e-3 * r(i, 0);
    c.notes = "diagonal, |entries| <= 1e-3";
  } else if (name == "jordan") {
    c.a = jordan(n, 0.5);
    c.notes = "single Jordan block, eigenvalue 0.5";
  } else if (name == "nilpotent") {
    c.a = jordan(n, 0.0);
    c.notes = "upshift";
  } else if (name == "random_dense") {
    c.a = random_uniform(n, n, a_seed);
    c.notes = "uniform(-1, 1)";
  } else if (name == "random_symmetric") {
    c.a = random_symmetric(n, a_seed);
    c.notes = "symmetric part of uniform(-1, 1)";
  } else if (name == "random_skew") {
    const DenseMatrix m = random_uniform(n, n, a_seed);
    c.a = 0.5 * (m - m.transposed());
    c.notes = "skew part of uniform(-1, 1)";
  } else if (name == "nonnormal_triangular") {
    c.a = nonnormal_triangular(n, a_seed);
    c.notes = "upper triangular, diagonal in [-2, -1), off-diagonal 5 uniform(-1, 1)";
  } else if (name == "defective") {
    c.a = defective_blocks(n);
    c.notes = "2x2 Jordan blocks, eigenvalues -0.5, -1, ...";
  } else if (name == "laplacian") {
    const double h = static_cast<double>(n + 1);
    c.a = laplacian_1d(n, h * h);
    c.notes = "(n+1)^2 tridiag(1, -2, 1)";
  } else if (name == "fdm") {
    const std::size_t n0 = ceil_sqrt(n);
    c.a = fdm_advection_diffusion(n0);
    c.notes = "advection-diffusion, n0 = " + std::to_string(n0);
  } else {
    throw std::invalid_argument("unknown gallery case '" + std::string(name) + "'");
  }
  c.q = random_symmetric(c.a.rows(), case_seed(name, seed, 0x9));
  return c;
}

std::vector<GalleryCase> structured_suite(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("structured_suite: n must be >= 2");
  std::vector<GalleryCase> out;
  out.reserve(case_names().size());
  for (const std::string& name : case_names()) out.push_back(make_case(name, n, seed));
  return out;
}

}  // namespace philyap::gallery
