#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "philyap/dense_matrix.hpp"

namespace philyap::gallery {

struct GalleryCase {
  std::string name;
  DenseMatrix a;
  DenseMatrix q;  // exactly symmetric
  std::string notes;
};

/// rows x cols matrix of uniform(-1, 1) entries from mt19937_64(seed). The
/// mapping from raw 64-bit draws to doubles is fixed here, so the output does
/// not depend on the standard library's distributions.
DenseMatrix random_uniform(std::size_t rows, std::size_t cols, std::uint64_t seed);

/// (M + M^T) / 2 with M = random_uniform(n, n, seed).
DenseMatrix random_symmetric(std::size_t n, std::uint64_t seed);

/// c tridiag(1, -2, 1) of size n.
DenseMatrix laplacian_1d(std::size_t n, double c);

/// Pieces of the advection-diffusion operator on the n0 x n0 interior grid of
/// (0,1)^2, spacing 1/(n0+1), x index fastest.
DenseMatrix fdm_diffusion(std::size_t n0);
/// Centered differences for -10x d/dx - 100y d/dy.
DenseMatrix fdm_advection(std::size_t n0);
/// fdm_diffusion(n0) + fdm_advection(n0), Dirichlet zero boundary.
DenseMatrix fdm_advection_diffusion(std::size_t n0);

enum class Axis { kX, kY };

/// N x 1 column with ones at nodes whose axis coordinate lies in (lo, hi].
DenseMatrix load_vector_indicator(std::size_t n0, Axis axis, double lo, double hi);

/// Names in the order structured_suite returns them.
const std::vector<std::string>& case_names();

/// One named case. Most cases have size n; "fdm" has size ceil(sqrt(n))^2.
/// Throws std::invalid_argument for an unknown name.
GalleryCase make_case(std::string_view name, std::size_t n, std::uint64_t seed);

/// Every case in case_names() order.
std::vector<GalleryCase> structured_suite(std::size_t n, std::uint64_t seed);

}  // namespace philyap::gallery
