#pragma once

// Data-parallel dense kernels on contiguous row-major storage.
//
// Every kernel has an OpenMP version and a `_serial` reference. The two
// perform the same floating-point operations in the same order per output
// entry, so their results are bitwise identical; the tests rely on that.

#include <cstddef>
#include <span>

namespace philyap::kernels {

/// C (m x n) = A (m x k) * B (k x n).
void gemm(std::size_t m, std::size_t k, std::size_t n, std::span<const double> a,
          std::span<const double> b, std::span<double> c);
void gemm_serial(std::size_t m, std::size_t k, std::size_t n, std::span<const double> a,
                 std::span<const double> b, std::span<double> c);

/// C (m x n) = A (m x k) * B^T, with B stored as (n x k).
void gemm_nt(std::size_t m, std::size_t k, std::size_t n, std::span<const double> a,
             std::span<const double> b, std::span<double> c);
void gemm_nt_serial(std::size_t m, std::size_t k, std::size_t n, std::span<const double> a,
                    std::span<const double> b, std::span<double> c);

/// C (n x n) = A * B^T when the product is known to be symmetric. Only the
/// upper triangle is accumulated; the lower triangle is a mirror, so the
/// result is exactly symmetric.
void gemm_nt_symmetric(std::size_t n, std::size_t k, std::span<const double> a,
                       std::span<const double> b, std::span<double> c);
void gemm_nt_symmetric_serial(std::size_t n, std::size_t k, std::span<const double> a,
                              std::span<const double> b, std::span<double> c);

/// C = P + P^T for square P.
void add_transpose(std::size_t n, std::span<const double> p, std::span<double> c);
void add_transpose_serial(std::size_t n, std::span<const double> p, std::span<double> c);

/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void axpy_serial(double alpha, std::span<const double> x, std::span<double> y);

/// Number of OpenMP threads the parallel kernels will use.
int max_threads();

}  // namespace philyap::kernels
