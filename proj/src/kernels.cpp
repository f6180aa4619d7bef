#include "philyap/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <vector>

#include <omp.h>

namespace philyap::kernels {
namespace {

// Below this many multiply-adds the fork/join overhead dominates.
constexpr std::size_t kParallelFlops = 1 << 15;
constexpr std::size_t kParallelElements = 1 << 14;

// One output row of C = A * B, accumulated over k in increasing order.
inline void gemm_row(std::size_t i, std::size_t k, std::size_t n, const double* a,
                     const double* b, double* c) {
  double* ci = c + i * n;
  std::fill(ci, ci + n, 0.0);
  const double* ai = a + i * k;
  for (std::size_t kk = 0; kk < k; ++kk) {
    const double aik = ai[kk];
    const double* bk = b + kk * n;
    for (std::size_t j = 0; j < n; ++j) ci[j] += aik * bk[j];
  }
}

// Upper part (columns j >= i) of row i of C = A * Bt, where bt holds B^T.
inline void gemm_row_upper(std::size_t i, std::size_t k, std::size_t n, const double* a,
                           const double* bt, double* c) {
  double* ci = c + i * n;
  std::fill(ci + i, ci + n, 0.0);
  const double* ai = a + i * k;
  for (std::size_t kk = 0; kk < k; ++kk) {
    const double aik = ai[kk];
    const double* bk = bt + kk * n;
    for (std::size_t j = i; j < n; ++j) ci[j] += aik * bk[j];
  }
}

std::vector<double> transpose_copy(std::size_t rows, std::size_t cols, const double* b) {
  std::vector<double> bt(rows * cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) bt[c * rows + r] = b[r * cols + c];
  return bt;
}

void mirror_upper(std::size_t n, double* c) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) c[j * n + i] = c[i * n + j];
}

}  // namespace

void gemm(std::size_t m, std::size_t k, std::size_t n, std::span<const double> a,
          std::span<const double> b, std::span<double> c) {
  assert(a.size() == m * k && b.size() == k * n && c.size() == m * n);
  const double* pa = a.data();
  const double* pb = b.data();
  double* pc = c.data();
  const bool par = m * n * k >= kParallelFlops;
#pragma omp parallel for schedule(static) if (par)
  for (std::size_t i = 0; i < m; ++i) gemm_row(i, k, n, pa, pb, pc);
}

void gemm_serial(std::size_t m, std::size_t k, std::size_t n, std::span<const double> a,
                 std::span<const double> b, std::span<double> c) {
  assert(a.size() == m * k && b.size() == k * n && c.size() == m * n);
  for (std::size_t i = 0; i < m; ++i) gemm_row(i, k, n, a.data(), b.data(), c.data());
}

void gemm_nt(std::size_t m, std::size_t k, std::size_t n, std::span<const double> a,
             std::span<const double> b, std::span<double> c) {
  assert(b.size() == n * k);
  const auto bt = transpose_copy(n, k, b.data());
  gemm(m, k, n, a, bt, c);
}

void gemm_nt_serial(std::size_t m, std::size_t k, std::size_t n, std::span<const double> a,
                    std::span<const double> b, std::span<double> c) {
  assert(b.size() == n * k);
  const auto bt = transpose_copy(n, k, b.data());
  gemm_serial(m, k, n, a, bt, c);
}

void gemm_nt_symmetric(std::size_t n, std::size_t k, std::span<const double> a,
                       std::span<const double> b, std::span<double> c) {
  assert(a.size() == n * k && b.size() == n * k && c.size() == n * n);
  const auto bt = transpose_copy(n, k, b.data());
  const double* pa = a.data();
  const double* pb = bt.data();
  double* pc = c.data();
  const bool par = n * n * k / 2 >= kParallelFlops;
#pragma omp parallel for schedule(dynamic, 8) if (par)
  for (std::size_t i = 0; i < n; ++i) gemm_row_upper(i, k, n, pa, pb, pc);
  mirror_upper(n, pc);
}

void gemm_nt_symmetric_serial(std::size_t n, std::size_t k, std::span<const double> a,
                              std::span<const double> b, std::span<double> c) {
  assert(a.size() == n * k && b.size() == n * k && c.size() == n * n);
  const auto bt = transpose_copy(n, k, b.data());
  for (std::size_t i = 0; i < n; ++i) gemm_row_upper(i, k, n, a.data(), bt.data(), c.data());
  mirror_upper(n, c.data());
}

void add_transpose(std::size_t n, std::span<const double> p, std::span<double> c) {
  assert(p.size() == n * n && c.size() == n * n);
  const double* pp = p.data();
  double* pc = c.data();
  const bool par = n * n >= kParallelElements;
#pragma omp parallel for schedule(static) if (par)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) pc[i * n + j] = pp[i * n + j] + pp[j * n + i];
}

void add_transpose_serial(std::size_t n, std::span<const double> p, std::span<double> c) {
  assert(p.size() == n * n && c.size() == n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c[i * n + j] = p[i * n + j] + p[j * n + i];
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  const std::size_t len = x.size();
  const double* px = x.data();
  double* py = y.data();
  const bool par = len >= kParallelElements;
#pragma omp parallel for schedule(static) if (par)
  for (std::size_t i = 0; i < len; ++i) py[i] += alpha * px[i];
}

void axpy_serial(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace philyap::kernels
