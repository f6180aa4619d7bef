#pragma once

// Brute-force references for phi_l(L_A)[Q]. Nothing here calls the kernel:
// dense products go through BLAS, scalar phi values through 50-digit floats.
//
// Memory grows like N^4; do not run several N = 64 references at once.

#include <cstddef>
#include <span>
#include <vector>

#include "philyap/dense_matrix.hpp"

namespace philyap::oracle {

inline constexpr std::size_t kMaxOracleSize = 64;

/// Column-stacking vectorization, vec(X)[i + N j] = X(i, j).
std::vector<double> vec(const DenseMatrix& x);
DenseMatrix unvec(std::span<const double> v, std::size_t n);

/// A (+) A = A (x) I + I (x) A, so that kron_sum(A) vec(X) = vec(A X + X A^T).
/// Throws std::length_error("oracle scale exceeded") for N > 64.
DenseMatrix kron_sum(const DenseMatrix& a);

struct VectorizedSystem {
  DenseMatrix l;          // N^2 x N^2
  std::vector<double> b;  // vec(Q)
};
VectorizedSystem vectorize(const DenseMatrix& a, const DenseMatrix& q);

/// phi_l(L_A)[Q] from the exponential of the augmented matrix
/// [[L, b e_1^T], [0, J]] (J the l x l upshift), by the 60-term Taylor polynomial at
/// 1-norm < 1/4 followed by repeated squaring. l = 0 gives e^{L_A}[Q].
DenseMatrix phi_reference(const DenseMatrix& a, const DenseMatrix& q, int l);
/// phi_k(L_A)[Q] for k = 0..l_max from a single augmented exponential.
std::vector<DenseMatrix> phi_reference_all(const DenseMatrix& a, const DenseMatrix& q, int l_max);

/// Integrates x' = L x + t^{l-1}/(l-1)! vec(Q), x(0) = 0, over [0, t] with an
/// adaptive Dormand-Prince 5(4) pair (atol 1e-14, rtol 1e-13). The state is
/// normalized by max|vec Q| t^l / l! so that the absolute tolerance does not
/// swamp small solutions. The exact answer is t^l phi_l(t L_A)[Q]. Throws NumericalError("stiff beyond oracle")
/// when the step size underflows or the step budget runs out.
DenseMatrix dle_reference(const DenseMatrix& a, const DenseMatrix& q, int l, double t);

/// phi_l(z) for real z in 50-digit arithmetic, rounded to double.
double scalar_phi(int l, double z);

/// phi_k(L_A)[Q], k = 1..l_max, for A = c tridiag(1, -2, 1) of size n, from
/// the closed-form eigensystem of the tridiagonal matrix. Works beyond the
/// Kronecker size limit; only O(n^3) work.
std::vector<DenseMatrix> laplacian_phi_reference(std::size_t n, double c, const DenseMatrix& q, int l_max);

}  // namespace philyap::oracle
