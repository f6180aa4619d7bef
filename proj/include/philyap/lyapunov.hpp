#pragma once

#include <vector>

#include "philyap/dense_matrix.hpp"

namespace philyap {

/// The Lyapunov operator X -> A X + X A^T for a fixed square A.
class LyapunovOperator {
 public:
  explicit LyapunovOperator(DenseMatrix a);

  const DenseMatrix& matrix() const { return a_; }
  std::size_t dimension() const { return a_.rows(); }

  /// A X + X A^T. For exactly symmetric X this is P + P^T with P = A X (one
  /// product, exactly symmetric output); otherwise two products.
  DenseMatrix apply(const DenseMatrix& x, ProductCounter* counter = nullptr) const;

  /// k-fold composition; k = 0 returns X.
  DenseMatrix apply_power(const DenseMatrix& x, int k, ProductCounter* counter = nullptr) const;

 private:
  DenseMatrix a_;
};

/// 1/n! in double precision, n <= 170.
double inverse_factorial(int n);

/// Truncated series sum_{k=0}^{m} L^k[Q] / (k+l)! by Horner nesting over
/// operator applications (m applications). Q == 0 returns 0 without work.
DenseMatrix taylor_apply(const LyapunovOperator& op, const DenseMatrix& q, int l, int m,
                         ProductCounter* counter = nullptr);

/// Truncated phi values T_j for j = 1..top, all at one scale.
class PhiStack {
 public:
  PhiStack(int top, int degree, std::vector<DenseMatrix> values);

  int top() const { return top_; }
  int degree() const { return degree_; }
  /// T_j, 1 <= j <= top.
  const DenseMatrix& at(int j) const;
  const std::vector<DenseMatrix>& values() const { return values_; }

 private:
  int top_;
  int degree_;
  std::vector<DenseMatrix> values_;  // values_[j-1] = T_j
};

/// Completes a stack from T_l = taylor_apply(op, Q, l, m) by the downward
/// recursion T_j = L[T_{j+1}] + Q/j!, j = l-1, ..., 1 (l-1 applications).
/// Throws std::invalid_argument("no lower indices") for l = 0.
PhiStack phi_stack_down(const LyapunovOperator& op, const DenseMatrix& q, int l, DenseMatrix t_l, int m,
                        ProductCounter* counter = nullptr);

}  // namespace philyap
