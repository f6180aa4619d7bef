#include "philyap/lyapunov.hpp"

#include <array>
#include <stdexcept>
#include <string>

#include "philyap/kernels.hpp"

namespace philyap {
namespace {

constexpr int kMaxFactorial = 170;

std::array<double, kMaxFactorial + 1> make_inverse_factorials() {
  std::array<double, kMaxFactorial + 1> table{};
  long double f = 1.0L;
  for (int n = 0; n <= kMaxFactorial; ++n) {
    if (n > 0) f *= n;
    table[static_cast<std::size_t>(n)] = static_cast<double>(1.0L / f);
  }
  return table;
}

}  // namespace

double inverse_factorial(int n) {
  static const auto table = make_inverse_factorials();
  if (n < 0 || n > kMaxFactorial) throw std::out_of_range("inverse_factorial: n out of range");
  return table[static_cast<std::size_t>(n)];
}

LyapunovOperator::LyapunovOperator(DenseMatrix a) : a_(std::move(a)) {
  require_square(a_, "LyapunovOperator");
}

DenseMatrix LyapunovOperator::apply(const DenseMatrix& x, ProductCounter* counter) const {
  require_same_shape(a_, x, "LyapunovOperator::apply");
  const DenseMatrix p = multiply(a_, x, counter);
  if (x.is_exactly_symmetric()) {
    DenseMatrix out(x.rows(), x.cols());
    kernels::add_transpose(x.rows(), p.data(), out.data());
    ensure_finite(out, "Lyapunov operator");
    return out;
  }
  // X A^T as a separate product; no fused kernel.
  return p + multiply_transposed(x, a_, counter);
}

DenseMatrix LyapunovOperator::apply_power(const DenseMatrix& x, int k, ProductCounter* counter) const {
  if (k < 0) throw std::invalid_argument("apply_power: negative power");
  require_same_shape(a_, x, "LyapunovOperator::apply_power");
  DenseMatrix y = x;
  for (int i = 0; i < k; ++i) y = apply(y, counter);
  return y;
}

DenseMatrix taylor_apply(const LyapunovOperator& op, const DenseMatrix& q, int l, int m,
                         ProductCounter* counter) {
  if (l < 0 || m < 1) throw std::invalid_argument("taylor_apply: need l >= 0 and m >= 1");
  require_same_shape(op.matrix(), q, "taylor_apply");
  if (q.is_zero()) return DenseMatrix(q.rows(), q.cols());
  DenseMatrix t = inverse_factorial(m + l) * q;
  for (int k = m - 1; k >= 0; --k) {
    t = op.apply(t, counter);
    t.add_scaled(inverse_factorial(k + l), q);
  }
  return t;
}

PhiStack::PhiStack(int top, int degree, std::vector<DenseMatrix> values)
    : top_(top), degree_(degree), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != top_) throw std::invalid_argument("PhiStack: size mismatch");
}

const DenseMatrix& PhiStack::at(int j) const {
  if (j < 1 || j > top_) throw std::out_of_range("PhiStack: index " + std::to_string(j) + " out of range");
  return values_[static_cast<std::size_t>(j - 1)];
}

PhiStack phi_stack_down(const LyapunovOperator& op, const DenseMatrix& q, int l, DenseMatrix t_l, int m,
                        ProductCounter* counter) {
  if (l <= 0) throw std::invalid_argument("no lower indices");
  require_same_shape(op.matrix(), q, "phi_stack_down");
  require_same_shape(q, t_l, "phi_stack_down");
  std::vector<DenseMatrix> values(static_cast<std::size_t>(l), DenseMatrix(q.rows(), q.cols()));
  values[static_cast<std::size_t>(l - 1)] = std::move(t_l);
  const bool trivial = q.is_zero();
  for (int j = l - 1; j >= 1; --j) {
    if (trivial) continue;
    DenseMatrix t = op.apply(values[static_cast<std::size_t>(j)], counter);
    t.add_scaled(inverse_factorial(j), q);
    values[static_cast<std::size_t>(j - 1)] = std::move(t);
  }
  return PhiStack(l, m, std::move(values));
}

}  // namespace philyap
