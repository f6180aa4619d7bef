#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "philyap/dense_matrix.hpp"

namespace philyap {

struct NormOptions {
  /// Matrices with fewer rows than this get exact dense powers.
  std::size_t exact_threshold = 64;
  /// Probe block width t of the block 1-norm estimator.
  int probe_columns = 2;
  int max_iterations = 5;
  std::uint64_t seed = 42;
};

struct NormEstimate {
  double value = 0.0;
  bool exact = false;
  /// Matrix-matrix (or matrix-block) products consumed.
  std::int64_t products_used = 0;
};

/// Applies a linear operator (or its transpose) to an n x t block.
using BlockOperator = std::function<DenseMatrix(const DenseMatrix&)>;

/// Block 1-norm estimator of Higham and Tisseur for an n x n operator given
/// only through products with blocks. The result is a lower bound on the true
/// 1-norm. Throws NumericalError("norm overflow") on non-finite products.
NormEstimate normest1(std::size_t n, const BlockOperator& apply, const BlockOperator& apply_transpose,
                      const NormOptions& options = {});

/// ||A^k||_1, exactly for small A and by normest1 otherwise; A^k is never
/// formed in the estimated branch.
NormEstimate estimate_power_norm(const DenseMatrix& a, int k, const NormOptions& options = {});

/// Cache of ||A^j||_1 for j = 0, 1, 2, ... In the exact branch the dense
/// powers are built incrementally, so asking for j after j-1 costs one product.
class PowerNormLadder {
 public:
  explicit PowerNormLadder(DenseMatrix a, NormOptions options = {});

  /// ||A^j||_1 with the convention ||A^0||_1 = 1.
  double norm(int j);
  const DenseMatrix& matrix() const { return a_; }
  bool exact() const { return a_.rows() < options_.exact_threshold; }
  std::int64_t products_used() const { return products_; }

 private:
  DenseMatrix a_;
  NormOptions options_;
  std::vector<double> norms_;  // norms_[j] = ||A^j||_1
  DenseMatrix last_power_;     // A^(norms_.size()-1), exact branch only
  std::int64_t products_ = 0;
};

}  // namespace philyap
