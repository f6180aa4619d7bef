#pragma once

// Lyapunov-operator phi-functions phi_l(L_A)[Q] by modified scaling and
// squaring with truncated Taylor series.
//
// Evaluation, for parameters (m, s) from select_params:
//   1. A~ = 2^{-s} A, T_l = sum_{k<=m} L_{A~}^k[Q] / (k+l)!  (Horner)
//   2. T_j = L_{A~}[T_{j+1}] + Q/j!, j = l-1..1
//   3. E = sum_{k<=m+l} A~^k / k!  (Paterson-Stockmeyer)
//   4. for each doubling: T_k <- 2^{-k} (E T_k E^T + sum_{j<=k} T_j/(k-j)!),
//      then E <- E E. The operator exponential is never formed; its action
//      is E X E^T.
//
// Product accounting (symmetric Q): one GEMM per operator application, two
// per E X E^T, one per squaring of E. This reproduces phi_cost() exactly.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "philyap/dense_matrix.hpp"
#include "philyap/params.hpp"

namespace philyap {

struct PhiOptions {
  /// Also return the full-scale exponential factor E with e^{L_A}[X] = E X E^T.
  bool want_exponential = false;
  SelectOptions select{};
  /// Optional cache of power norms of exactly the A passed to the kernel.
  PowerNormLadder* ladder = nullptr;
};

struct PhiResult {
  /// values[i] approximates phi_{first_index + i}(L_A)[Q].
  std::vector<DenseMatrix> values;
  int first_index = 0;
  /// Full-scale exponential factor, when requested.
  std::optional<DenseMatrix> exponential;
  PhiParams params;
  /// Products used by the phi evaluation proper.
  std::int64_t products_used = 0;
  /// What the cost model predicts for this call (equal to products_used).
  std::int64_t predicted_products = 0;
  /// Extra products spent on the exponential factor, not part of the model.
  std::int64_t exponential_products = 0;
  std::vector<std::string> warnings;

  const DenseMatrix& phi(int j) const;
  int last_index() const { return first_index + static_cast<int>(values.size()) - 1; }
};

/// Truncated Taylor polynomial of e^{A} of total degree d in {6, 9, 12, 16, 20, 25},
/// evaluated by Paterson-Stockmeyer with exactly paterson_stockmeyer_cost(d)
/// products.
DenseMatrix exp_taylor_ps(const DenseMatrix& a, int degree, ProductCounter* counter = nullptr);

/// phi_l(L_A)[Q] for l >= 1. Only index l is returned.
PhiResult phi_lyap(const DenseMatrix& a, const DenseMatrix& q, int l, const PhiOptions& options = {});

/// phi_k(L_A)[Q] for all k = 1..l_max (parameters chosen for l_max). With
/// l_max = 0 returns e^{L_A}[Q] = E Q E^T.
PhiResult phi_multi(const DenseMatrix& a, const DenseMatrix& q, int l_max, const PhiOptions& options = {});

/// phi_multi(t A, Q, l): phi_k(t L_A)[Q], k = 1..l, for t > 0.
PhiResult phi_scaled(const DenseMatrix& a, const DenseMatrix& q, int l, double t,
                     const PhiOptions& options = {});

/// Product count phi_lyap / phi_multi will report for the given parameters.
std::int64_t predicted_phi_products(int l, const PhiParams& params, bool all_indices, bool symmetric_q);

}  // namespace philyap
