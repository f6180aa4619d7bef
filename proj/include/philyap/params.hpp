#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "philyap/dense_matrix.hpp"
#include "philyap/norm_estimate.hpp"

namespace philyap {

/// Unit roundoff target used for the built-in thresholds.
inline constexpr double kDefaultTolerance = 0x1p-53;

/// Total degrees m + l the parameter search walks through, in order.
inline constexpr std::array<int, 6> kDegreeSet{6, 9, 12, 16, 20, 25};
inline constexpr int kMaxPower = 5;  // p_max

/// Thresholds theta_d: the largest scaled operator norm for which the
/// degree-d truncation keeps the relative quasi-backward error below the
/// tolerance.
class ThetaTable {
 public:
  ThetaTable(double tolerance, std::map<int, double> entries);

  /// Parses "degree theta" lines; '#' starts a comment; an optional
  /// "tolerance <value>" line overrides the default tolerance.
  static ThetaTable parse(std::string_view text);
  /// The table generated by derive_theta and embedded at build time.
  static const ThetaTable& builtin();

  double tolerance() const { return tolerance_; }
  const std::map<int, double>& entries() const { return entries_; }
  bool contains(int degree) const { return entries_.count(degree) > 0; }
  /// Throws std::out_of_range for degrees not in the table.
  double at(int degree) const;

 private:
  double tolerance_;
  std::map<int, double> entries_;
};

/// Computes theta_d from the power series of log(e^{-x} T_d(x)), with T_d the
/// degree-d Taylor polynomial of e^x, in 100-digit arithmetic over 260 terms.
/// Bisects hbar_d(theta) = tol to relative precision 1e-10.
double derive_theta(int degree, double tol = kDefaultTolerance);

/// Where the 1/p root goes when turning power norms into alpha_p.
enum class RootConvention {
  /// d_k = 2 max_j (||A^j|| ||A^{k-j}||)^{1/k}; an upper bound on ||L_A^k||^{1/k}.
  kBinomialBound,
  /// d_k = 2 max_j ||A^j|| ||A^{k-j}|| and alpha_p = max(d_p^{1/p}, d_{p+1}^{1/(p+1)}).
  kAlgorithmListing,
};

/// 2 max_{j=0..k} (||A^j||_1 ||A^{k-j}||_1)^{1/k}.
double d_bound(PowerNormLadder& ladder, int k);
double d_bound(const DenseMatrix& a, int k, const NormOptions& options = {});

double alpha_p(PowerNormLadder& ladder, int p, RootConvention convention = RootConvention::kBinomialBound);
double alpha_p(const DenseMatrix& a, int p, RootConvention convention = RootConvention::kBinomialBound,
               const NormOptions& options = {});

struct PhiParams {
  int m = 0;
  int s = 0;
  double alpha_star = 0.0;
  int total_degree = 0;
  /// Products the symmetric-input evaluation of phi_l will use.
  std::int64_t predicted_products = 0;
};

struct SelectOptions {
  NormOptions norms{};
  RootConvention convention = RootConvention::kBinomialBound;
  const ThetaTable* table = nullptr;  // builtin() when null
  /// With s = 0, keep walking the degree set while the truncated phi_l series
  /// bound sum_{k>m} alpha^k l!/(k+l)! exceeds the tolerance. The threshold
  /// test alone bounds the error relative to the exponential, which for small
  /// alpha and large l leaves a forward error of order tol l!/alpha^{l-1}.
  bool forward_guard = true;
};

/// sum_{k>m} alpha^k l! / (k+l)!: relative truncation bound for phi_l.
double phi_truncation_bound(double alpha, int l, int m);

/// Chooses the Taylor degree m and scaling exponent s for phi_l(L_A).
/// Throws std::invalid_argument("degree set exhausted") when l >= 25.
PhiParams select_params(const DenseMatrix& a, int l, const SelectOptions& options = {});
/// Same, for the matrix scale * ladder.matrix(), reusing cached power norms.
PhiParams select_params(PowerNormLadder& ladder, int l, double scale = 1.0,
                        const SelectOptions& options = {});

/// ceil(sqrt(d)) + floor(d / ceil(sqrt(d))) - 2.
int paterson_stockmeyer_cost(int degree);

/// Total matrix products to evaluate phi_l with parameters (m, s), symmetric Q:
/// m when s = 0, else pi_{m+l} + m + l + 1 + (s-1)(2l+1).
std::int64_t phi_cost(int l, int m, int s);

}  // namespace philyap
