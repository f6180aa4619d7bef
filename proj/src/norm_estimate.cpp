#include "philyap/norm_estimate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

namespace philyap {
namespace {

double column_one_norm(const DenseMatrix& y, std::size_t j) {
  double s = 0.0;
  for (std::size_t i = 0; i < y.rows(); ++i) s += std::abs(y(i, j));
  return s;
}

// Columns of +-1 vectors are parallel iff |dot| == n.
bool parallel(const DenseMatrix& a, std::size_t ja, const DenseMatrix& b, std::size_t jb) {
  double dot = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) dot += a(i, ja) * b(i, jb);
  return std::abs(dot) == static_cast<double>(a.rows());
}

void fill_random_signs(DenseMatrix& s, std::size_t j, std::mt19937_64& rng, double scale) {
  for (std::size_t i = 0; i < s.rows(); ++i) s(i, j) = (rng() & 1U) ? scale : -scale;
}

void check_block(const DenseMatrix& y) {
  for (double v : y.data())
    if (!std::isfinite(v)) throw NumericalError("norm overflow");
}

// Product that throws the estimator's overflow error instead of the generic one.
DenseMatrix guarded_multiply(const DenseMatrix& a, const DenseMatrix& x) {
  try {
    return multiply(a, x);
  } catch (const NumericalError&) {
    throw NumericalError("norm overflow");
  }
}

}  // namespace

NormEstimate normest1(std::size_t n, const BlockOperator& apply, const BlockOperator& apply_transpose,
                      const NormOptions& options) {
  const std::size_t t = std::min<std::size_t>(std::max(options.probe_columns, 1), n);
  std::mt19937_64 rng(options.seed);
  NormEstimate result;

  DenseMatrix x(n, t);
  for (std::size_t i = 0; i < n; ++i) x(i, 0) = 1.0;
  for (std::size_t j = 1; j < t; ++j) {
    // Resampling is bounded: with n == 1 every +-1 column is parallel.
    for (int attempt = 0; attempt < 100; ++attempt) {
      fill_random_signs(x, j, rng, 1.0);
      bool clash = false;
      for (std::size_t p = 0; p < j && !clash; ++p) clash = parallel(x, j, x, p);
      if (!clash) break;
    }
  }
  x *= 1.0 / static_cast<double>(n);

  std::set<std::size_t> ind_hist;
  std::vector<std::size_t> ind(n);
  std::iota(ind.begin(), ind.end(), 0);
  std::size_t ind_best = 0;
  double est_old = 0.0;
  DenseMatrix s(n, t);
  DenseMatrix s_old(n, t);

  for (int k = 1;; ++k) {
    DenseMatrix y = apply(x);
    ++result.products_used;
    check_block(y);

    double est = 0.0;
    std::size_t j_best = 0;
    for (std::size_t j = 0; j < t; ++j) {
      const double c = column_one_norm(y, j);
      if (c > est) {
        est = c;
        j_best = j;
      }
    }
    if (est > est_old || k == 2) ind_best = ind[j_best];
    if (k >= 2 && est <= est_old) {
      est = est_old;
      result.value = est;
      break;
    }
    est_old = est;
    result.value = est;
    s_old = s;
    if (k > options.max_iterations) break;

    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < t; ++j) s(i, j) = y(i, j) >= 0.0 ? 1.0 : -1.0;

    if (k >= 2) {
      bool all_parallel = true;
      for (std::size_t j = 0; j < t && all_parallel; ++j) {
        bool found = false;
        for (std::size_t p = 0; p < t && !found; ++p) found = parallel(s, j, s_old, p);
        all_parallel = found;
      }
      if (all_parallel) break;
    }
    if (t > 1) {
      for (std::size_t j = 0; j < t; ++j) {
        for (int attempt = 0; attempt < 100; ++attempt) {
          bool clash = false;
          for (std::size_t p = 0; p < j && !clash; ++p) clash = parallel(s, j, s, p);
          for (std::size_t p = 0; p < t && !clash && k >= 2; ++p) clash = parallel(s, j, s_old, p);
          if (!clash) break;
          fill_random_signs(s, j, rng, 1.0);
        }
      }
    }

    const DenseMatrix z = apply_transpose(s);
    ++result.products_used;
    check_block(z);
    std::vector<double> h(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < t; ++j) h[i] = std::max(h[i], std::abs(z(i, j)));

    const double h_max = *std::max_element(h.begin(), h.end());
    if (k >= 2 && h_max == h[ind_best]) break;

    std::iota(ind.begin(), ind.end(), 0);
    std::stable_sort(ind.begin(), ind.end(), [&](std::size_t a, std::size_t b) { return h[a] > h[b]; });
    if (t > 1) {
      if (std::all_of(ind.begin(), ind.begin() + static_cast<std::ptrdiff_t>(t),
                      [&](std::size_t i) { return ind_hist.count(i) > 0; }))
        break;
      std::stable_partition(ind.begin(), ind.end(), [&](std::size_t i) { return ind_hist.count(i) == 0; });
    }
    x = DenseMatrix(n, t);
    for (std::size_t j = 0; j < t; ++j) {
      x(ind[j], j) = 1.0;
      ind_hist.insert(ind[j]);
    }
  }
  return result;
}

NormEstimate estimate_power_norm(const DenseMatrix& a, int k, const NormOptions& options) {
  require_square(a, "estimate_power_norm");
  if (k < 1) throw std::invalid_argument("estimate_power_norm: power must be >= 1");
  NormEstimate result;
  if (a.rows() < options.exact_threshold) {
    DenseMatrix p = a;
    try {
      for (int i = 1; i < k; ++i) {
        p = multiply(p, a);
        ++result.products_used;
      }
    } catch (const NumericalError&) {
      throw NumericalError("norm overflow");
    }
    result.value = one_norm(p);
    result.exact = true;
    return result;
  }
  const DenseMatrix at = a.transposed();
  auto power_apply = [k](const DenseMatrix& m) {
    return [&m, k](const DenseMatrix& block) {
      DenseMatrix y = block;
      for (int i = 0; i < k; ++i) y = guarded_multiply(m, y);
      return y;
    };
  };
  NormEstimate est = normest1(a.rows(), power_apply(a), power_apply(at), options);
  est.products_used *= k;
  return est;
}

PowerNormLadder::PowerNormLadder(DenseMatrix a, NormOptions options)
    : a_(std::move(a)), options_(options), norms_{1.0}, last_power_(DenseMatrix::identity(1)) {
  require_square(a_, "PowerNormLadder");
  if (exact()) last_power_ = DenseMatrix::identity(a_.rows());
}

double PowerNormLadder::norm(int j) {
  if (j < 0) throw std::invalid_argument("PowerNormLadder: negative power");
  while (static_cast<int>(norms_.size()) <= j) {
    const int next = static_cast<int>(norms_.size());
    if (exact()) {
      try {
        last_power_ = next == 1 ? a_ : multiply(last_power_, a_);
      } catch (const NumericalError&) {
        throw NumericalError("norm overflow");
      }
      if (next > 1) ++products_;
      norms_.push_back(one_norm(last_power_));
    } else if (next == 1) {
      norms_.push_back(one_norm(a_));
    } else {
      const NormEstimate e = estimate_power_norm(a_, next, options_);
      products_ += e.products_used;
      norms_.push_back(e.value);
    }
  }
  return norms_[static_cast<std::size_t>(j)];
}

}  // namespace philyap
