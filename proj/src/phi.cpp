#include "philyap/phi.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "philyap/lyapunov.hpp"

namespace philyap {
namespace {

constexpr double kAsymmetryWarning = 1e-12;

bool in_degree_set(int degree) {
  return std::find(kDegreeSet.begin(), kDegreeSet.end(), degree) != kDegreeSet.end();
}

DenseMatrix scaled_by_power_of_two(const DenseMatrix& a, int s) {
  DenseMatrix out = a;
  for (double& x : out.data()) x = std::ldexp(x, -s);
  return out;
}

// One doubling step: T_k(2L)[Q] = 2^{-k} (E T_k E^T + sum_{j=1}^{k} T_j / (k-j)!)
// for k = first..l, where t[j-1] holds T_j at the current scale.
std::vector<DenseMatrix> double_scale(const DenseMatrix& e, const std::vector<DenseMatrix>& t, int first,
                                      ProductCounter* counter) {
  const int l = static_cast<int>(t.size());
  std::vector<DenseMatrix> next;
  next.reserve(static_cast<std::size_t>(l - first + 1));
  for (int k = first; k <= l; ++k) {
    DenseMatrix v = congruence(e, t[static_cast<std::size_t>(k - 1)], counter);
    for (int j = 1; j <= k; ++j) v.add_scaled(inverse_factorial(k - j), t[static_cast<std::size_t>(j - 1)]);
    for (double& x : v.data()) x = std::ldexp(x, -k);
    next.push_back(std::move(v));
  }
  return next;
}

struct Evaluation {
  std::vector<DenseMatrix> values;
  int first_index = 0;
  std::optional<DenseMatrix> exponential;
  std::int64_t exponential_products = 0;
};

// l == 0: e^{L_A}[Q] = E Q E^T with E = (T_0(2^{-s} A))^{2^s}.
Evaluation evaluate_exponential(const DenseMatrix& a, const DenseMatrix& q, const PhiParams& params,
                                bool want_exponential, ProductCounter& counter) {
  DenseMatrix e = exp_taylor_ps(scaled_by_power_of_two(a, params.s), params.total_degree, &counter);
  try {
    for (int i = 0; i < params.s; ++i) e = multiply(e, e, &counter);
  } catch (const NumericalError&) {
    throw NumericalError("overflow during squaring");
  }
  Evaluation out;
  out.first_index = 0;
  out.values.push_back(congruence(e, q, &counter));
  if (want_exponential) out.exponential = std::move(e);
  return out;
}

Evaluation evaluate(const DenseMatrix& a, const DenseMatrix& q, int l, const PhiParams& params,
                    bool all_indices, bool want_exponential, ProductCounter& counter) {
  if (l == 0) return evaluate_exponential(a, q, params, want_exponential, counter);

  const int m = params.m;
  const int s = params.s;
  Evaluation out;
  const LyapunovOperator op(scaled_by_power_of_two(a, s));
  DenseMatrix t_l = taylor_apply(op, q, l, m, &counter);

  if (s == 0) {
    if (all_indices) {
      PhiStack stack = phi_stack_down(op, q, l, std::move(t_l), m, &counter);
      out.values = stack.values();
      out.first_index = 1;
    } else {
      out.values.push_back(std::move(t_l));
      out.first_index = l;
    }
    if (want_exponential) {
      ProductCounter extra;
      out.exponential = exp_taylor_ps(a, m + l, &extra);
      out.exponential_products = extra.count();
    }
    return out;
  }

  PhiStack stack = phi_stack_down(op, q, l, std::move(t_l), m, &counter);
  DenseMatrix e = exp_taylor_ps(op.matrix(), m + l, &counter);
  std::vector<DenseMatrix> t = stack.values();
  try {
    for (int i = 1; i <= s - 1; ++i) {
      t = double_scale(e, t, 1, &counter);
      e = multiply(e, e, &counter);
    }
    const int first = all_indices ? 1 : l;
    out.values = double_scale(e, t, first, &counter);
    out.first_index = first;
    if (want_exponential) {
      ProductCounter extra;
      out.exponential = multiply(e, e, &extra);
      out.exponential_products = extra.count();
    }
  } catch (const NumericalError&) {
    throw NumericalError("overflow during squaring");
  }
  return out;
}

void check_inputs(const DenseMatrix& a, const DenseMatrix& q, const char* what) {
  require_square(a, what);
  require_same_shape(a, q, what);
}

PhiResult run(const DenseMatrix& a, const DenseMatrix& q, int l, bool all_indices, const PhiParams& params,
              const PhiOptions& options) {
  PhiResult result;
  result.params = params;
  const double asym = symmetry_defect(q);
  const bool symmetric = q.is_exactly_symmetric();
  if (asym > kAsymmetryWarning) {
    std::ostringstream msg;
    msg << "Q is not symmetric (relative asymmetry " << asym << ")";
    result.warnings.push_back(msg.str());
  }

  if (q.is_zero()) {
    const int first = (l == 0) ? 0 : (all_indices ? 1 : l);
    result.first_index = first;
    result.values.assign(static_cast<std::size_t>(l - first + 1), DenseMatrix(q.rows(), q.cols()));
    if (options.want_exponential) {
      // The exponential factor is still well defined; compute it on its own.
      ProductCounter extra;
      DenseMatrix e = exp_taylor_ps(scaled_by_power_of_two(a, params.s), params.total_degree, &extra);
      for (int i = 0; i < params.s; ++i) e = multiply(e, e, &extra);
      result.exponential = std::move(e);
      result.exponential_products = extra.count();
    }
    return result;
  }

  ProductCounter counter;
  Evaluation ev = evaluate(a, q, l, params, all_indices, options.want_exponential, counter);
  for (const DenseMatrix& v : ev.values) ensure_finite(v, "phi evaluation");
  result.values = std::move(ev.values);
  result.first_index = ev.first_index;
  result.exponential = std::move(ev.exponential);
  result.exponential_products = ev.exponential_products;
  result.products_used = counter.count();
  result.predicted_products = predicted_phi_products(l, params, all_indices, symmetric);
  return result;
}

PhiParams choose(const DenseMatrix& a, int l, double ladder_scale, const PhiOptions& options) {
  if (options.ladder) return select_params(*options.ladder, l, ladder_scale, options.select);
  return select_params(a, l, options.select);
}

}  // namespace

const DenseMatrix& PhiResult::phi(int j) const {
  if (j < first_index || j > last_index())
    throw std::out_of_range("PhiResult: phi_" + std::to_string(j) + " was not computed");
  return values[static_cast<std::size_t>(j - first_index)];
}

DenseMatrix exp_taylor_ps(const DenseMatrix& a, int degree, ProductCounter* counter) {
  require_square(a, "exp_taylor_ps");
  if (!in_degree_set(degree))
    throw std::invalid_argument("exp_taylor_ps: degree " + std::to_string(degree) +
                                " not in {6, 9, 12, 16, 20, 25}");
  const std::size_t n = a.rows();
  int tau = 1;
  while (tau * tau < degree) ++tau;
  const int blocks = degree / tau;  // every degree in the set is a multiple of tau

  // powers[j] = A^j, j = 0..tau (tau - 1 products)
  std::vector<DenseMatrix> powers;
  powers.reserve(static_cast<std::size_t>(tau + 1));
  powers.push_back(DenseMatrix::identity(n));
  powers.push_back(a);
  for (int j = 2; j <= tau; ++j) powers.push_back(multiply(powers.back(), a, counter));

  // B_r = sum_{j<tau} c_{r tau + j} A^j; p(A) = sum_r B_r (A^tau)^r with the
  // top block B_blocks = c_degree I.
  auto block = [&](int r) {
    DenseMatrix b(n, n);
    for (int j = 0; j < tau; ++j) {
      const int idx = r * tau + j;
      if (idx > degree) break;
      b.add_scaled(inverse_factorial(idx), powers[static_cast<std::size_t>(j)]);
    }
    return b;
  };
  const DenseMatrix& top_power = powers[static_cast<std::size_t>(tau)];
  DenseMatrix acc = inverse_factorial(degree) * top_power;  // (c_d I) * A^tau, no product
  acc += block(blocks - 1);
  for (int r = blocks - 2; r >= 0; --r) {
    acc = multiply(acc, top_power, counter);
    acc += block(r);
  }
  return acc;
}

PhiResult phi_lyap(const DenseMatrix& a, const DenseMatrix& q, int l, const PhiOptions& options) {
  check_inputs(a, q, "phi_lyap");
  if (l < 1) throw std::invalid_argument("phi_lyap: l must be >= 1");
  return run(a, q, l, false, choose(a, l, 1.0, options), options);
}

PhiResult phi_multi(const DenseMatrix& a, const DenseMatrix& q, int l_max, const PhiOptions& options) {
  check_inputs(a, q, "phi_multi");
  if (l_max < 0) throw std::invalid_argument("phi_multi: l_max must be >= 0");
  return run(a, q, l_max, true, choose(a, l_max, 1.0, options), options);
}

PhiResult phi_scaled(const DenseMatrix& a, const DenseMatrix& q, int l, double t, const PhiOptions& options) {
  check_inputs(a, q, "phi_scaled");
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("phi_scaled: t must be positive");
  const DenseMatrix ta = t * a;
  return run(ta, q, l, true, choose(ta, l, t, options), options);
}

std::int64_t predicted_phi_products(int l, const PhiParams& params, bool all_indices, bool symmetric_q) {
  const std::int64_t per_apply = symmetric_q ? 1 : 2;
  const int m = params.m;
  const int s = params.s;
  if (l == 0) return paterson_stockmeyer_cost(params.total_degree) + s + 2;
  if (s == 0) return per_apply * m + (all_indices ? per_apply * (l - 1) : 0);
  return paterson_stockmeyer_cost(m + l) + per_apply * (m + l - 1) +
         static_cast<std::int64_t>(s - 1) * (2 * l + 1) + (all_indices ? 2 * l : 2);
}

}  // namespace philyap
