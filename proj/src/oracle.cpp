#include "philyap/oracle.hpp"

#include <cblas.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/numeric/odeint.hpp>

namespace philyap::oracle {
namespace {

using Real = boost::multiprecision::cpp_bin_float_50;

constexpr int kTaylorTerms = 60;
constexpr double kScaledNorm = 0.25;
constexpr double kOdeAbsTol = 1e-14;
constexpr double kOdeRelTol = 1e-13;
constexpr long kOdeMaxSteps = 5'000'000;

void guard(std::size_t n) {
  if (n > kMaxOracleSize) throw std::length_error("oracle scale exceeded");
}

// Row-major square matrix product C = A B via BLAS.
void dgemm(std::size_t n, const double* a, const double* b, double* c) {
  const auto ni = static_cast<blasint>(n);
  cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans, ni, ni, ni, 1.0, a, ni, b, ni, 0.0, c, ni);
}

double one_norm_raw(std::size_t n, const std::vector<double>& m) {
  std::vector<double> col(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) col[j] += std::abs(m[i * n + j]);
  return *std::max_element(col.begin(), col.end());
}

// e^W for a dense row-major W: plain scaling to 1-norm < 1/4, the 60-term
// Taylor polynomial summed in blocks of 8 powers, then squaring.
std::vector<double> dense_expm(std::size_t n, std::vector<double> w) {
  const double norm = one_norm_raw(n, w);
  if (!std::isfinite(norm)) throw NumericalError("oracle: non-finite input");
  int s = 0;
  while (std::ldexp(norm, -s) >= kScaledNorm) ++s;
  for (double& x : w) x = std::ldexp(x, -s);

  constexpr int kBlock = 8;
  std::vector<double> coeff(kTaylorTerms + 1);
  coeff[0] = 1.0;
  for (int k = 1; k <= kTaylorTerms; ++k) coeff[static_cast<std::size_t>(k)] = coeff[static_cast<std::size_t>(k - 1)] / k;

  // pow[j] = W^j, j = 0..kBlock
  std::vector<std::vector<double>> pow(kBlock + 1, std::vector<double>(n * n, 0.0));
  for (std::size_t i = 0; i < n; ++i) pow[0][i * n + i] = 1.0;
  pow[1] = w;
  for (int j = 2; j <= kBlock; ++j) dgemm(n, pow[static_cast<std::size_t>(j - 1)].data(), w.data(), pow[static_cast<std::size_t>(j)].data());

  auto block = [&](int r, std::vector<double>& out) {
    std::fill(out.begin(), out.end(), 0.0);
    for (int j = 0; j < kBlock; ++j) {
      const int k = r * kBlock + j;
      if (k > kTaylorTerms) break;
      const double c = coeff[static_cast<std::size_t>(k)];
      const auto& pj = pow[static_cast<std::size_t>(j)];
      for (std::size_t i = 0; i < n * n; ++i) out[i] += c * pj[i];
    }
  };
  const int top = kTaylorTerms / kBlock;
  std::vector<double> p(n * n), tmp(n * n), b(n * n);
  block(top, p);
  for (int r = top - 1; r >= 0; --r) {
    dgemm(n, p.data(), pow[kBlock].data(), tmp.data());
    block(r, b);
    for (std::size_t i = 0; i < n * n; ++i) p[i] = tmp[i] + b[i];
  }
  for (int i = 0; i < s; ++i) {
    dgemm(n, p.data(), p.data(), tmp.data());
    p.swap(tmp);
  }
  for (double x : p)
    if (!std::isfinite(x)) throw NumericalError("oracle: overflow in squaring");
  return p;
}

Real phi_mp(int l, const Real& z) {
  if (abs(z) <= Real(0.5)) {
    Real sum = 0;
    Real term = 1;
    for (int k = 1; k <= l; ++k) term /= k;  // 1/l!
    for (int k = 0; k < 400; ++k) {
      sum += term;
      term = term * z / (k + l + 1);
      if (abs(term) < abs(sum) * Real(1e-55)) break;
    }
    return sum;
  }
  Real phi = exp(z);
  Real inv_fact = 1;  // 1/(j-1)!
  for (int j = 1; j <= l; ++j) {
    if (j > 1) inv_fact /= (j - 1);
    phi = (phi - inv_fact) / z;
  }
  return phi;
}

}  // namespace

std::vector<double> vec(const DenseMatrix& x) {
  const std::size_t n = x.rows();
  std::vector<double> v(x.size());
  for (std::size_t j = 0; j < x.cols(); ++j)
    for (std::size_t i = 0; i < n; ++i) v[i + n * j] = x(i, j);
  return v;
}

DenseMatrix unvec(std::span<const double> v, std::size_t n) {
  if (v.size() != n * n) throw ShapeError("unvec: length is not n^2");
  DenseMatrix x(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) x(i, j) = v[i + n * j];
  return x;
}

DenseMatrix kron_sum(const DenseMatrix& a) {
  require_square(a, "kron_sum");
  const std::size_t n = a.rows();
  guard(n);
  const std::size_t n2 = n * n;
  DenseMatrix l(n2, n2);
  // Row (i + n j), column (k + n p): A(j, p) [i == k] + A(i, k) [j == p].
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t i = 0; i < n; ++i) l(i + n * j, i + n * p) += a(j, p);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) l(i + n * j, k + n * j) += a(i, k);
  return l;
}

VectorizedSystem vectorize(const DenseMatrix& a, const DenseMatrix& q) {
  require_same_shape(a, q, "vectorize");
  return {kron_sum(a), vec(q)};
}

std::vector<DenseMatrix> phi_reference_all(const DenseMatrix& a, const DenseMatrix& q, int l_max) {
  if (l_max < 0) throw std::invalid_argument("phi_reference: l must be >= 0");
  const VectorizedSystem sys = vectorize(a, q);
  const std::size_t n = a.rows();
  const std::size_t n2 = n * n;
  const std::size_t p = static_cast<std::size_t>(std::max(l_max, 1));
  const std::size_t m = n2 + p;

  double bnorm = 0.0;
  for (double x : sys.b) bnorm += std::abs(x);
  std::vector<DenseMatrix> out;
  if (bnorm == 0.0) {
    out.assign(static_cast<std::size_t>(l_max + 1), DenseMatrix(n, n));
    return out;
  }
  // Power-of-two coupling weight keeps the b column at unit size exactly.
  const int eta_exp = -std::ilogb(bnorm);
  std::vector<double> w(m * m, 0.0);
  const auto ld = sys.l.data();
  for (std::size_t i = 0; i < n2; ++i) {
    std::copy_n(ld.begin() + static_cast<std::ptrdiff_t>(i * n2), n2, w.begin() + static_cast<std::ptrdiff_t>(i * m));
    w[i * m + n2] = std::ldexp(sys.b[i], eta_exp);
  }
  for (std::size_t k = 0; k + 1 < p; ++k) w[(n2 + k) * m + n2 + k + 1] = 1.0;

  const std::vector<double> e = dense_expm(m, std::move(w));

  out.reserve(static_cast<std::size_t>(l_max + 1));
  {
    // l = 0: top-left block of e^W times b.
    std::vector<double> y(n2, 0.0);
    cblas_dgemv(CblasRowMajor, CblasNoTrans, static_cast<blasint>(n2), static_cast<blasint>(n2), 1.0, e.data(),
                static_cast<blasint>(m), sys.b.data(), 1, 0.0, y.data(), 1);
    out.push_back(unvec(y, n));
  }
  for (int k = 1; k <= l_max; ++k) {
    std::vector<double> y(n2);
    for (std::size_t i = 0; i < n2; ++i) y[i] = std::ldexp(e[i * m + n2 + static_cast<std::size_t>(k - 1)], -eta_exp);
    out.push_back(unvec(y, n));
  }
  return out;
}

DenseMatrix phi_reference(const DenseMatrix& a, const DenseMatrix& q, int l) {
  std::vector<DenseMatrix> all = phi_reference_all(a, q, l);
  return std::move(all.back());
}

DenseMatrix dle_reference(const DenseMatrix& a, const DenseMatrix& q, int l, double t) {
  namespace ode = boost::numeric::odeint;
  if (l < 1) throw std::invalid_argument("dle_reference: l must be >= 1");
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("dle_reference: t must be positive");
  VectorizedSystem sys = vectorize(a, q);
  const std::size_t n = a.rows();
  const auto n2 = static_cast<blasint>(n * n);
  // Integrate y = x / c with c = max|b| t^l / l!, so the tolerances act on an
  // O(1) state whatever the size of the true solution:
  //   y' = L y + l tau^{l-1} / t^l * b / max|b|.
  double bmax = 0.0;
  for (double v : sys.b) bmax = std::max(bmax, std::abs(v));
  if (bmax == 0.0) return DenseMatrix(n, n);
  for (double& v : sys.b) v /= bmax;
  double c = bmax;
  for (int k = 1; k <= l; ++k) c *= t / k;

  using State = std::vector<double>;
  const double* lmat = sys.l.data().data();
  auto rhs = [&](const State& x, State& dxdt, double tau) {
    cblas_dgemv(CblasRowMajor, CblasNoTrans, n2, n2, 1.0, lmat, n2, x.data(), 1, 0.0, dxdt.data(), 1);
    const double f = l * std::pow(tau / t, l - 1) / t;
    cblas_daxpy(n2, f, sys.b.data(), 1, dxdt.data(), 1);
  };

  auto stepper = ode::make_controlled(kOdeAbsTol, kOdeRelTol, ode::runge_kutta_dopri5<State>());
  State x(static_cast<std::size_t>(n2), 0.0);
  double tau = 0.0;
  const double lnorm = one_norm(sys.l);
  double dt = std::min(t, 1e-3 / std::max(1.0, lnorm));
  const double dt_min = t * 1e-15;
  long steps = 0;
  while (t - tau > t * 1e-15) {
    if (tau + dt > t) dt = t - tau;
    if (stepper.try_step(rhs, x, tau, dt) == ode::fail) {
      if (dt < dt_min) throw NumericalError("stiff beyond oracle");
      continue;
    }
    if (++steps > kOdeMaxSteps) throw NumericalError("stiff beyond oracle");
  }
  for (double& v : x) {
    v *= c;
    if (!std::isfinite(v)) throw NumericalError("stiff beyond oracle");
  }
  return unvec(x, n);
}

double scalar_phi(int l, double z) {
  if (l < 0) throw std::invalid_argument("scalar_phi: l must be >= 0");
  return static_cast<double>(phi_mp(l, Real(z)));
}

std::vector<DenseMatrix> laplacian_phi_reference(std::size_t n, double c, const DenseMatrix& q, int l_max) {
  if (n < 1 || q.rows() != n || q.cols() != n) throw ShapeError("laplacian_phi_reference: Q must be n x n");
  if (l_max < 1) throw std::invalid_argument("laplacian_phi_reference: l_max must be >= 1");
  const long double pi = std::numbers::pi_v<long double>;
  const long double h = pi / static_cast<long double>(n + 1);
  const long double scale = std::sqrt(2.0L / static_cast<long double>(n + 1));
  std::vector<double> v(n * n);
  std::vector<Real> lambda(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      v[i * n + k] = static_cast<double>(scale * std::sin(static_cast<long double>((i + 1) * (k + 1)) * h));
  for (std::size_t k = 0; k < n; ++k) {
    const Real theta = boost::math::constants::pi<Real>() * Real(k + 1) / Real(n + 1);
    lambda[k] = Real(c) * (Real(-2) + 2 * cos(theta));
  }
  const auto ni = static_cast<blasint>(n);
  // qhat = V^T Q V
  std::vector<double> tmp(n * n), qhat(n * n);
  cblas_dgemm(CblasRowMajor, CblasTrans, CblasNoTrans, ni, ni, ni, 1.0, v.data(), ni, q.data().data(), ni, 0.0,
              tmp.data(), ni);
  cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans, ni, ni, ni, 1.0, tmp.data(), ni, v.data(), ni, 0.0,
              qhat.data(), ni);

  std::vector<DenseMatrix> out;
  out.reserve(static_cast<std::size_t>(l_max));
  std::vector<double> z(n * n), res(n * n);
  for (int l = 1; l <= l_max; ++l) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        z[i * n + j] = static_cast<double>(phi_mp(l, lambda[i] + lambda[j]) * Real(qhat[i * n + j]));
    cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans, ni, ni, ni, 1.0, v.data(), ni, z.data(), ni, 0.0,
                tmp.data(), ni);
    cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasTrans, ni, ni, ni, 1.0, tmp.data(), ni, v.data(), ni, 0.0,
                res.data(), ni);
    out.emplace_back(n, n, res);
  }
  return out;
}

}  // namespace philyap::oracle
