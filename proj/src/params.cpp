#include "philyap/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace philyap {

extern const char* const kThetaTableText;

namespace {

using Real = boost::multiprecision::cpp_bin_float_100;

constexpr int kSeriesTerms = 260;

int ceil_sqrt(int d) {
  int r = static_cast<int>(std::sqrt(static_cast<double>(d)));
  while (r * r < d) ++r;
  while (r > 1 && (r - 1) * (r - 1) >= d) --r;
  return r;
}

// Coefficients h_n, n = 0..kSeriesTerms, of log(e^{-x} T_d(x)).
std::vector<Real> backward_error_series(int d) {
  const int nt = kSeriesTerms;
  // e^{-x} T_d(x) - 1 = sum_{n>d} (-1)^{n+d} C(n-1, d) / n! x^n.
  std::vector<Real> g(nt + 1, Real(0));
  Real binom = 1;      // C(n-1, d), starting at n = d+1
  Real factorial = 1;  // n!
  for (int n = 1; n <= d; ++n) factorial *= n;
  for (int n = d + 1; n <= nt; ++n) {
    factorial *= n;
    if (n > d + 1) binom = binom * (n - 1) / (n - 1 - d);
    const Real sign = ((n + d) % 2 == 0) ? Real(1) : Real(-1);
    g[n] = sign * binom / factorial;
  }
  // log(1 + g) = sum_j (-1)^{j+1} g^j / j; g^j starts at x^{j(d+1)}.
  std::vector<Real> h(nt + 1, Real(0));
  std::vector<Real> power = g;
  for (int j = 1; j * (d + 1) <= nt; ++j) {
    const Real sign = (j % 2 == 1) ? Real(1) : Real(-1);
    for (int n = j * (d + 1); n <= nt; ++n) h[n] += sign * power[n] / j;
    std::vector<Real> next(nt + 1, Real(0));
    for (int a = j * (d + 1); a <= nt; ++a) {
      if (power[a] == 0) continue;
      for (int b = d + 1; a + b <= nt; ++b) next[a + b] += power[a] * g[b];
    }
    power.swap(next);
  }
  return h;
}

// (x y)^{1/k}, rooted before multiplying so huge norms do not overflow.
double rooted_pair(double x, double y, int k) {
  const double e = 1.0 / k;
  return std::pow(x, e) * std::pow(y, e);
}

}  // namespace

ThetaTable::ThetaTable(double tolerance, std::map<int, double> entries)
    : tolerance_(tolerance), entries_(std::move(entries)) {
  if (!(tolerance_ > 0.0)) throw std::invalid_argument("ThetaTable: tolerance must be positive");
  double prev = 0.0;
  for (const auto& [d, theta] : entries_) {
    if (!(theta > prev)) throw std::invalid_argument("ThetaTable: thresholds must increase with degree");
    prev = theta;
  }
}

ThetaTable ThetaTable::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  double tol = kDefaultTolerance;
  std::map<int, double> entries;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    if (first == "tolerance") {
      if (!(fields >> tol)) throw std::invalid_argument("theta table line " + std::to_string(lineno));
      continue;
    }
    double theta = 0.0;
    int degree = 0;
    try {
      degree = std::stoi(first);
    } catch (const std::exception&) {
      throw std::invalid_argument("theta table line " + std::to_string(lineno) + ": bad degree");
    }
    if (!(fields >> theta)) throw std::invalid_argument("theta table line " + std::to_string(lineno));
    entries[degree] = theta;
  }
  return ThetaTable(tol, std::move(entries));
}

const ThetaTable& ThetaTable::builtin() {
  static const ThetaTable table = parse(kThetaTableText);
  return table;
}

double ThetaTable::at(int degree) const {
  const auto it = entries_.find(degree);
  if (it == entries_.end()) throw std::out_of_range("no theta for degree " + std::to_string(degree));
  return it->second;
}

double derive_theta(int degree, double tol) {
  if (degree < 2) throw std::invalid_argument("derive_theta: degree must be >= 2");
  if (!(tol > 0.0)) throw std::invalid_argument("derive_theta: tolerance must be positive");
  const std::vector<Real> h = backward_error_series(degree);
  std::vector<Real> coeff;  // |h_n| for n = degree+1..; multiplies x^{n-1}
  for (int n = degree + 1; n <= kSeriesTerms; ++n) coeff.push_back(abs(h[n]));

  const Real target(tol);
  auto hbar = [&](const Real& x) {
    Real sum = 0;
    Real xp = pow(x, degree);
    for (const Real& c : coeff) {
      sum += c * xp;
      xp *= x;
    }
    return sum;
  };

  Real lo = 0;
  Real hi = 1;
  int expansions = 0;
  while (hbar(hi) <= target) {
    lo = hi;
    hi *= 2;
    if (++expansions > 20) throw NumericalError("derive_theta: bisection failed to bracket");
  }
  for (int it = 0; it < 200 && (hi - lo) > hi * Real(1e-10); ++it) {
    const Real mid = (lo + hi) / 2;
    if (hbar(mid) <= target)
      lo = mid;
    else
      hi = mid;
  }
  if ((hi - lo) > hi * Real(1e-10)) throw NumericalError("derive_theta: bisection did not converge");
  return static_cast<double>(lo);
}

double d_bound(PowerNormLadder& ladder, int k) {
  if (k < 1) throw std::invalid_argument("d_bound: k must be >= 1");
  double best = 0.0;
  for (int j = 0; j <= k; ++j) best = std::max(best, rooted_pair(ladder.norm(j), ladder.norm(k - j), k));
  return 2.0 * best;
}

double d_bound(const DenseMatrix& a, int k, const NormOptions& options) {
  PowerNormLadder ladder(a, options);
  return d_bound(ladder, k);
}

namespace {

// The quantity whose maximum over p, p+1 defines alpha_p.
double rooted_d(PowerNormLadder& ladder, int k, RootConvention convention) {
  if (k == 1) return 2.0 * ladder.norm(1);
  if (convention == RootConvention::kBinomialBound) return d_bound(ladder, k);
  double raw = 0.0;
  for (int j = 0; j <= k; ++j) raw = std::max(raw, ladder.norm(j) * ladder.norm(k - j));
  return std::pow(2.0 * raw, 1.0 / k);
}

}  // namespace

double alpha_p(PowerNormLadder& ladder, int p, RootConvention convention) {
  if (p < 1) throw std::invalid_argument("alpha_p: p must be >= 1");
  return std::max(rooted_d(ladder, p, convention), rooted_d(ladder, p + 1, convention));
}

double alpha_p(const DenseMatrix& a, int p, RootConvention convention, const NormOptions& options) {
  PowerNormLadder ladder(a, options);
  return alpha_p(ladder, p, convention);
}

PhiParams select_params(PowerNormLadder& ladder, int l, double scale, const SelectOptions& options) {
  if (l < 0) throw std::invalid_argument("select_params: l must be >= 0");
  if (l >= kDegreeSet.back()) throw std::invalid_argument("degree set exhausted");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw std::invalid_argument("select_params: bad scale");
  const ThetaTable& table = options.table ? *options.table : ThetaTable::builtin();

  std::array<double, kMaxPower + 1> alpha{};
  int computed = 0;
  auto alpha_star = [&](int degree) {
    double best = std::numeric_limits<double>::infinity();
    for (int p = 1; p <= kMaxPower && p * (p - 1) <= degree; ++p) {
      if (p > computed) {
        alpha[p] = scale * alpha_p(ladder, p, options.convention);
        computed = p;
      }
      best = std::min(best, alpha[p]);
    }
    return best;
  };

  PhiParams params;
  for (int degree : kDegreeSet) {
    if (degree - l < 1) continue;
    const double a_star = alpha_star(degree);
    const double theta = table.at(degree);
    params.alpha_star = a_star;
    params.total_degree = degree;
    params.m = degree - l;
    if (a_star <= theta) {
      if (options.forward_guard && degree != kDegreeSet.back() &&
          phi_truncation_bound(a_star, l, params.m) > table.tolerance())
        continue;
      params.s = 0;
      params.predicted_products = phi_cost(l, params.m, 0);
      return params;
    }
  }
  // Fell through at the largest degree.
  const double theta = table.at(params.total_degree);
  if (!std::isfinite(params.alpha_star)) throw NumericalError("norm overflow");
  int s = std::max(0, static_cast<int>(std::ceil(std::log2(params.alpha_star / theta))));
  while (std::ldexp(params.alpha_star, -s) > theta) ++s;
  params.s = s;
  params.predicted_products = phi_cost(l, params.m, s);
  return params;
}

PhiParams select_params(const DenseMatrix& a, int l, const SelectOptions& options) {
  require_square(a, "select_params");
  PowerNormLadder ladder(a, options.norms);
  return select_params(ladder, l, 1.0, options);
}

double phi_truncation_bound(double alpha, int l, int m) {
  if (alpha <= 0.0) return 0.0;
  // term_k = alpha^k l!/(k+l)!, k = m+1, m+2, ...
  double term = 1.0;
  for (int k = 1; k <= m + 1; ++k) term *= alpha / (k + l);
  double sum = 0.0;
  for (int k = m + 1; k < m + 400; ++k) {
    sum += term;
    term *= alpha / (k + 1 + l);
    if (term <= sum * 1e-17) break;
  }
  return sum;
}

int paterson_stockmeyer_cost(int degree) {
  if (degree < 1) throw std::invalid_argument("paterson_stockmeyer_cost: degree must be >= 1");
  const int tau = ceil_sqrt(degree);
  return tau + degree / tau - 2;
}

std::int64_t phi_cost(int l, int m, int s) {
  if (s == 0) return m;
  return paterson_stockmeyer_cost(m + l) + m + l + 1 + static_cast<std::int64_t>(s - 1) * (2 * l + 1);
}

}  // namespace philyap
