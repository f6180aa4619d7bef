#include "philyap/integrators.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "philyap/gallery.hpp"
#include "philyap/lyapunov.hpp"
#include "philyap/phi.hpp"

namespace philyap {
namespace {

void require_step(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("step size must be positive");
}

// Shared by the free step functions and the scheme objects. `ladder`, when
// given, holds power norms of the unscaled A.
DenseMatrix exp_euler_impl(const MDEProblem& p, double t, const DenseMatrix& x, double h,
                           PowerNormLadder* ladder) {
  require_step(h);
  require_same_shape(p.a, x, "exp_euler_step");
  const DenseMatrix n = p.nonlinearity(t, x);
  require_same_shape(x, n, "exp_euler_step: nonlinearity");
  PhiOptions opts;
  opts.want_exponential = true;
  opts.ladder = ladder;
  const PhiResult r = phi_scaled(p.a, n, 1, h, opts);
  DenseMatrix out = congruence(*r.exponential, x);
  out.add_scaled(h, r.phi(1));
  return out;
}

DenseMatrix exprb2_impl(const DREProblem& p, double t, const DenseMatrix& x, double h) {
  require_step(h);
  const DenseMatrix f = dre_rhs(p, t, x);
  if (f.is_zero()) return x;
  const DenseMatrix ha = h * frozen_jacobian(p, x);
  const PhiResult r = phi_lyap(ha, f, 1);
  DenseMatrix out = x;
  out.add_scaled(h, r.phi(1));
  return out;
}

DenseMatrix exprb3_impl(const DREProblem& p, double t, const DenseMatrix& x, double h) {
  require_step(h);
  const DenseMatrix f = dre_rhs(p, t, x);
  if (f.is_zero()) return x;
  const DenseMatrix an = frozen_jacobian(p, x);
  const DenseMatrix ha = h * an;
  PowerNormLadder ladder(ha);
  PhiOptions opts;
  opts.ladder = &ladder;
  DenseMatrix u = x;
  u.add_scaled(h, phi_lyap(ha, f, 1, opts).phi(1));

  const LyapunovOperator jac(an);
  DenseMatrix d = dre_rhs(p, t + h, u) - f - jac.apply(u - x);
  if (d.is_zero()) return u;
  u.add_scaled(2.0 * h, phi_lyap(ha, d, 3, opts).phi(3));
  return u;
}

class ExpEulerScheme final : public ExponentialScheme {
 public:
  explicit ExpEulerScheme(MDEProblem p) : p_(std::move(p)), ladder_(p_.a) {}
  std::string name() const override { return "exp_euler"; }
  int order() const override { return 1; }
  DenseMatrix step(double t, const DenseMatrix& x, double h) override {
    ++phi_calls_;
    return exp_euler_impl(p_, t, x, h, &ladder_);
  }

 private:
  MDEProblem p_;
  PowerNormLadder ladder_;
};

class Exprb2Scheme final : public ExponentialScheme {
 public:
  explicit Exprb2Scheme(DREProblem p) : p_(std::move(p)) {}
  std::string name() const override { return "exprb2"; }
  int order() const override { return 2; }
  DenseMatrix step(double t, const DenseMatrix& x, double h) override {
    ++phi_calls_;
    return exprb2_impl(p_, t, x, h);
  }

 private:
  DREProblem p_;
};

class Exprb3Scheme final : public ExponentialScheme {
 public:
  explicit Exprb3Scheme(DREProblem p) : p_(std::move(p)) {}
  std::string name() const override { return "exprb3"; }
  int order() const override { return 3; }
  DenseMatrix step(double t, const DenseMatrix& x, double h) override {
    phi_calls_ += 2;
    return exprb3_impl(p_, t, x, h);
  }

 private:
  DREProblem p_;
};

}  // namespace

void validate(const DREProblem& p) {
  require_square(p.a, "DREProblem A");
  require_same_shape(p.a, p.x0, "DREProblem X0");
  if (p.b.rows() != p.a.rows()) throw ShapeError("DREProblem: B must have N rows");
  if (p.c.rows() != p.a.rows()) throw ShapeError("DREProblem: C must have N rows");
}

DenseMatrix dre_rhs(const DREProblem& p, double /*t*/, const DenseMatrix& x) {
  require_same_shape(p.a, x, "dre_rhs");
  if (p.b.rows() != x.rows() || p.c.rows() != x.rows()) throw ShapeError("dre_rhs: B, C must have N rows");
  DenseMatrix out = LyapunovOperator(p.a).apply(x);
  out += multiply_transposed(p.c, p.c);
  const DenseMatrix g = multiply(x, p.b);
  out -= multiply_transposed(g, g);
  return out;
}

MDEProblem as_mde(const DREProblem& p) {
  validate(p);
  const DenseMatrix cct = multiply_transposed(p.c, p.c);
  const DenseMatrix b = p.b;
  Nonlinearity n = [cct, b](double, const DenseMatrix& x) {
    const DenseMatrix g = multiply(x, b);
    return cct - multiply_transposed(g, g);
  };
  return MDEProblem{p.a, std::move(n), p.x0, p.t0};
}

DenseMatrix frozen_jacobian(const DREProblem& p, const DenseMatrix& x) {
  require_same_shape(p.a, x, "frozen_jacobian");
  return p.a - multiply_transposed(multiply(x, p.b), p.b);
}

DenseMatrix exp_euler_step(const MDEProblem& p, double t, const DenseMatrix& x, double h) {
  return exp_euler_impl(p, t, x, h, nullptr);
}

DenseMatrix exprb2_step(const DREProblem& p, double t, const DenseMatrix& x, double h) {
  return exprb2_impl(p, t, x, h);
}

DenseMatrix exprb3_step(const DREProblem& p, double t, const DenseMatrix& x, double h) {
  return exprb3_impl(p, t, x, h);
}

SchemeKind parse_scheme(std::string_view name) {
  if (name == "exp_euler") return SchemeKind::kExpEuler;
  if (name == "exprb2") return SchemeKind::kExprb2;
  if (name == "exprb3") return SchemeKind::kExprb3;
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

std::string scheme_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::kExpEuler: return "exp_euler";
    case SchemeKind::kExprb2: return "exprb2";
    case SchemeKind::kExprb3: return "exprb3";
  }
  return "?";
}

int scheme_order(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::kExpEuler: return 1;
    case SchemeKind::kExprb2: return 2;
    case SchemeKind::kExprb3: return 3;
  }
  return 0;
}

std::unique_ptr<ExponentialScheme> make_exp_euler(MDEProblem p) {
  require_square(p.a, "MDEProblem A");
  require_same_shape(p.a, p.x0, "MDEProblem X0");
  if (!p.nonlinearity) throw std::invalid_argument("MDEProblem: missing nonlinearity");
  return std::make_unique<ExpEulerScheme>(std::move(p));
}

std::unique_ptr<ExponentialScheme> make_scheme(SchemeKind kind, const DREProblem& p) {
  validate(p);
  switch (kind) {
    case SchemeKind::kExpEuler: return make_exp_euler(as_mde(p));
    case SchemeKind::kExprb2: return std::make_unique<Exprb2Scheme>(p);
    case SchemeKind::kExprb3: return std::make_unique<Exprb3Scheme>(p);
  }
  throw std::invalid_argument("make_scheme: bad kind");
}

IntegrationResult integrate_steps(ExponentialScheme& scheme, const DenseMatrix& x0, double t0, double t_end,
                                  std::int64_t n, const IntegrateOptions& options) {
  if (!(t_end > t0)) throw std::invalid_argument("integrate: t_end must exceed t0");
  if (n < 1) throw std::invalid_argument("integrate: zero steps requested");
  if (n > kMaxSteps) throw std::invalid_argument("integrate: more than 2^20 steps");
  const double h = (t_end - t0) / static_cast<double>(n);
  const std::int64_t calls_before = scheme.phi_calls();

  IntegrationResult r;
  r.times.push_back(t0);
  r.states.push_back(x0);
  DenseMatrix x = x0;
  for (std::int64_t k = 1; k <= n; ++k) {
    const double t = t0 + static_cast<double>(k - 1) * h;
    try {
      x = scheme.step(t, x, h);
    } catch (const NumericalError& e) {
      throw NumericalError("blow-up at step " + std::to_string(k) + ": " + e.what());
    }
    for (double v : x.data())
      if (!std::isfinite(v)) throw NumericalError("blow-up at step " + std::to_string(k));
    const double tk = (k == n) ? t_end : t0 + static_cast<double>(k) * h;
    if (options.record_all || k == n) {
      r.times.push_back(tk);
      r.states.push_back(x);
    }
  }
  r.steps_taken = n;
  r.phi_calls = scheme.phi_calls() - calls_before;
  return r;
}

IntegrationResult integrate(ExponentialScheme& scheme, const DenseMatrix& x0, double t0, double h, double t_end,
                            const IntegrateOptions& options) {
  require_step(h);
  if (!(t_end > t0)) throw std::invalid_argument("integrate: t_end must exceed t0");
  const double span = t_end - t0;
  const double steps = span / h;
  if (steps > static_cast<double>(kMaxSteps) + 0.5) throw std::invalid_argument("integrate: more than 2^20 steps");
  const auto n = static_cast<std::int64_t>(std::llround(steps));
  if (n < 1) throw std::invalid_argument("integrate: zero steps requested");
  if (std::abs(static_cast<double>(n) * h - span) > 1e-9 * span)
    throw std::invalid_argument("integrate: h does not divide the interval");
  return integrate_steps(scheme, x0, t0, t_end, n, options);
}

IntegrationResult integrate(const DREProblem& p, SchemeKind kind, double h, double t_end,
                            const IntegrateOptions& options) {
  auto scheme = make_scheme(kind, p);
  return integrate(*scheme, p.x0, p.t0, h, t_end, options);
}

IntegrationResult integrate(const MDEProblem& p, double h, double t_end, const IntegrateOptions& options) {
  auto scheme = make_exp_euler(p);
  return integrate(*scheme, p.x0, p.t0, h, t_end, options);
}

double convergence_slope(const std::vector<double>& h, const std::vector<double>& errors) {
  if (h.size() != errors.size() || h.size() < 2) throw std::invalid_argument("convergence_slope: need >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto n = static_cast<double>(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(h[i] > 0.0) || !(errors[i] > 0.0)) throw std::invalid_argument("convergence_slope: nonpositive value");
    const double x = std::log(h[i]);
    const double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

DREProblem advection_diffusion_dre(std::size_t n0) {
  DREProblem p{gallery::fdm_advection_diffusion(n0),
               gallery::load_vector_indicator(n0, gallery::Axis::kX, 0.1, 0.3),
               gallery::load_vector_indicator(n0, gallery::Axis::kX, 0.7, 0.9),
               DenseMatrix::identity(n0 * n0), 0.0};
  return p;
}

DenseMatrix dre_self_reference(const DREProblem& p, double t_end, std::int64_t steps) {
  auto scheme = make_scheme(SchemeKind::kExprb3, p);
  IntegrateOptions opts;
  opts.record_all = false;
  return integrate_steps(*scheme, p.x0, p.t0, t_end, steps, opts).final_state();
}

ConvergenceStudy convergence_study(const DREProblem& p, SchemeKind kind, double t_end,
                                   const std::vector<std::int64_t>& steps, const DenseMatrix& reference) {
  ConvergenceStudy study;
  IntegrateOptions opts;
  opts.record_all = false;
  for (std::int64_t n : steps) {
    auto scheme = make_scheme(kind, p);
    const auto start = std::chrono::steady_clock::now();
    const IntegrationResult r = integrate_steps(*scheme, p.x0, p.t0, t_end, n, opts);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    study.steps.push_back(n);
    study.h.push_back((t_end - p.t0) / static_cast<double>(n));
    study.errors.push_back(relative_error(reference, r.final_state()));
    study.seconds.push_back(elapsed.count());
  }
  study.slope = convergence_slope(study.h, study.errors);
  return study;
}

}  // namespace philyap
