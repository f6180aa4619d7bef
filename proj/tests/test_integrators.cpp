#include <doctest.h>

#include <cmath>
#include <vector>

#include "philyap/gallery.hpp"
#include "philyap/integrators.hpp"
#include "philyap/lyapunov.hpp"
#include "philyap/oracle.hpp"
#include "philyap/phi.hpp"

using namespace philyap;
using gallery::random_symmetric;
using gallery::random_uniform;

namespace {

// A = -I, B = C = I: every diagonal entry follows x' = 1 - 2x - x^2.
DREProblem scalar_riccati(double x0, double x1) {
  const std::vector<double> d{x0, x1};
  return {-1.0 * DenseMatrix::identity(2), DenseMatrix::identity(2), DenseMatrix::identity(2),
          DenseMatrix::diagonal(d), 0.0};
}

double riccati_exact(double x0, double t) {
  const double r1 = std::sqrt(2.0) - 1, r2 = -std::sqrt(2.0) - 1;
  const double k = (x0 - r1) / (x0 - r2) * std::exp(-(r1 - r2) * t);
  return (r1 - r2 * k) / (1 - k);
}

DREProblem small_dre(std::uint64_t seed) {
  return {0.5 * random_uniform(4, 4, seed) - 2.0 * DenseMatrix::identity(4), random_uniform(4, 1, seed + 1),
          random_uniform(4, 2, seed + 2), random_symmetric(4, seed + 3), 0.0};
}

}  // namespace

TEST_CASE("dre_rhs") {
  DREProblem p = small_dre(1);
  const DenseMatrix cct = multiply_transposed(p.c, p.c);
  CHECK(relative_error(cct, dre_rhs(p, 0.0, DenseMatrix::zeros(4, 4))) <= 1e-15);
  p.b = DenseMatrix::zeros(4, 1);
  const DenseMatrix x = random_symmetric(4, 9);
  const DenseMatrix lin = multiply(p.a, x) + multiply_transposed(x, p.a) + cct;
  CHECK(relative_error(lin, dre_rhs(p, 0.0, x)) <= 1e-15);
  CHECK(dre_rhs(small_dre(2), 0.0, x).is_exactly_symmetric());

  const DREProblem r = scalar_riccati(0, 0);
  const DenseMatrix star = (std::sqrt(2.0) - 1) * DenseMatrix::identity(2);
  CHECK(max_abs(dre_rhs(r, 0.0, star)) <= 1e-15);
  CHECK_THROWS_AS(dre_rhs(r, 0.0, DenseMatrix::identity(3)), ShapeError);
}

TEST_CASE("frozen Jacobian is the derivative of the right-hand side") {
  const DREProblem p = small_dre(3);
  const DenseMatrix x = random_symmetric(4, 4), v = random_symmetric(4, 5);
  const DenseMatrix an = frozen_jacobian(p, x);
  const DenseMatrix lv = multiply(an, v) + multiply_transposed(v, an);
  const double eps = 1e-6;
  const DenseMatrix fd = (1 / (2 * eps)) * (dre_rhs(p, 0, x + eps * v) - dre_rhs(p, 0, x - eps * v));
  CHECK(relative_error(lv, fd) <= 1e-8);
}

TEST_CASE("fixed point at the equilibrium") {
  const double r = std::sqrt(2.0) - 1;
  const DREProblem p = scalar_riccati(r, r);
  for (SchemeKind k : {SchemeKind::kExpEuler, SchemeKind::kExprb2, SchemeKind::kExprb3}) {
    auto s = make_scheme(k, p);
    const DenseMatrix next = s->step(0.0, p.x0, 0.1);
    CHECK(relative_error(p.x0, next) <= 1e-15);
  }
}

TEST_CASE("exp_euler_step") {
  const DenseMatrix q = random_symmetric(4, 6);
  const DenseMatrix x = random_symmetric(4, 7);
  MDEProblem zero_a{DenseMatrix::zeros(4, 4), [&](double, const DenseMatrix&) { return q; }, x, 0.0};
  CHECK(relative_error(x + 0.3 * q, exp_euler_step(zero_a, 0.0, x, 0.3)) <= 1e-15);

  // Constant source from X0 = 0 is reproduced exactly.
  const DenseMatrix a = random_uniform(4, 4, 8) - DenseMatrix::identity(4);
  MDEProblem dle{a, [&](double, const DenseMatrix&) { return q; }, DenseMatrix::zeros(4, 4), 0.0};
  const double h = 0.37;
  CHECK(relative_error(oracle::dle_reference(a, q, 1, h), exp_euler_step(dle, 0.0, dle.x0, h)) <= 1e-10);

  // Consistency: (X+ - X)/h -> L[X] + N.
  MDEProblem lin{a, [&](double, const DenseMatrix&) { return q; }, x, 0.0};
  const double tiny = 1e-6;
  const DenseMatrix slope = (1 / tiny) * (exp_euler_step(lin, 0.0, x, tiny) - x);
  CHECK(relative_error(LyapunovOperator(a).apply(x) + q, slope) <= 1e-4);
  CHECK_THROWS_AS(exp_euler_step(lin, 0.0, x, 0.0), std::invalid_argument);
}

TEST_CASE("Rosenbrock schemes on a linear problem are exact") {
  DREProblem p = small_dre(10);
  p.b = DenseMatrix::zeros(4, 1);
  const double h = 0.25;
  const DenseMatrix cct = multiply_transposed(p.c, p.c);
  const DenseMatrix exact =
      oracle::phi_reference(h * p.a, p.x0, 0) + h * oracle::phi_reference(h * p.a, cct, 1);
  const DenseMatrix two = exprb2_step(p, 0.0, p.x0, h);
  CHECK(relative_error(exact, two) <= 1e-10);
  CHECK(relative_error(two, exprb3_step(p, 0.0, p.x0, h)) <= 1e-14);
  MDEProblem m = as_mde(p);
  CHECK(relative_error(exact, exp_euler_step(m, 0.0, p.x0, h)) <= 1e-10);
}

TEST_CASE("symmetry is preserved without re-symmetrization") {
  const DREProblem p = small_dre(20);
  for (SchemeKind k : {SchemeKind::kExpEuler, SchemeKind::kExprb2, SchemeKind::kExprb3}) {
    auto s = make_scheme(k, p);
    const IntegrationResult r = integrate_steps(*s, p.x0, 0.0, 0.5, 10);
    for (const DenseMatrix& x : r.states) CHECK(max_abs(x - x.transposed()) <= 10 * 0x1p-52 * max_abs(x));
  }
}

TEST_CASE("orders on the scalar Riccati problem") {
  const DREProblem p = scalar_riccati(0.0, 2.0);
  const double t_end = 0.5;
  const double e0 = riccati_exact(0.0, t_end), e1 = riccati_exact(2.0, t_end);
  const std::vector<double> want{e0, e1};
  const DenseMatrix exact = DenseMatrix::diagonal(want);
  struct Band {
    SchemeKind kind;
    double lo, hi;
  };
  for (Band b : {Band{SchemeKind::kExpEuler, 0.8, 1.2}, Band{SchemeKind::kExprb2, 1.7, 2.3},
                 Band{SchemeKind::kExprb3, 2.6, 3.4}}) {
    const ConvergenceStudy c = convergence_study(p, b.kind, t_end, {8, 16, 32, 64, 128, 256}, exact);
    CAPTURE(scheme_name(b.kind));
    CHECK(c.slope >= b.lo);
    CHECK(c.slope <= b.hi);
    for (std::size_t i = 1; i < c.errors.size(); ++i) CHECK(c.errors[i] < c.errors[i - 1]);
  }
}

TEST_CASE("integrate") {
  const DREProblem p = small_dre(30);
  auto s = make_scheme(SchemeKind::kExprb3, p);
  CHECK_THROWS_WITH_AS(integrate_steps(*s, p.x0, 0.0, 1.0, 0), "integrate: zero steps requested",
                       std::invalid_argument);
  CHECK_THROWS_AS(integrate(*s, p.x0, 0.0, 0.3, 1.0), std::invalid_argument);

  const IntegrationResult r = integrate(*s, p.x0, 0.0, 0.125, 1.0);
  CHECK(r.steps_taken == 8);
  CHECK(r.phi_calls == 16);
  CHECK(r.states.size() == 9);
  CHECK(r.states.front() == p.x0);
  for (std::size_t i = 1; i < r.times.size(); ++i) CHECK(r.times[i] > r.times[i - 1]);
  CHECK(r.times.back() == 1.0);

  IntegrateOptions last_only;
  last_only.record_all = false;
  auto s2 = make_scheme(SchemeKind::kExprb3, p);
  const IntegrationResult r2 = integrate_steps(*s2, p.x0, 0.0, 1.0, 8, last_only);
  CHECK(r2.states.size() == 2);
  CHECK(r2.final_state() == r.final_state());

  MDEProblem still{DenseMatrix::zeros(3, 3), [](double, const DenseMatrix& x) { return DenseMatrix::zeros(x.rows(), x.cols()); },
                   random_symmetric(3, 1), 0.0};
  const IntegrationResult c = integrate(still, 0.25, 1.0);
  for (const DenseMatrix& x : c.states) CHECK(x == still.x0);

  MDEProblem boom{DenseMatrix::zeros(1, 1), [](double, const DenseMatrix& x) { return 1e10 * multiply(x, x); },
                  DenseMatrix{{1e100}}, 0.0};
  CHECK_THROWS_WITH_AS(integrate(boom, 1.0, 4.0), doctest::Contains("blow-up at step"), NumericalError);
}

TEST_CASE("scheme names and slopes") {
  CHECK(parse_scheme("exprb2") == SchemeKind::kExprb2);
  CHECK(scheme_name(SchemeKind::kExpEuler) == "exp_euler");
  CHECK(scheme_order(SchemeKind::kExprb3) == 3);
  CHECK_THROWS_AS(parse_scheme("rk4"), std::invalid_argument);
  const std::vector<double> h{0.1, 0.05, 0.025}, e{3e-2, 7.5e-3, 1.875e-3};
  CHECK(convergence_slope(h, e) == doctest::Approx(2.0));
}

TEST_CASE("advection-diffusion DRE setup") {
  const DREProblem p = advection_diffusion_dre(4);
  validate(p);
  CHECK(p.a.rows() == 16);
  CHECK(p.b.cols() == 1);
  CHECK(p.c.cols() == 1);
  CHECK(p.x0 == DenseMatrix::identity(16));
}
