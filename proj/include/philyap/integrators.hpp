#pragma once

// Fixed-step exponential integrators for matrix differential equations
//   X' = A X + X A^T + N(t, X)
// and the differential Riccati equation
//   X' = A X + X A^T + C C^T - X B B^T X.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "philyap/dense_matrix.hpp"
#include "philyap/norm_estimate.hpp"

namespace philyap {

using Nonlinearity = std::function<DenseMatrix(double t, const DenseMatrix& x)>;

struct MDEProblem {
  DenseMatrix a;
  Nonlinearity nonlinearity;
  DenseMatrix x0;
  double t0 = 0.0;
};

struct DREProblem {
  DenseMatrix a;
  DenseMatrix b;  // N x p
  DenseMatrix c;  // N x q
  DenseMatrix x0;
  double t0 = 0.0;
};

/// Checks the shapes of a DRE; throws ShapeError.
void validate(const DREProblem& p);

/// A X + X A^T + C C^T - X B B^T X. Exactly symmetric for exactly symmetric X.
DenseMatrix dre_rhs(const DREProblem& p, double t, const DenseMatrix& x);

/// The DRE as an MDE with N(t, X) = C C^T - X B B^T X.
MDEProblem as_mde(const DREProblem& p);

/// Frozen Jacobian matrix A - X B B^T: the derivative of the DRE right-hand
/// side at X is V -> A_n V + V A_n^T.
DenseMatrix frozen_jacobian(const DREProblem& p, const DenseMatrix& x);

/// e^{hL_A}[X] + h phi_1(hL_A)[N(t, X)], from one kernel call.
DenseMatrix exp_euler_step(const MDEProblem& p, double t, const DenseMatrix& x, double h);
/// X + h phi_1(hL_{A_n})[F(X)].
DenseMatrix exprb2_step(const DREProblem& p, double t, const DenseMatrix& x, double h);
/// U = X + h phi_1(hL_{A_n})[F(X)], D = F(U) - F(X) - L_{A_n}[U - X],
/// X+ = U + 2h phi_3(hL_{A_n})[D].
DenseMatrix exprb3_step(const DREProblem& p, double t, const DenseMatrix& x, double h);

/// A one-step exponential method. Implementations may cache data that
/// depends only on the problem (power norms of A), so step() is non-const.
class ExponentialScheme {
 public:
  virtual ~ExponentialScheme() = default;
  virtual std::string name() const = 0;
  virtual int order() const = 0;
  virtual DenseMatrix step(double t, const DenseMatrix& x, double h) = 0;
  /// Kernel invocations so far.
  std::int64_t phi_calls() const { return phi_calls_; }

 protected:
  std::int64_t phi_calls_ = 0;
};

enum class SchemeKind { kExpEuler, kExprb2, kExprb3 };

/// "exp_euler", "exprb2", "exprb3"; throws std::invalid_argument otherwise.
SchemeKind parse_scheme(std::string_view name);
std::string scheme_name(SchemeKind kind);
int scheme_order(SchemeKind kind);

std::unique_ptr<ExponentialScheme> make_exp_euler(MDEProblem p);
std::unique_ptr<ExponentialScheme> make_scheme(SchemeKind kind, const DREProblem& p);

struct IntegrateOptions {
  /// Keep every state; otherwise only the initial and final ones.
  bool record_all = true;
};

struct IntegrationResult {
  std::vector<double> times;
  std::vector<DenseMatrix> states;
  std::int64_t steps_taken = 0;
  std::int64_t phi_calls = 0;

  const DenseMatrix& final_state() const { return states.back(); }
};

inline constexpr std::int64_t kMaxSteps = std::int64_t{1} << 20;

/// n uniform steps from (t0, x0) to t_end. Throws NumericalError("blow-up at
/// step k") when a state stops being finite.
IntegrationResult integrate_steps(ExponentialScheme& scheme, const DenseMatrix& x0, double t0, double t_end,
                                  std::int64_t n, const IntegrateOptions& options = {});

/// Step size h must divide t_end - t0 (to relative 1e-9) into 1..2^20 steps.
IntegrationResult integrate(ExponentialScheme& scheme, const DenseMatrix& x0, double t0, double h, double t_end,
                            const IntegrateOptions& options = {});
IntegrationResult integrate(const DREProblem& p, SchemeKind kind, double h, double t_end,
                            const IntegrateOptions& options = {});
IntegrationResult integrate(const MDEProblem& p, double h, double t_end, const IntegrateOptions& options = {});

/// Least-squares slope of log(error) against log(h).
double convergence_slope(const std::vector<double>& h, const std::vector<double>& errors);

/// The advection-diffusion DRE on the n0 x n0 grid: A = fdm_advection_diffusion(n0),
/// B = indicator of 0.1 < x <= 0.3, C = indicator of 0.7 < x <= 0.9, X0 = I.
DREProblem advection_diffusion_dre(std::size_t n0);

/// Final state of exprb3 with `steps` uniform steps, used as the reference
/// solution for convergence studies.
DenseMatrix dre_self_reference(const DREProblem& p, double t_end, std::int64_t steps = 8192);

struct ConvergenceStudy {
  std::vector<std::int64_t> steps;
  std::vector<double> h;
  std::vector<double> errors;  // relative 1-norm error of the final state
  std::vector<double> seconds;
  double slope = 0.0;
};

ConvergenceStudy convergence_study(const DREProblem& p, SchemeKind kind, double t_end,
                                   const std::vector<std::int64_t>& steps, const DenseMatrix& reference);

}  // namespace philyap
