// philyap-cli: phi, bench, integrate, theta.
//
// Exit status: 0 ok, 1 numerical failure, 2 usage or parse error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "philyap/gallery.hpp"
#include "philyap/integrators.hpp"
#include "philyap/matrix_io.hpp"
#include "philyap/oracle.hpp"
#include "philyap/params.hpp"
#include "philyap/phi.hpp"
#include "philyap/report.hpp"

namespace {

using namespace philyap;

constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "16..512" -> 16, 32, ..., 512 (doubling); "64" -> 64.
std::vector<std::int64_t> parse_ladder(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) return {std::stoll(text)};
    const std::int64_t lo = std::stoll(text.substr(0, dots));
    const std::int64_t hi = std::stoll(text.substr(dots + 2));
    if (lo < 1 || hi < lo) throw UsageError("bad ladder '" + text + "'");
    std::vector<std::int64_t> out;
    for (std::int64_t n = lo; n <= hi; n *= 2) out.push_back(n);
    return out;
  } catch (const std::logic_error&) {
    throw UsageError("bad ladder '" + text + "'");
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

std::string json_path(const std::string& csv) {
  const auto dot = csv.rfind('.');
  const auto slash = csv.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return csv + ".json";
  return csv.substr(0, dot) + ".json";
}

void write_report(const report::RunReport& r, const std::string& path) {
  write_text(path, report::to_csv(r));
  if (!path.empty() && path != "-") write_text(json_path(path), report::to_json(r));
  for (const std::string& w : r.warnings) std::cerr << "warning: " << w << "\n";
}

struct PhiArgs {
  std::string gallery;
  std::string matrix;
  std::string q_file;
  std::size_t n = 8;
  double scale = 1.0;
  int l = 1;
  std::optional<double> t;
  std::string output;
};

DenseMatrix phi_matrix(const PhiArgs& a, std::uint64_t seed) {
  if (!a.matrix.empty()) return io::read_matrix(a.matrix);
  if (a.gallery == "laplacian1d") return gallery::laplacian_1d(a.n, a.scale);
  if (a.gallery == "fdm") return gallery::fdm_advection_diffusion(a.n);
  try {
    return gallery::make_case(a.gallery, a.n, seed).a;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int cmd_phi(const PhiArgs& a, std::uint64_t seed) {
  if (a.gallery.empty() == a.matrix.empty()) throw UsageError("phi: give exactly one of --gallery, --matrix");
  const DenseMatrix mat = phi_matrix(a, seed);
  const DenseMatrix q = a.q_file.empty() ? gallery::random_symmetric(mat.rows(), seed) : io::read_matrix(a.q_file);
  if (q.rows() != mat.rows() || q.cols() != mat.cols())
    throw UsageError("phi: Q is " + std::to_string(q.rows()) + "x" + std::to_string(q.cols()) + ", A is " +
                     std::to_string(mat.rows()) + "x" + std::to_string(mat.cols()));
  const PhiResult r = a.t ? phi_scaled(mat, q, a.l, *a.t) : phi_lyap(mat, q, a.l);
  for (const std::string& w : r.warnings) std::cerr << "warning: " << w << "\n";
  std::cerr << "seed=" << seed << " l=" << a.l << " m=" << r.params.m << " s=" << r.params.s
            << " products=" << r.products_used << " predicted=" << r.predicted_products << "\n";
  write_text(a.output, io::format_matrix(r.phi(a.l)));
  return 0;
}

struct IntegrateArgs {
  std::vector<std::string> schemes{"exprb2"};
  std::size_t n0 = 10;
  std::string steps = "16..512";
  double t_end = 0.05;
  std::int64_t reference_steps = 8192;
  std::string problem = "dre";
  std::string output;
};

int cmd_integrate_dle(const IntegrateArgs& a) {
  // Constant source: X' = A X + X A^T + C C^T, X(0) = 0. The exact answer is
  // t phi_1(t L_A)[C C^T], taken from the ODE reference.
  const DREProblem dre = advection_diffusion_dre(a.n0);
  const DenseMatrix cct = multiply_transposed(dre.c, dre.c);
  const DenseMatrix exact = oracle::dle_reference(dre.a, cct, 1, a.t_end);
  MDEProblem p{dre.a, [cct](double, const DenseMatrix&) { return cct; }, DenseMatrix(dre.a.rows(), dre.a.rows()),
               0.0};
  report::RunReport rep;
  rep.tolerance = ThetaTable::builtin().tolerance();
  rep.timestamp = report::utc_timestamp();
  for (const std::string& s : a.schemes)
    if (s != "exp_euler") throw UsageError("--problem dle supports only --scheme exp_euler");
  for (std::int64_t n : parse_ladder(a.steps)) {
    auto scheme = make_exp_euler(p);
    IntegrateOptions io;
    io.record_all = false;
    const IntegrationResult r = integrate_steps(*scheme, p.x0, p.t0, a.t_end, n, io);
    report::ReportRow row;
    row.case_name = "dle_n0=" + std::to_string(a.n0);
    row.l_or_scheme = "exp_euler@" + std::to_string(n);
    row.sort_key = static_cast<int>(n);
    row.error = relative_error(exact, r.final_state());
    row.products = r.phi_calls;
    row.oracle = "dle_reference";
    rep.rows.push_back(row);
  }
  report::sort_rows(rep);
  write_report(rep, a.output);
  return 0;
}

int cmd_integrate(const IntegrateArgs& a) {
  if (a.problem == "dle") return cmd_integrate_dle(a);
  if (a.problem != "dre") throw UsageError("--problem must be dre or dle");
  report::IntegrateBenchOptions o;
  o.n0 = a.n0;
  o.schemes.clear();
  for (const std::string& s : a.schemes) {
    try {
      o.schemes.push_back(parse_scheme(s));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  o.steps = parse_ladder(a.steps);
  o.t_end = a.t_end;
  o.reference_steps = a.reference_steps;
  const report::IntegrateBench b = report::run_integrate_bench(o);
  write_report(b.report, a.output);
  for (std::size_t i = 0; i < o.schemes.size(); ++i)
    if (!std::isnan(b.slopes[i])) std::cerr << scheme_name(o.schemes[i]) << " slope=" << b.slopes[i] << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lyapunov-operator phi-functions and exponential integrators"};
  app.set_config("--config", "", "key=value configuration file");
  app.require_subcommand(1);
  std::uint64_t seed = 42;
  app.add_option("--seed", seed, "random seed")->envname("PHILYAP_SEED");

  PhiArgs phi;
  auto* phi_cmd = app.add_subcommand("phi", "compute phi_l(t L_A)[Q]");
  phi_cmd->add_option("--gallery", phi.gallery, "gallery matrix name (a structured case, laplacian1d, fdm)");
  phi_cmd->add_option("--matrix", phi.matrix, "matrix file for A");
  phi_cmd->add_option("--q", phi.q_file, "matrix file for Q (default: random symmetric from --seed)");
  phi_cmd->add_option("--n", phi.n, "size (grid points per side for fdm)");
  phi_cmd->add_option("--scale", phi.scale, "c for laplacian1d");
  phi_cmd->add_option("--l", phi.l, "index l")->required()->check(CLI::Range(1, 24));
  phi_cmd->add_option("--t", phi.t, "time scaling t > 0")->check(CLI::PositiveNumber);
  phi_cmd->add_option("-o,--output", phi.output, "output matrix file (default stdout)");
  phi_cmd->add_option("--seed", seed, "random seed")->envname("PHILYAP_SEED");

  report::BenchOptions bench;
  std::string bench_out;
  bool no_oracle = false;
  auto* bench_cmd = app.add_subcommand("bench", "kernel accuracy and timing against the references");
  bench_cmd->add_option("--suite", bench.suite, "structured, laplacian1d, or a gallery case name");
  bench_cmd->add_option("--n", bench.n, "matrix size");
  bench_cmd->add_option("--l-min", bench.l_min)->check(CLI::Range(1, 24));
  bench_cmd->add_option("--l-max", bench.l_max)->check(CLI::Range(1, 24));
  bench_cmd->add_option("--scale", bench.scale, "c for laplacian1d");
  bench_cmd->add_option("--repetitions", bench.repetitions)->check(CLI::PositiveNumber);
  bench_cmd->add_flag("--no-oracle", no_oracle);
  bench_cmd->add_option("-o,--output", bench_out, "CSV path; a .json mirror is written next to it");
  bench_cmd->add_option("--seed", seed, "random seed")->envname("PHILYAP_SEED");

  IntegrateArgs integ;
  auto* int_cmd = app.add_subcommand("integrate", "differential Riccati / Lyapunov runs");
  int_cmd->add_option("--scheme", integ.schemes, "exp_euler, exprb2, exprb3 (repeatable)");
  int_cmd->add_option("--n0", integ.n0, "grid points per side");
  int_cmd->add_option("--steps,--steps-ladder", integ.steps, "n or lo..hi (doubling)");
  int_cmd->add_option("--t-end", integ.t_end)->check(CLI::PositiveNumber);
  int_cmd->add_option("--reference-steps", integ.reference_steps)->check(CLI::PositiveNumber);
  int_cmd->add_option("--problem", integ.problem, "dre or dle (constant source)");
  int_cmd->add_option("-o,--output", integ.output, "CSV path; a .json mirror is written next to it");

  int degree = 25;
  double tol = kDefaultTolerance;
  bool table = false;
  auto* theta_cmd = app.add_subcommand("theta", "derive theta_d");
  theta_cmd->add_option("--degree", degree)->check(CLI::Range(2, 60));
  theta_cmd->add_option("--tol", tol)->check(CLI::PositiveNumber);
  theta_cmd->add_flag("--table", table, "print degrees 2..30 in the table format");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*phi_cmd) return cmd_phi(phi, seed);
    if (*bench_cmd) {
      bench.oracle = !no_oracle;
      bench.seed = seed;
      write_report(report::run_bench(bench), bench_out);
      return 0;
    }
    if (*int_cmd) return cmd_integrate(integ);
    if (*theta_cmd) {
      if (table) {
        std::printf("# degree theta_d for tolerance %.17g\ntolerance %.17g\n", tol, tol);
        for (int d = 2; d <= 30; ++d) std::printf("%d %.17g\n", d, derive_theta(d, tol));
      } else {
        std::printf("%.10g\n", derive_theta(degree, tol));
      }
      return 0;
    }
  } catch (const io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
