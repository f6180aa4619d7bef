#include "philyap/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "philyap/gallery.hpp"
#include "philyap/oracle.hpp"
#include "philyap/params.hpp"
#include "philyap/phi.hpp"

namespace philyap::report {
namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct BenchCase {
  std::string name;
  DenseMatrix a;
  DenseMatrix q;
};

std::vector<BenchCase> bench_cases(const BenchOptions& o) {
  std::vector<BenchCase> out;
  if (o.suite == "structured") {
    for (auto& c : gallery::structured_suite(o.n, o.seed)) out.push_back({c.name, std::move(c.a), std::move(c.q)});
  } else if (o.suite == "laplacian1d") {
    out.push_back({"laplacian1d", gallery::laplacian_1d(o.n, o.scale), gallery::random_symmetric(o.n, o.seed)});
  } else {
    auto c = gallery::make_case(o.suite, o.n, o.seed);
    out.push_back({c.name, std::move(c.a), std::move(c.q)});
  }
  return out;
}

// References for l = l_min..l_max, or empty when out of reach.
std::vector<DenseMatrix> references(const BenchOptions& o, const BenchCase& c, std::string& oracle_name) {
  const std::size_t n = c.a.rows();
  if (n <= oracle::kMaxOracleSize) {
    oracle_name = "kronecker";
    std::vector<DenseMatrix> all = oracle::phi_reference_all(c.a, c.q, o.l_max);
    return {all.begin() + o.l_min, all.end()};
  }
  if (o.suite == "laplacian1d") {
    oracle_name = "spectral";
    std::vector<DenseMatrix> all = oracle::laplacian_phi_reference(n, o.scale, c.q, o.l_max);
    return {all.begin() + (o.l_min - 1), all.end()};
  }
  oracle_name = "none";
  return {};
}

}  // namespace

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{"case", "l_or_scheme", "error", "products",
                                             "m",    "s",           "wall_time", "oracle"};
  return cols;
}

void sort_rows(RunReport& report) {
  std::stable_sort(report.rows.begin(), report.rows.end(), [](const ReportRow& x, const ReportRow& y) {
    if (x.case_name != y.case_name) return x.case_name < y.case_name;
    return x.sort_key < y.sort_key;
  });
}

std::string to_csv(const RunReport& report) {
  std::string out;
  for (std::size_t i = 0; i < csv_columns().size(); ++i) out += (i ? "," : "") + csv_columns()[i];
  out += '\n';
  for (const ReportRow& r : report.rows) {
    out += csv_field(r.case_name) + ',' + csv_field(r.l_or_scheme) + ',' + sci(r.error) + ',' +
           std::to_string(r.products) + ',' + std::to_string(r.m) + ',' + std::to_string(r.s) + ',' +
           sci(r.wall_time) + ',' + csv_field(r.oracle) + '\n';
  }
  return out;
}

std::string to_json(const RunReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const ReportRow& r : report.rows) {
    rows.push_back({{"case", r.case_name},
                    {"l_or_scheme", r.l_or_scheme},
                    {"error", r.error},
                    {"products", r.products},
                    {"m", r.m},
                    {"s", r.s},
                    {"wall_time", r.wall_time},
                    {"oracle", r.oracle}});
  }
  nlohmann::json doc{{"metadata",
                      {{"seed", report.seed},
                       {"tolerance", report.tolerance},
                       {"timestamp", report.timestamp},
                       {"version", report.version}}},
                     {"warnings", report.warnings},
                     {"rows", rows}};
  return doc.dump(2) + "\n";
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

double median_seconds(const std::function<void()>& fn, int repetitions) {
  if (repetitions < 1) throw std::invalid_argument("median_seconds: repetitions must be >= 1");
  fn();
  std::vector<double> times;
  for (int i = 0; i < repetitions; ++i) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const std::chrono::duration<double> d = std::chrono::steady_clock::now() - start;
    times.push_back(d.count());
  }
  std::sort(times.begin(), times.end());
  const std::size_t mid = times.size() / 2;
  return times.size() % 2 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
}

RunReport run_bench(const BenchOptions& o) {
  if (o.l_min < 1 || o.l_max < o.l_min) throw std::invalid_argument("bench: need 1 <= l_min <= l_max");
  RunReport report;
  report.seed = o.seed;
  report.tolerance = ThetaTable::builtin().tolerance();
  report.timestamp = utc_timestamp();

  for (const BenchCase& c : bench_cases(o)) {
    std::string oracle_name = "none";
    std::vector<DenseMatrix> refs;
    if (o.oracle) {
      refs = references(o, c, oracle_name);
      if (refs.empty())
        report.warnings.push_back(c.name + ": oracle scale exceeded (N = " + std::to_string(c.a.rows()) +
                                  "), rows have no error");
    }
    for (int l = o.l_min; l <= o.l_max; ++l) {
      PhiResult result = phi_lyap(c.a, c.q, l);
      const double t = median_seconds([&] { result = phi_lyap(c.a, c.q, l); }, o.repetitions);
      ReportRow row;
      row.case_name = c.name;
      row.l_or_scheme = std::to_string(l);
      row.sort_key = l;
      row.products = result.products_used;
      row.m = result.params.m;
      row.s = result.params.s;
      row.wall_time = t;
      row.oracle = oracle_name;
      row.error = -1.0;
      if (!refs.empty()) {
        const DenseMatrix& ref = refs[static_cast<std::size_t>(l - o.l_min)];
        row.error = ref.is_zero() ? max_abs(result.phi(l)) : relative_error(ref, result.phi(l));
      }
      report.rows.push_back(std::move(row));
    }
  }
  sort_rows(report);
  return report;
}

IntegrateBench run_integrate_bench(const IntegrateBenchOptions& o) {
  const DREProblem p = advection_diffusion_dre(o.n0);
  const DenseMatrix reference = dre_self_reference(p, o.t_end, o.reference_steps);
  IntegrateBench out;
  out.report.seed = 0;
  out.report.tolerance = ThetaTable::builtin().tolerance();
  out.report.timestamp = utc_timestamp();
  const std::string case_name = "dre_n0=" + std::to_string(o.n0);
  for (SchemeKind kind : o.schemes) {
    double slope = std::numeric_limits<double>::quiet_NaN();
    ConvergenceStudy study;
    if (o.steps.size() >= 2) {
      study = convergence_study(p, kind, o.t_end, o.steps, reference);
      slope = study.slope;
    } else {
      // A single run: no slope, but the error row is still useful.
      study.steps = o.steps;
      IntegrateOptions io;
      io.record_all = false;
      for (std::int64_t n : o.steps) {
        auto scheme = make_scheme(kind, p);
        const auto start = std::chrono::steady_clock::now();
        const IntegrationResult r = integrate_steps(*scheme, p.x0, p.t0, o.t_end, n, io);
        const std::chrono::duration<double> d = std::chrono::steady_clock::now() - start;
        study.errors.push_back(relative_error(reference, r.final_state()));
        study.seconds.push_back(d.count());
      }
    }
    out.slopes.push_back(slope);
    for (std::size_t i = 0; i < study.steps.size(); ++i) {
      ReportRow row;
      row.case_name = case_name;
      row.l_or_scheme = scheme_name(kind) + "@" + std::to_string(study.steps[i]);
      row.sort_key = static_cast<int>(kind) * 10'000'000 + static_cast<int>(study.steps[i]);
      row.error = study.errors[i];
      const int calls_per_step = (kind == SchemeKind::kExprb3) ? 2 : 1;
      row.products = study.steps[i] * calls_per_step;
      row.wall_time = study.seconds[i];
      row.oracle = "exprb3@" + std::to_string(o.reference_steps);
      out.report.rows.push_back(std::move(row));
    }
  }
  sort_rows(out.report);
  return out;
}

}  // namespace philyap::report
