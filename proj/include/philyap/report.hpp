#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "philyap/integrators.hpp"

namespace philyap::report {

inline constexpr const char* kVersion = "0.1.0";

struct ReportRow {
  std::string case_name;
  /// "1".."8" for kernel rows, "<scheme>@<steps>" for integrator rows.
  std::string l_or_scheme;
  double error = 0.0;
  /// Matrix products for kernel rows; kernel invocations for integrator rows.
  std::int64_t products = 0;
  int m = 0;
  int s = 0;
  double wall_time = 0.0;
  std::string oracle;
  int sort_key = 0;
};

struct RunReport {
  std::vector<ReportRow> rows;
  std::uint64_t seed = 42;
  double tolerance = 0.0;
  std::string timestamp;
  std::string version = kVersion;
  std::vector<std::string> warnings;
};

/// case, l_or_scheme, error, products, m, s, wall_time, oracle
const std::vector<std::string>& csv_columns();

/// Orders rows by (case, sort_key).
void sort_rows(RunReport& report);
std::string to_csv(const RunReport& report);
std::string to_json(const RunReport& report);
std::string utc_timestamp();

/// Median wall time of `repetitions` calls after one untimed warm-up.
double median_seconds(const std::function<void()>& fn, int repetitions = 5);

struct BenchOptions {
  /// "structured", "laplacian1d", or a single gallery case name.
  std::string suite = "structured";
  std::size_t n = 8;
  int l_min = 1;
  int l_max = 8;
  bool oracle = true;
  std::uint64_t seed = 42;
  int repetitions = 5;
  /// c in c tridiag(1, -2, 1) for the laplacian1d suite.
  double scale = 2500.0;
};

/// One row per (case, l): kernel error against the reference, median time,
/// parameters and product count. Cases the Kronecker reference cannot handle
/// (N > 64, other than laplacian1d) get error -1, oracle "none" and a warning.
RunReport run_bench(const BenchOptions& options);

struct IntegrateBenchOptions {
  std::size_t n0 = 10;
  std::vector<SchemeKind> schemes{SchemeKind::kExprb2};
  std::vector<std::int64_t> steps{16, 32, 64, 128, 256, 512};
  double t_end = 0.05;
  std::int64_t reference_steps = 8192;
};

struct IntegrateBench {
  RunReport report;
  /// Slope per scheme, aligned with options.schemes; NaN with fewer than 2 steps.
  std::vector<double> slopes;
};

IntegrateBench run_integrate_bench(const IntegrateBenchOptions& options);

}  // namespace philyap::report
