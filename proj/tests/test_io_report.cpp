#include <doctest.h>

#include <filesystem>
#include <json.hpp>
#include <string>

#include "philyap/gallery.hpp"
#include "philyap/matrix_io.hpp"
#include "philyap/params.hpp"
#include "philyap/report.hpp"

using namespace philyap;

TEST_CASE("matrix text format round trip") {
  const DenseMatrix m = gallery::random_uniform(3, 5, 1);
  CHECK(io::parse_matrix(io::format_matrix(m)) == m);
  const DenseMatrix c = io::parse_matrix("# comment\n2 2  # header\n1 2\n3 4e-1\n");
  CHECK(c == DenseMatrix{{1, 2}, {3, 0.4}});

  const auto path = std::filesystem::temp_directory_path() / "philyap_roundtrip.txt";
  io::write_matrix(path, m);
  CHECK(io::read_matrix(path) == m);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(io::read_matrix("/nonexistent/philyap.txt"), std::runtime_error);
}

TEST_CASE("parse errors name the line") {
  auto line_of = [](const char* text) {
    try {
      io::parse_matrix(text);
    } catch (const io::ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("2 2\n1 2\n3 oops\n") == 3);
  CHECK(line_of("2 2\n1 2\n3\n") == 3);  // last line read
  CHECK(line_of("2 2\n1 2\n3 4 5\n") == 3);
  CHECK(line_of("2\n2\n1 2 3 4\n") == 2);
  CHECK(line_of("\n\n1 1\nnan\n") == 4);
  CHECK(line_of("0 2\n") == 1);
  CHECK(line_of("") == 0);
  CHECK_THROWS_WITH_AS(io::parse_matrix("1 1\nx\n"), doctest::Contains("line 2"), io::ParseError);
}

TEST_CASE("CSV header is fixed") {
  report::RunReport r;
  CHECK(report::to_csv(r) == "case,l_or_scheme,error,products,m,s,wall_time,oracle\n");
}

TEST_CASE("CSV and JSON rows") {
  report::RunReport r;
  r.rows.push_back({"b,c", "2", 1.5e-14, 12, 11, 0, 0.25, "kronecker", 2});
  r.rows.push_back({"a", "1", 2e-15, 5, 5, 0, 0.5, "kronecker", 1});
  report::sort_rows(r);
  const std::string csv = report::to_csv(r);
  CHECK(csv.find("a,1,2.000000e-15,5,5,0,5.000000e-01,kronecker\n") != std::string::npos);
  CHECK(csv.find("\"b,c\",2,1.500000e-14,12,11,0") != std::string::npos);
  CHECK(csv.find("a,1") < csv.find("\"b,c\""));

  const auto doc = nlohmann::json::parse(report::to_json(r));
  CHECK(doc["metadata"]["seed"] == 42);
  CHECK(doc["metadata"]["version"] == report::kVersion);
  CHECK(doc["rows"].size() == 2);
  CHECK(doc["rows"][1]["products"] == 12);
}

TEST_CASE("median timing") {
  int calls = 0;
  const double t = report::median_seconds([&] { ++calls; }, 5);
  CHECK(calls == 6);
  CHECK(t >= 0.0);
  CHECK_THROWS_AS(report::median_seconds([] {}, 0), std::invalid_argument);
}

TEST_CASE("bench rows") {
  report::BenchOptions o;
  o.suite = "jordan";
  o.n = 4;
  o.l_max = 3;
  o.repetitions = 1;
  const report::RunReport r = report::run_bench(o);
  REQUIRE(r.rows.size() == 3);
  for (const auto& row : r.rows) {
    CHECK(row.oracle == "kronecker");
    CHECK(row.error <= 1e-10);
    CHECK(row.products == phi_cost(std::stoi(row.l_or_scheme), row.m, row.s));
  }

  o.suite = "random_dense";
  o.n = 70;
  o.l_max = 1;
  const report::RunReport big = report::run_bench(o);
  CHECK(big.rows.front().oracle == "none");
  CHECK(big.rows.front().error == -1.0);
  CHECK(big.warnings.size() == 1);
}
