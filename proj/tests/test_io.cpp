#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <string>

#include <Eigen/Dense>

#include "rdl/digraph.hpp"
#include "rdl/errors.hpp"
#include "rdl/io.hpp"
#include "rdl/sampler.hpp"

TEST_CASE("format_double round-trips doubles exactly") {
  for (double x : {1.0 / 3.0, 3.141592653589793, 1e-300, 6.02214076e23,
                   -0.1, 2.2250738585072014e-308, 123456789.123456789}) {
    std::string s = rdl::format_double(x);
    CHECK(std::strtod(s.c_str(), nullptr) == x);
  }
  CHECK(rdl::format_double(1.0) == rdl::format_double(1.0));  // stable bytes
}

TEST_CASE("matrix CSV round-trip is exact") {
  Eigen::MatrixXd M(2, 3);
  M << 1.0 / 3.0, -2.5, 1e-12,
       7.0, 0.0, -1e100;
  std::string csv = rdl::matrix_to_csv(M);
  Eigen::MatrixXd back = rdl::matrix_from_csv(csv);
  REQUIRE(back.rows() == 2);
  REQUIRE(back.cols() == 3);
  CHECK(back == M);
}

TEST_CASE("complex vector CSV round-trip is exact") {
  Eigen::VectorXcd v(3);
  v << std::complex<double>(1.0 / 3.0, -2.0), std::complex<double>(0, 1e-7),
      std::complex<double>(-4, 0);
  Eigen::VectorXcd back = rdl::cvector_from_csv(rdl::cvector_to_csv(v));
  REQUIRE(back.size() == 3);
  CHECK(back == v);
}

TEST_CASE("digraph JSON uses 1-based labels and round-trips") {
  rdl::RegularDigraph A = rdl::circulant_digraph(3, 1);
  rdl::Json j = rdl::digraph_to_json(A);
  CHECK(j["n"] == 3);
  CHECK(j["d"] == 1);
  CHECK(j["out_adj"][0][0] == 1);  // vertex 0 -> itself, printed 1-based
  CHECK(j["out_adj"][2][0] == 3);
  CHECK(rdl::digraph_from_json(j) == A);

  rdl::Json bad = j;
  bad["out_adj"][0][0] = 5;
  CHECK_THROWS_AS(static_cast<void>(rdl::digraph_from_json(bad)), rdl::Error);
}

TEST_CASE("index sets print 1-based") {
  rdl::Json j = rdl::index_set_to_json({0, 2, 5});
  REQUIRE(j.size() == 3);
  CHECK(j[0] == 1);
  CHECK(j[1] == 3);
  CHECK(j[2] == 6);
}

TEST_CASE("file round-trip and missing-file error") {
  const std::string path = "io_test_tmp.txt";
  const std::string content = "line one\nline two\n";
  rdl::write_file(path, content);
  CHECK(rdl::read_file(path) == content);
  std::remove(path.c_str());
  CHECK_THROWS_AS(static_cast<void>(rdl::read_file("definitely_missing_file.xyz")),
                  rdl::Error);
}

TEST_CASE("ordered json preserves insertion order") {
  rdl::Json j{{"zebra", 1}, {"alpha", 2}};
  CHECK(j.dump() == "{\"zebra\":1,\"alpha\":2}");
}
