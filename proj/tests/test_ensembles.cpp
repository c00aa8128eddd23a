#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "rdl/digraph.hpp"
#include "rdl/ensembles.hpp"
#include "rdl/errors.hpp"
#include "rdl/rng.hpp"
#include "rdl/sampler.hpp"

using Complex = std::complex<double>;
using rdl::EnsembleKind;
using rdl::EnsembleSpec;
using rdl::RngStream;

TEST_CASE("ensemble specs validate their degree ranges") {
  CHECK_NOTHROW(rdl::validate(EnsembleSpec{EnsembleKind::Regular, 10, 5}));
  CHECK_THROWS_WITH_AS(rdl::validate(EnsembleSpec{EnsembleKind::Regular, 10, 6}),
                       doctest::Contains("BadDegree"), rdl::Error);
  CHECK_NOTHROW(rdl::validate(EnsembleSpec{EnsembleKind::Bernoulli, 10, 9}));
  CHECK_THROWS_AS(rdl::validate(EnsembleSpec{EnsembleKind::Bernoulli, 10, 10}),
                  rdl::Error);
  CHECK_NOTHROW(rdl::validate(EnsembleSpec{EnsembleKind::Gaussian, 10, 0}));
  EnsembleSpec spec{EnsembleKind::Regular, 10, 3};
  CHECK(spec.p() == doctest::Approx(0.3));
  rdl::Json j = spec.to_json();
  CHECK(j.at("kind").get<std::string>() == rdl::to_string(EnsembleKind::Regular));
  CHECK(j.at("n").get<int>() == 10);
  CHECK(rdl::to_string(EnsembleKind::Bernoulli) !=
        rdl::to_string(EnsembleKind::Gaussian));
}

TEST_CASE("raw draws have the ensemble's signature") {
  RngStream rng(70, 0);
  Eigen::MatrixXd A = rdl::draw_matrix(EnsembleSpec{EnsembleKind::Regular, 12, 3}, rng);
  for (int i = 0; i < 12; ++i) {
    CHECK(A.row(i).sum() == doctest::Approx(3.0));
    CHECK(A.col(i).sum() == doctest::Approx(3.0));
  }
  Eigen::MatrixXd B =
      rdl::draw_matrix(EnsembleSpec{EnsembleKind::Bernoulli, 20, 5}, rng);
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) CHECK((B(i, j) == 0.0 || B(i, j) == 1.0));
  Eigen::MatrixXd G =
      rdl::draw_matrix(EnsembleSpec{EnsembleKind::Gaussian, 20, 0}, rng);
  bool non_integral = false;
  for (int i = 0; i < 20 && !non_integral; ++i)
    for (int j = 0; j < 20; ++j)
      if (G(i, j) != std::floor(G(i, j))) {
        non_integral = true;
        break;
      }
  CHECK(non_integral);
}

TEST_CASE("centering a regular matrix kills both marginals") {
  RngStream rng(71, 0);
  rdl::RegularDigraph A =
      rdl::chain_sample(15, 4, rdl::default_chain_steps(15, 4), rng);
  Eigen::MatrixXd Y = rdl::center_Y(A);
  for (int i = 0; i < 15; ++i) {
    CHECK(std::abs(Y.row(i).sum()) <= 1e-9);
    CHECK(std::abs(Y.col(i).sum()) <= 1e-9);
  }
  // Entries take exactly the two centered values.
  double p = 4.0 / 15.0;
  double hi = (1.0 - p) / std::sqrt(p * (1.0 - p));
  double lo = -p / std::sqrt(p * (1.0 - p));
  for (int i = 0; i < 15; ++i)
    for (int j = 0; j < 15; ++j)
      CHECK((std::abs(Y(i, j) - hi) <= 1e-12 || std::abs(Y(i, j) - lo) <= 1e-12));
  // p = 1 has nothing to normalize by.
  CHECK_THROWS_WITH_AS(static_cast<void>(rdl::center_Y(rdl::circulant_digraph(3, 3))),
                       doctest::Contains("DegenerateScale"), rdl::Error);
}

TEST_CASE("centering a 0-1 matrix validates and hits hand values") {
  Eigen::MatrixXd B(2, 2);
  B << 1, 0, 0, 1;
  Eigen::MatrixXd X = rdl::center_X(B, 0.5);
  CHECK(X(0, 0) == doctest::Approx(1.0));
  CHECK(X(0, 1) == doctest::Approx(-1.0));
  CHECK(X(1, 1) == doctest::Approx(1.0));
  CHECK_THROWS_WITH_AS(static_cast<void>(rdl::center_X(B, 0.0)),
                       doctest::Contains("BadP"), rdl::Error);
  CHECK_THROWS_AS(static_cast<void>(rdl::center_X(B, 1.0)), rdl::Error);
  Eigen::MatrixXd bad = B;
  bad(0, 0) = 0.5;
  CHECK_THROWS_AS(static_cast<void>(rdl::center_X(bad, 0.5)), rdl::Error);
}

TEST_CASE("tent functions interpolate and validate") {
  rdl::PiecewiseLinear f = rdl::tent_function(0.0, 1.0, 2.0);
  rdl::validate(f);
  CHECK(f.evaluate(-1.0) == doctest::Approx(0.0));
  CHECK(f.evaluate(0.0) == doctest::Approx(2.0));
  CHECK(f.evaluate(0.5) == doctest::Approx(1.0));
  CHECK(f.evaluate(5.0) == doctest::Approx(0.0));
  CHECK(f.lipschitz == doctest::Approx(2.0));

  rdl::PiecewiseLinear bad = f;
  bad.values.back() = 1.0;  // not compactly supported
  CHECK_THROWS_WITH_AS(rdl::validate(bad), doctest::Contains("BadFunctionSpec"),
                       rdl::Error);
  bad = f;
  bad.lipschitz = 0.5;  // understates the slope
  CHECK_THROWS_AS(rdl::validate(bad), rdl::Error);
  bad = f;
  bad.knots = {0.0, 0.0, 1.0};  // not strictly increasing
  CHECK_THROWS_AS(rdl::validate(bad), rdl::Error);
  CHECK_THROWS_AS(static_cast<void>(rdl::tent_function(0.0, 0.0, 1.0)), rdl::Error);
}

TEST_CASE("substreams are keyed by sample and leave the parent untouched") {
  RngStream parent(123, 7);
  RngStream a = rdl::ensemble_substream(parent, 0);
  RngStream b = rdl::ensemble_substream(parent, 1);
  CHECK(a.master_seed() == 123);
  CHECK(a.stream_index() == (7ull << 20) + 1);
  CHECK(b.stream_index() == (7ull << 20) + 2);
  CHECK(a.next_u64() != b.next_u64());
  // Re-derivation is exact and the parent never advances.
  RngStream a_again = rdl::ensemble_substream(parent, 0);
  a_again.next_u64();
  CHECK(a_again.next_u64() == a.next_u64());
  RngStream fresh(123, 7);
  CHECK(parent.next_u64() == fresh.next_u64());
}

TEST_CASE("rank-one shifts keep the singular value measures interlaced") {
  RngStream rng(72, 0);
  for (int rep = 0; rep < 3; ++rep) {
    rdl::RegularDigraph A =
        rdl::chain_sample(50, 5, rdl::default_chain_steps(50, 5), rng);
    double gap = rdl::interlacing_gap(A, Complex(0.3, 0.2));
    CHECK(gap >= 0.0);
    CHECK(gap <= 1.0 / 50.0 + 1e-12);
    // The two spectra in fact share n-1 values and differ in exactly one
    // (the direction of 1), so the distance is exactly one step.
    CHECK(gap == doctest::Approx(1.0 / 50.0));
  }
}

TEST_CASE("stieltjes comparison reports the documented envelope") {
  RngStream rng(73, 0);
  rdl::ComparisonReport rep =
      rdl::compare_stieltjes(40, 4, Complex(1, 0), Complex(0, 1), 4, rng);
  CHECK(rep.statistic == "stieltjes-comparison");
  CHECK(rep.samples == 4);
  CHECK(rep.master_seed == 73);
  double shape = std::pow(4.0, -0.5) * (1.0 + 1.0 / (40.0 * 40.0));
  CHECK(rep.bound == doctest::Approx(10.0 * shape));
  double diff = rep.details.at("difference").get<double>();
  CHECK(diff >= 0.0);
  CHECK(rep.fitted_constant == doctest::Approx(diff / shape));
  CHECK(rep.estimates.contains("bernoulli"));
  CHECK(rep.estimates.contains("gaussian"));
  CHECK_THROWS_AS(static_cast<void>(rdl::compare_stieltjes(
                      40, 4, Complex(1, 0), Complex(0, -1), 4, rng)),
                  rdl::Error);
}

TEST_CASE("linear statistics of the two ensembles are compared by quantile") {
  RngStream rng(74, 0);
  rdl::PiecewiseLinear f = rdl::tent_function(1.0, 0.5, 1.0);
  rdl::ComparisonReport rep =
      rdl::compare_linear_stat(30, 3, Complex(1, 0), f, 4, rng, 0.5);
  CHECK(rep.statistic == "linear-statistic-comparison");
  CHECK(rep.details.at("deviation_quantiles").contains("q95"));
  CHECK(rep.fitted_constant >= 0.0);
  CHECK(rep.estimates.contains("regular"));
}

TEST_CASE("wegner profile stays inside a generous envelope") {
  RngStream rng(75, 0);
  rdl::ComparisonReport rep = rdl::wegner_profile(
      36, 4, Complex(1, 1), std::vector<double>{0.2, 0.9}, 3, rng);
  // The envelope exceeds 1 at every grid point here, so no sample can fail.
  CHECK(rep.pass);
  CHECK(rep.details.at("samples_passing").get<long long>() == 3);
  CHECK(rep.estimates.at("per_eta").size() == 2);
  CHECK(rep.fitted_constant >= 0.0);
  CHECK_THROWS_AS(static_cast<void>(rdl::wegner_profile(
                      36, 4, Complex(1, 1), std::vector<double>{0.0}, 3, rng)),
                  rdl::Error);
  CHECK_THROWS_AS(static_cast<void>(rdl::wegner_profile(
                      36, 4, Complex(1, 1), std::vector<double>{1.5}, 3, rng)),
                  rdl::Error);
}

TEST_CASE("scalar and custom shifts agree when they encode the same matrix") {
  const int n = 30, d = 3;
  double scale = std::sqrt(d * (1.0 - static_cast<double>(d) / n));
  RngStream rng1(77, 5);
  rdl::ComparisonReport scalar = rdl::ssv_tail(n, d, Complex(3, 0),
                                               rdl::ShiftMode::ScalarShift, 2, rng1);
  Eigen::MatrixXcd Z =
      Complex(-3, 0) * scale * Eigen::MatrixXcd::Identity(n, n);
  RngStream rng2(77, 5);
  rdl::ComparisonReport custom = rdl::ssv_tail(n, d, Complex(3, 0),
                                               rdl::ShiftMode::CustomZ, 2, rng2, &Z);
  std::vector<double> v1 = scalar.details.at("values").get<std::vector<double>>();
  std::vector<double> v2 = custom.details.at("values").get<std::vector<double>>();
  REQUIRE(v1.size() == v2.size());
  for (std::size_t i = 0; i < v1.size(); ++i) CHECK(v1[i] == v2[i]);
  // z = 3 sits far outside the bulk, so the tail test passes outright.
  CHECK(scalar.pass);
  CHECK(scalar.details.at("mode").get<std::string>() == "scalar-shift");
  CHECK(custom.details.at("mode").get<std::string>() == "custom-Z");
}

TEST_CASE("custom shifts are vetted hypothesis by hypothesis") {
  const int n = 20, d = 3;
  RngStream rng(78, 0);
  // Z = -(d/n) 11^T satisfies every structural hypothesis but lands exactly on
  // the degenerate point zeta = -d.
  Eigen::MatrixXcd deg = Eigen::MatrixXcd::Constant(
      n, n, Complex(-static_cast<double>(d) / n, 0));
  CHECK_THROWS_WITH_AS(
      static_cast<void>(rdl::ssv_tail(n, d, Complex(0, 0), rdl::ShiftMode::CustomZ,
                                      1, rng, &deg)),
      doctest::Contains("degeneracy"), rdl::Error);

  Eigen::MatrixXcd lopsided = Eigen::MatrixXcd::Zero(n, n);
  lopsided(0, 0) = 1.0;
  CHECK_THROWS_WITH_AS(
      static_cast<void>(rdl::ssv_tail(n, d, Complex(0, 0), rdl::ShiftMode::CustomZ,
                                      1, rng, &lopsided)),
      doctest::Contains("row-sum"), rdl::Error);

  // Mean-zero projector scaled far above n^gamma.
  Eigen::MatrixXcd big =
      100.0 * (Eigen::MatrixXcd::Identity(n, n) -
               Eigen::MatrixXcd::Constant(n, n, 1.0 / static_cast<double>(n)));
  CHECK_THROWS_WITH_AS(
      static_cast<void>(rdl::ssv_tail(n, d, Complex(0, 0), rdl::ShiftMode::CustomZ,
                                      1, rng, &big, 0.1)),
      doctest::Contains("norm hypothesis"), rdl::Error);

  CHECK_THROWS_AS(static_cast<void>(rdl::ssv_tail(n, d, Complex(0, 0),
                                                  rdl::ShiftMode::CustomZ, 1, rng)),
                  rdl::Error);  // custom mode without a matrix
}

TEST_CASE("gaussian order statistics avoid the origin") {
  RngStream rng(79, 0);
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(40, 40);
  rdl::ComparisonReport rep = rdl::gaussian_order_stats(40, M, 7, 4, rng);
  CHECK(rep.pass);
  CHECK(rep.details.at("violations_at_0.01").get<long long>() == 0);
  CHECK(rep.details.at("c_values").size() == 4);
  CHECK(rep.fitted_constant >= 0.01);
  Eigen::MatrixXcd wrong = Eigen::MatrixXcd::Zero(3, 3);
  CHECK_THROWS_AS(
      static_cast<void>(rdl::gaussian_order_stats(40, wrong, 7, 4, rng)),
      rdl::Error);
}

TEST_CASE("log integrability probe bounds the second moment") {
  RngStream rng(80, 0);
  rdl::ComparisonReport rep =
      rdl::uniform_integrability_probe(30, 3, Complex(1, 1), 3.0, 2, rng);
  CHECK(rep.pass);
  CHECK(rep.bound == doctest::Approx(4.0 * 3.0));
  double max_sm = rep.estimates.at("second_moment_max").get<double>();
  CHECK(max_sm <= rep.bound);
  CHECK(rep.details.at("exceedance").size() == 9);  // 3 levels x 3 thresholds
  CHECK_THROWS_AS(static_cast<void>(rdl::uniform_integrability_probe(
                      30, 3, Complex(1, 1), 0.0, 2, rng)),
                  rdl::Error);
}

TEST_CASE("pooled singular value measures of the two ensembles stay close") {
  RngStream rng(81, 0);
  rdl::ComparisonReport rep =
      rdl::ensemble_agreement(40, 5, Complex(0, 0), 4, rng, 0.5);
  CHECK(rep.pass);
  CHECK(rep.estimates.at("pool_size").get<long long>() == 160);
  double ks = rep.estimates.at("ks_distance").get<double>();
  CHECK(ks > 0.0);
  CHECK(ks <= 1.0);
  CHECK(rep.fitted_constant == doctest::Approx(ks));
}

TEST_CASE("comparison reports serialize with their reproducibility stamp") {
  RngStream rng(82, 3);
  rdl::ComparisonReport rep =
      rdl::compare_stieltjes(30, 3, Complex(0, 0), Complex(0, 1), 2, rng);
  rdl::Json j = rep.to_json();
  CHECK(j.at("statistic").get<std::string>() == "stieltjes-comparison");
  CHECK(j.at("samples").get<long long>() == 2);
  CHECK(j.at("master_seed").get<std::uint64_t>() == 82);
  CHECK(j.at("stream_index").get<std::uint64_t>() == 3);
  CHECK(j.contains("pass"));
  CHECK(j.contains("bound"));
  CHECK(j.contains("fitted_constant"));
  CHECK(j.contains("estimates"));
  CHECK(j.contains("details"));
}
