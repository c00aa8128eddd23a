#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "rdl/errors.hpp"
#include "rdl/rng.hpp"
#include "rdl/spectral.hpp"

using Complex = std::complex<double>;
using rdl::EmpiricalMeasure;

TEST_CASE("empirical measures validate weights and support") {
  EmpiricalMeasure u = EmpiricalMeasure::uniform({Complex(1, 0), Complex(2, 0)});
  CHECK(u.size() == 2);
  CHECK(u.weights[0] == doctest::Approx(0.5));
  CHECK(u.real_supported());
  EmpiricalMeasure c = EmpiricalMeasure::uniform({Complex(0, 1)});
  CHECK(!c.real_supported());
  CHECK_THROWS_WITH_AS(
      static_cast<void>(EmpiricalMeasure::weighted({Complex(0, 0)}, {0.5})),
      doctest::Contains("BadWeights"), rdl::Error);
  CHECK_THROWS_AS(
      static_cast<void>(EmpiricalMeasure::weighted({Complex(0, 0)}, {-1.0, 2.0})),
      rdl::Error);
}

TEST_CASE("empirical cdf is right-continuous") {
  EmpiricalMeasure mu = EmpiricalMeasure::uniform_real({0.0, 1.0});
  CHECK(rdl::empirical_cdf(mu, -0.5) == doctest::Approx(0.0));
  CHECK(rdl::empirical_cdf(mu, 0.0) == doctest::Approx(0.5));
  CHECK(rdl::empirical_cdf(mu, 0.5) == doctest::Approx(0.5));
  CHECK(rdl::empirical_cdf(mu, 1.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(static_cast<void>(rdl::empirical_cdf(
                      EmpiricalMeasure::uniform({Complex(0, 1)}), 0.0)),
                  rdl::Error);
}

TEST_CASE("eigenvalues of simple matrices") {
  Eigen::MatrixXd D = Eigen::Vector3d(1, 2, 3).asDiagonal();
  EmpiricalMeasure mu = rdl::eigenvalues(D);
  REQUIRE(mu.size() == 3);
  std::vector<double> re;
  for (auto a : mu.atoms) {
    CHECK(std::abs(a.imag()) <= 1e-12);
    re.push_back(a.real());
  }
  std::sort(re.begin(), re.end());
  CHECK(re[0] == doctest::Approx(1.0));
  CHECK(re[2] == doctest::Approx(3.0));

  // The rotation by 90 degrees has eigenvalues +-i.
  Eigen::MatrixXd R(2, 2);
  R << 0, -1, 1, 0;
  EmpiricalMeasure rot = rdl::eigenvalues(R);
  double best = 1e9;
  for (auto a : rot.atoms) best = std::min(best, std::abs(a - Complex(0, 1)));
  CHECK(best <= 1e-12);
}

TEST_CASE("hermitian eigenvalues come back ascending") {
  Eigen::MatrixXcd H(2, 2);
  H << 0, 1, 1, 0;
  Eigen::VectorXd e = rdl::hermitian_eigenvalues(H);
  CHECK(e[0] == doctest::Approx(-1.0));
  CHECK(e[1] == doctest::Approx(1.0));
}

TEST_CASE("singular values are descending with a uniform measure") {
  Eigen::MatrixXd D = Eigen::Vector3d(3, 4, 0).asDiagonal();
  rdl::SingularValues sv = rdl::singular_values(D);
  CHECK(sv.values[0] == doctest::Approx(4.0));
  CHECK(sv.values[1] == doctest::Approx(3.0));
  CHECK(sv.values[2] == doctest::Approx(0.0));
  CHECK(sv.measure.real_supported());
  CHECK(rdl::smallest_singular_value(D) == doctest::Approx(0.0));
  CHECK(rdl::smallest_singular_value(Eigen::MatrixXd(
            Eigen::MatrixXd::Identity(4, 4))) == doctest::Approx(1.0));
}

TEST_CASE("hermitization is exactly hermitian with the documented blocks") {
  rdl::RngStream rng(40, 0);
  const int n = 6;
  Eigen::MatrixXcd M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = rng.next_complex_normal();
  Complex z(0.7, -0.3);
  rdl::HermitizationView H = rdl::hermitize(M, z);
  CHECK(H.n == n);
  CHECK(H.matrix.rows() == 2 * n);
  CHECK((H.matrix - H.matrix.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  Eigen::MatrixXcd expect =
      M / std::sqrt(static_cast<double>(n)) - z * Eigen::MatrixXcd::Identity(n, n);
  CHECK((H.matrix.topRightCorner(n, n) - expect).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK(H.matrix.topLeftCorner(n, n).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("stieltjes transform of the zero matrix is analytic") {
  // All singular values vanish, so g(w) = -1/w.
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(4, 4);
  for (Complex w : {Complex(0, 1), Complex(0.3, 0.8), Complex(-1, 2)}) {
    Complex expect = -1.0 / w;
    CHECK(std::abs(rdl::stieltjes_g(M, Complex(0, 0), w, rdl::StieltjesRoute::Sv) -
                   expect) <= 1e-12);
    CHECK(std::abs(rdl::stieltjes_g(M, Complex(0, 0), w, rdl::StieltjesRoute::Direct) -
                   expect) <= 1e-10);
  }
  CHECK_THROWS_AS(static_cast<void>(rdl::stieltjes_g(
                      M, Complex(0, 0), Complex(1, 0), rdl::StieltjesRoute::Sv)),
                  rdl::Error);  // needs Im w > 0
}

TEST_CASE("both stieltjes routes agree on random input") {
  rdl::RngStream rng(41, 0);
  Eigen::MatrixXcd M(10, 10);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) M(i, j) = rng.next_complex_normal();
  for (Complex w : {Complex(0, 1), Complex(0.5, 0.2)}) {
    Complex a = rdl::stieltjes_g(M, Complex(1, 1), w, rdl::StieltjesRoute::Sv);
    Complex b = rdl::stieltjes_g(M, Complex(1, 1), w, rdl::StieltjesRoute::Direct);
    CHECK(std::abs(a - b) <= 1e-9);
  }
}

TEST_CASE("resolvent norm equals the inverse spectral gap") {
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(3, 3);
  rdl::HermitizationView H = rdl::hermitize(M, Complex(0, 0));
  // H = 0: the resolvent at w has norm 1/|w|.
  CHECK(rdl::resolvent_norm(H, Complex(0, 2)) == doctest::Approx(0.5));
  CHECK(rdl::resolvent_norm(H, Complex(1, 1)) ==
        doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("resolvent derivative identity at small scale") {
  rdl::RngStream rng(42, 0);
  Eigen::MatrixXcd M(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) M(i, j) = rng.next_complex_normal();
  rdl::ResolventDerivativeReport rep =
      rdl::resolvent_derivative_check(M, Complex(1, 1), Complex(0, 1), 2, 4, 1e-6);
  CHECK(rep.max_deviation <= 1e-4);
  CHECK(rep.i == 2);
  CHECK(rep.j == 4);
}

TEST_CASE("log potential handles atoms and generic points") {
  EmpiricalMeasure mu = EmpiricalMeasure::uniform({Complex(2, 0)});
  CHECK(rdl::log_potential(mu, Complex(0, 0)) == doctest::Approx(-std::log(2.0)));
  CHECK(rdl::log_potential(mu, Complex(1, 0)) == doctest::Approx(0.0));
  CHECK(rdl::log_potential(mu, Complex(2, 0)) ==
        std::numeric_limits<double>::infinity());
}

TEST_CASE("radial laws evaluate to hand values") {
  CHECK(rdl::circular_radial_cdf(0.5) == doctest::Approx(0.25));
  CHECK(rdl::circular_radial_cdf(1.0) == doctest::Approx(1.0));
  CHECK(rdl::circular_radial_cdf(2.0) == doctest::Approx(1.0));
  // (d-1) r^2 / (d^2 - r^2) at d = 3, r = 1: 2/8.
  CHECK(rdl::km_radial_cdf(1.0, 3) == doctest::Approx(0.25));
  CHECK(rdl::km_radial_cdf(std::sqrt(3.0), 3) == doctest::Approx(1.0));
  CHECK(rdl::km_radial_cdf(10.0, 3) == doctest::Approx(1.0));
  // Density at the origin: d^2 (d-1) / (pi d^4) = (d-1)/(pi d^2).
  CHECK(rdl::km_density(Complex(0, 0), 3) ==
        doctest::Approx(2.0 / (9.0 * 3.14159265358979324)).epsilon(1e-10));
  CHECK(rdl::km_density(Complex(2, 0), 3) == doctest::Approx(0.0));
  CHECK_THROWS_AS(static_cast<void>(rdl::km_density(Complex(0, 0), 1)), rdl::Error);
}

TEST_CASE("KS distances between measures and CDFs") {
  EmpiricalMeasure mu = EmpiricalMeasure::uniform_real({0.25, 0.75});
  auto uniform = [](double x) { return x < 0 ? 0.0 : (x > 1 ? 1.0 : x); };
  CHECK(rdl::ks_distance(mu, uniform) == doctest::Approx(0.25));
  EmpiricalMeasure nu = EmpiricalMeasure::uniform_real({0.25, 0.9});
  CHECK(rdl::ks_distance(mu, nu) == doctest::Approx(0.5));
}

TEST_CASE("excluding the largest modulus renormalizes the rest") {
  EmpiricalMeasure mu =
      EmpiricalMeasure::uniform({Complex(1, 0), Complex(-5, 0), Complex(2, 0)});
  EmpiricalMeasure bulk = rdl::exclude_largest_modulus(mu);
  REQUIRE(bulk.size() == 2);
  double total = 0;
  for (int i = 0; i < bulk.size(); ++i) {
    CHECK(std::abs(bulk.atoms[i]) < 5.0);
    total += bulk.weights[i];
  }
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("multiset mismatch counting respects tolerance") {
  CHECK(rdl::multiset_mismatch_count({Complex(1, 0), Complex(2, 0)},
                                     {Complex(2, 0), Complex(1, 0)}, 1e-9) == 0);
  CHECK(rdl::multiset_mismatch_count({Complex(1, 0), Complex(2, 0)},
                                     {Complex(1, 0), Complex(9, 0)}, 1e-9) == 1);
  CHECK(rdl::multiset_mismatch_count({Complex(1 + 1e-8, 0)}, {Complex(1, 0)},
                                     1e-6) == 0);
  CHECK(rdl::multiset_mismatch_count({Complex(1 + 1e-8, 0)}, {Complex(1, 0)},
                                     1e-10) == 1);
}
