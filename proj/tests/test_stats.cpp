#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "rdl/errors.hpp"
#include "rdl/stats.hpp"

TEST_CASE("regularized gamma functions complement each other") {
  for (double a : {0.5, 1.0, 2.5, 10.0}) {
    for (double x : {0.1, 1.0, 5.0, 20.0}) {
      CHECK(rdl::gamma_p(a, x) + rdl::gamma_q(a, x) == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(rdl::gamma_p(a, x) >= 0.0);
      CHECK(rdl::gamma_p(a, x) <= 1.0);
    }
  }
}

TEST_CASE("chi-square upper tail matches closed forms") {
  // dof 2: the tail is exp(-x/2).
  CHECK(rdl::chisq_upper_tail(2.0, 2) == doctest::Approx(std::exp(-1.0)).epsilon(1e-10));
  CHECK(rdl::chisq_upper_tail(2.0, 4.60517018598809) == doctest::Approx(0.1).epsilon(1e-8));
  // dof 1: the classical 5% critical value.
  CHECK(rdl::chisq_upper_tail(1.0, 3.841458820694124) == doctest::Approx(0.05).epsilon(1e-6));
  CHECK(rdl::chisq_upper_tail(3.0, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("chisq_test on exact and skewed counts") {
  std::vector<std::uint64_t> even = {25, 25, 25, 25};
  std::vector<double> expected = {25, 25, 25, 25};
  rdl::ChiSquareTest t = rdl::chisq_test(even, expected);
  CHECK(t.statistic == doctest::Approx(0.0));
  CHECK(t.dof == 3);
  CHECK(t.p_value == doctest::Approx(1.0));

  std::vector<std::uint64_t> skewed = {90, 5, 3, 2};
  rdl::ChiSquareTest s = rdl::chisq_test(skewed, expected);
  CHECK(s.statistic > 100.0);
  CHECK(s.p_value < 1e-10);

  CHECK_THROWS_AS(rdl::chisq_test({1, 2}, {1.0}), rdl::Error);
}

TEST_CASE("binomial upper tail agrees with direct enumeration") {
  // P(Bin(5, 1/2) >= 3) = 16/32.
  CHECK(rdl::binomial_upper_tail(5, 0.5, 3) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rdl::binomial_upper_tail(5, 0.5, 0) == doctest::Approx(1.0));
  CHECK(rdl::binomial_upper_tail(5, 0.5, 6) == doctest::Approx(0.0));
  // P(Bin(3, 0.2) >= 2) = 3*0.04*0.8 + 0.008.
  CHECK(rdl::binomial_upper_tail(3, 0.2, 2) == doctest::Approx(0.104).epsilon(1e-10));
}

TEST_CASE("mean and standard error of the mean") {
  rdl::MeanStderr m = rdl::mean_stderr({1.0, 2.0, 3.0, 4.0});
  CHECK(m.count == 4);
  CHECK(m.mean == doctest::Approx(2.5));
  // Sample sd is sqrt(5/3); stderr divides by sqrt(4).
  CHECK(m.stderr_of_mean == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("KS distance against a CDF") {
  auto uniform = [](double x) { return x < 0 ? 0.0 : (x > 1 ? 1.0 : x); };
  CHECK(rdl::ks_vs_cdf({0.5}, uniform) == doctest::Approx(0.5));
  CHECK(rdl::ks_vs_cdf({0.25, 0.75}, uniform) == doctest::Approx(0.25));
  // The empirical CDF of {0, 1} vs uniform attains deviation 1 just left of 1.
  CHECK(rdl::ks_vs_cdf({0.0, 1.0}, uniform) == doctest::Approx(0.5));
}

TEST_CASE("two-sample KS distance") {
  CHECK(rdl::ks_two_sample({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}) == doctest::Approx(0.0));
  CHECK(rdl::ks_two_sample({0.0}, {1.0}) == doctest::Approx(1.0));
  CHECK(rdl::ks_two_sample({0.0, 2.0}, {1.0, 3.0}) == doctest::Approx(0.5));
}

TEST_CASE("two-sample KS tie tolerance merges rounding-level splits") {
  // Exact mode sees a step between 1 and 1 + 1e-12; the tolerant mode treats
  // the shared value as one event.
  CHECK(rdl::ks_two_sample({0.0, 1.0}, {0.0, 1.0 + 1e-12}) == doctest::Approx(0.5));
  CHECK(rdl::ks_two_sample({0.0, 1.0}, {0.0, 1.0 + 1e-12}, 1e-9) ==
        doctest::Approx(0.0));
  // Genuinely separated atoms are unaffected.
  CHECK(rdl::ks_two_sample({0.0, 2.0}, {1.0, 3.0}, 1e-9) == doctest::Approx(0.5));
  CHECK_THROWS_AS(static_cast<void>(rdl::ks_two_sample({0.0}, {1.0}, -1.0)),
                  rdl::Error);
}
