#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace rdl {

// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Upper tail of the chi-square distribution with `dof` degrees of freedom:
// P(X >= x).
double chisq_upper_tail(double dof, double x);

// Pearson statistic and p-value for observed counts against given expected
// counts (expected need not be uniform; dof = #cells - 1).
struct ChiSquareTest {
  double statistic = 0.0;
  double dof = 0.0;
  double p_value = 1.0;
};
ChiSquareTest chisq_test(const std::vector<std::uint64_t>& observed,
                         const std::vector<double>& expected);

// P(Bin(n, p) >= k), exact, summed in the shorter direction.
double binomial_upper_tail(int n, double p, int k);

struct MeanStderr {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
  int count = 0;
};
MeanStderr mean_stderr(const std::vector<double>& xs);

// Kolmogorov-Smirnov distance between the empirical CDF of `sample` and a
// reference CDF, exact over jump points (checks both sides of each atom).
double ks_vs_cdf(std::vector<double> sample, const std::function<double(double)>& cdf);

// KS distance between two empirical CDFs given as sorted-or-not atom lists
// with equal weights within each list. Values within `tie_tol` of a common
// event point count as one atom location: pass a positive tolerance when the
// lists share values computed by independent floating-point routes, where
// rounding would otherwise turn an exact tie into a phantom 1/n step.
double ks_two_sample(std::vector<double> a, std::vector<double> b,
                     double tie_tol = 0.0);

}  // namespace rdl
