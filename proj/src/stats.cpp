#include "rdl/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rdl/errors.hpp"

namespace rdl {

namespace {

// Series expansion of P(a,x), reliable for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a,x), reliable for x >= a + 1 (modified Lentz).
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_p(double a, double x) {
  require(a > 0.0 && x >= 0.0, "BadParams", "gamma_p needs a > 0, x >= 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
  require(a > 0.0 && x >= 0.0, "BadParams", "gamma_q needs a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chisq_upper_tail(double dof, double x) {
  require(dof > 0.0, "BadParams", "chisq_upper_tail needs dof > 0");
  if (x <= 0.0) return 1.0;
  return gamma_q(dof / 2.0, x / 2.0);
}

ChiSquareTest chisq_test(const std::vector<std::uint64_t>& observed,
                         const std::vector<double>& expected) {
  require(observed.size() == expected.size() && !observed.empty(), "BadParams",
          "chisq_test needs matching nonempty count vectors");
  ChiSquareTest out;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    require(expected[i] > 0.0, "BadParams", "chisq_test expected counts must be positive");
    double diff = static_cast<double>(observed[i]) - expected[i];
    out.statistic += diff * diff / expected[i];
  }
  out.dof = static_cast<double>(observed.size() - 1);
  out.p_value = out.dof > 0.0 ? chisq_upper_tail(out.dof, out.statistic) : 1.0;
  return out;
}

double binomial_upper_tail(int n, double p, int k) {
  require(n >= 0 && p >= 0.0 && p <= 1.0, "BadParams", "binomial_upper_tail domain");
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  // Sum the side with fewer terms, in log space for stability.
  auto log_pmf = [&](int j) {
    return std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0) +
           j * std::log(p) + (n - j) * std::log1p(-p);
  };
  bool upper_shorter = (n - k) <= k;
  double sum = 0.0;
  if (upper_shorter) {
    for (int j = k; j <= n; ++j) sum += std::exp(log_pmf(j));
    return std::min(1.0, sum);
  }
  for (int j = 0; j < k; ++j) sum += std::exp(log_pmf(j));
  return std::max(0.0, 1.0 - sum);
}

MeanStderr mean_stderr(const std::vector<double>& xs) {
  MeanStderr out;
  out.count = static_cast<int>(xs.size());
  if (xs.empty()) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / xs.size();
  if (xs.size() < 2) return out;
  double ss = 0.0;
  for (double x : xs) ss += (x - out.mean) * (x - out.mean);
  out.stderr_of_mean = std::sqrt(ss / (xs.size() - 1.0) / xs.size());
  return out;
}

double ks_vs_cdf(std::vector<double> sample, const std::function<double(double)>& cdf) {
  require(!sample.empty(), "BadParams", "ks_vs_cdf needs a nonempty sample");
  std::sort(sample.begin(), sample.end());
  double n = static_cast<double>(sample.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    double f = cdf(sample[i]);
    ks = std::max(ks, std::fabs((i + 1) / n - f));
    ks = std::max(ks, std::fabs(i / n - f));
  }
  return ks;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b,
                     double tie_tol) {
  require(!a.empty() && !b.empty(), "BadParams", "ks_two_sample needs nonempty samples");
  require(tie_tol >= 0.0, "BadParams", "tie_tol must be non-negative");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double ks = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    double x = std::min(a[i], b[j]) + tie_tol;
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    ks = std::max(ks, std::fabs(static_cast<double>(i) / a.size() -
                                static_cast<double>(j) / b.size()));
  }
  return ks;
}

}  // namespace rdl
