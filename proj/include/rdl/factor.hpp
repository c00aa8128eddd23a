#pragma once

#include <Eigen/Dense>
#include <optional>

#include "rdl/digraph.hpp"
#include "rdl/io.hpp"
#include "rdl/rng.hpp"

namespace rdl {

// Outcome of a d-regular-factor query on a 0-1 matrix B. When a factor exists,
// its support is contained in the support of B and it satisfies every
// RegularDigraph invariant. When none exists, `certificate` holds a column set
// T violating the counting condition X_T >= d|T|.
struct FactorResult {
  bool exists = false;
  std::optional<RegularDigraph> factor;
  std::optional<IndexSet> certificate;
};

// X_T = sum_i min(d, deg_T(i)), where deg_T(i) counts the support of row i
// inside the column set T. A d-regular factor exists if and only if
// X_T >= d|T| for every T.
long long ore_ryser_statistic(const Eigen::MatrixXd& B, int d, const IndexSet& T);

// Checks the counting condition over all 2^n column subsets (n <= 20,
// TooLarge otherwise); returns the lexicographically first violating subset as
// certificate, or exists = true. Existence only — no factor is constructed.
FactorResult ore_ryser_exhaustive(const Eigen::MatrixXd& B, int d);

// Max-flow construction: source -> row i (capacity d), row i -> col j
// (capacity 1 on the support of B), col j -> sink (capacity d). A factor
// exists iff the max flow saturates at n*d; the saturated middle edges are the
// factor. Otherwise the certificate is the set of sink-side columns of the
// min-cut, re-checked against the counting condition. The augmenting order is
// fixed, so the returned factor is a deterministic function of B and d.
FactorResult find_regular_factor(const Eigen::MatrixXd& B, int d);

// Monte Carlo estimate of P(Bernoulli(p) matrix contains a d-regular factor)
// at d = (1-delta) p n, reported against 1 - exp(-c delta^2 p n) with fitted
// c. When every sample succeeds the fitted c is only a lower confidence bound
// (rule of three).
struct FactorProbabilityReport {
  int n = 0;
  double p = 0.0;
  double delta = 0.0;
  int d = 0;
  long long samples = 0;
  long long successes = 0;
  double estimate = 0.0;
  double stderr_of_mean = 0.0;
  double fitted_c = 0.0;
  bool fitted_is_lower_bound = false;
  bool pass = false;
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;

  Json to_json() const;
};

FactorProbabilityReport factor_probability(int n, double p, double delta,
                                           long long samples, RngStream& rng,
                                           double pass_level = 0.99);

// |A_{n,d}| p^{nd} (1-p)^{n^2 - nd}: the exact probability that an iid
// Bernoulli(p) matrix is itself d-regular. Enumerates A_{n,d}, so n is capped.
double membership_probability_exact(int n, int d, double p, int cap_n = 6);

}  // namespace rdl
