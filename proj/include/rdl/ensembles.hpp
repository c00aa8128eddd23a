#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "rdl/digraph.hpp"
#include "rdl/io.hpp"
#include "rdl/rng.hpp"

namespace rdl {

enum class EnsembleKind { Regular, Bernoulli, Gaussian };

std::string to_string(EnsembleKind kind);

// One of the three matrix ensembles under comparison: uniform d-regular 0-1
// matrices, iid Bernoulli(d/n) 0-1 matrices, or iid real standard Gaussians.
// The regular ensemble requires 1 <= d <= n/2 (larger degrees reduce to this
// range by complementation); Bernoulli only needs p = d/n in (0, 1).
struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::Regular;
  int n = 0;
  int d = 0;  // ignored for Gaussian

  double p() const { return static_cast<double>(d) / n; }
  Json to_json() const;
};

void validate(const EnsembleSpec& spec);

// Per-sample stream used by every Monte Carlo loop in this module: sample s of
// a report seeded with (master, index) draws from stream (index << 20) + s + 1.
// Public so callers can re-derive exactly the samples a report consumed.
RngStream ensemble_substream(const RngStream& parent, long long sample);

// One raw draw: regular uses the switching chain with the default step count,
// Bernoulli fills entries iid with parameter d/n, Gaussian with N(0,1).
Eigen::MatrixXd draw_matrix(const EnsembleSpec& spec, RngStream& rng);

// (A - p 11^T) / sqrt(p(1-p)) with p = d/n: centered, unit-variance entries.
// Requires 1 <= d <= n-1 (DegenerateScale otherwise).
Eigen::MatrixXd center_Y(const RegularDigraph& A);

// (B - p 11^T) / sqrt(p(1-p)) for a 0-1 matrix B; entries are iid mean 0,
// variance 1 when B is Bernoulli(p). Requires p in (0,1) (BadP) and a 0-1
// matrix.
Eigen::MatrixXd center_X(const Eigen::MatrixXd& B, double p);

// Outcome of one ensemble-comparison experiment. `estimates` holds the
// per-ensemble statistics with Monte Carlo standard errors, `bound` the
// theoretical envelope being tested, `fitted_constant` the smallest constant
// that would make the envelope tight on this data. Seeds and sample counts are
// embedded so every report reproduces bit-identically.
struct ComparisonReport {
  std::string statistic;
  Json estimates;
  double bound = 0.0;
  double fitted_constant = 0.0;
  bool pass = false;
  long long samples = 0;
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;
  Json details;

  Json to_json() const;
};

// |E g_{z,w}(X) - E g_{z,w}(G)| for centered Bernoulli X vs Gaussian G,
// against the envelope C d^{-1/2} (Im w)^{-4} (1 + (n Im w)^{-2}). The report
// passes when the fitted constant stays below `ceiling`.
ComparisonReport compare_stieltjes(int n, int d, std::complex<double> z,
                                   std::complex<double> w, long long samples,
                                   RngStream& rng, double ceiling = 10.0);

// Compactly supported piecewise-linear test function: linear interpolation
// through (knots, values), zero outside [knots.front(), knots.back()]. The
// declared Lipschitz constant must dominate every slope.
struct PiecewiseLinear {
  std::vector<double> knots;
  std::vector<double> values;
  double lipschitz = 0.0;

  double evaluate(double x) const;
};

void validate(const PiecewiseLinear& f);

PiecewiseLinear tent_function(double center, double half_width, double height);

// Linear eigenvalue statistics of the Hermitized shift: integral of f against
// the symmetrized singular value measure of Y/sqrt(n) - z per regular sample,
// vs the Bernoulli-ensemble mean of the same statistic. Reports deviation
// quantiles; passes when the 95% quantile is at most `tol`.
ComparisonReport compare_linear_stat(int n, int d, std::complex<double> z,
                                     const PiecewiseLinear& f, long long samples,
                                     RngStream& rng, double tol = 0.02);

// Small-singular-value mass profile eta -> nu_{Y/sqrt(n) - z}([0, eta]) per
// regular sample, against the envelope C (eta + d^{-1/48}) with asserted
// C = 10. Passes when at least 95% of samples respect the envelope on the
// whole grid.
ComparisonReport wegner_profile(int n, int d, std::complex<double> z,
                                const std::vector<double>& etas, long long samples,
                                RngStream& rng, double ceiling = 10.0);

enum class ShiftMode { ScalarShift, CustomZ };

// Smallest singular value of A + Z across regular samples. ScalarShift uses
// Z = -z sqrt(d(1-d/n)) I, so s_n(A+Z) = sqrt(d(1-d/n)) s_n(normalized(A) - z).
// CustomZ accepts any shift satisfying: Z1 = zeta 1, Z*1 = conj(zeta) 1,
// operator norm at most n^gamma on the orthocomplement of 1, and
// |d + zeta| >= n^{-10}; violations raise InvalidZ naming the failed
// hypothesis. Reports the fraction of samples below n^{-Gamma} for
// Gamma in {1, 2, 4}; passes when no sample falls below n^{-1}.
ComparisonReport ssv_tail(int n, int d, std::complex<double> z, ShiftMode mode,
                          long long samples, RngStream& rng,
                          const Eigen::MatrixXcd* custom_z = nullptr,
                          double gamma = 1.0);

// Order statistics of Gaussian perturbations: for each sample G, checks
// s_{n-j}(G/sqrt(n) + M) >= c j / n for all k <= j <= n-1. Reports the largest
// c passing in all but at most one sample, and the violation count at
// c = 0.01; passes when that count is zero.
ComparisonReport gaussian_order_stats(int n, const Eigen::MatrixXcd& M, int k,
                                      long long samples, RngStream& rng);

// Tail mass of log s under nu_{normalized(A) - z}: per-sample integral of
// |log s| over {|log s| > T'} for T' in {T/2, T, 2T}, with exceedance counts
// at thresholds {0.01, 0.1, 1}. Also checks the second-moment bound
// int s^2 dnu <= 4 (1 + |z|^2) on every sample. Passes when the second-moment
// bound always holds and the integral at level T exceeds 0.1 in no sample.
ComparisonReport uniform_integrability_probe(int n, int d, std::complex<double> z,
                                             double T, long long samples,
                                             RngStream& rng);

// Kolmogorov distance between the pooled singular value measures of
// Y/sqrt(n) - z over regular samples and G/sqrt(n) - z over Gaussian samples.
// Passes at `tol` (weak convergence of the two ensembles).
ComparisonReport ensemble_agreement(int n, int d, std::complex<double> z,
                                    long long samples, RngStream& rng,
                                    double tol = 0.05);

// Kolmogorov distance between the singular value measures of Y/sqrt(n) - z and
// normalized(A) - z for one regular sample. The two matrices differ by a
// rank-one multiple of 11^T, so interlacing forces the distance <= 1/n.
double interlacing_gap(const RegularDigraph& A, std::complex<double> z);

}  // namespace rdl
