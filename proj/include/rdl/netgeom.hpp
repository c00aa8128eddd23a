#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rdl/digraph.hpp"
#include "rdl/rng.hpp"

namespace rdl {

// Vector on (or off) the unit sphere, optionally constrained to the
// mean-zero hyperplane.  Tags are validated at construction (1e-12).
struct UnitVector {
  Eigen::VectorXcd v;
  bool unit = false;
  bool mean_zero = false;

  int n() const { return static_cast<int>(v.size()); }

  static UnitVector general(Eigen::VectorXcd x);
  static UnitVector unit_checked(Eigen::VectorXcd x);             // NotUnit
  static UnitVector unit_mean_zero_checked(Eigen::VectorXcd x);   // + NotMeanZero
};

// Project out the mean component and normalize.  DegenerateVector when the
// projection is numerically zero.
UnitVector project_normalize_mean_zero(const Eigen::VectorXcd& x);

UnitVector random_unit(int n, RngStream& rng);
UnitVector random_unit_mean_zero(int n, RngStream& rng);

// One-sided flatness evidence: u is close to (sparse + constant) when member.
enum class FlatnessMethod { Alternating, ConcentrationImplied, NetWitness };

struct FlatnessCertificate {
  bool member = false;
  std::complex<double> lambda{0.0, 0.0};
  IndexSet support;  // size <= m
  double residual = 0.0;
  FlatnessMethod method = FlatnessMethod::Alternating;
};

// {j : |v_j - lambda/sqrt(n)| < rho/sqrt(n)}, strict inequality.
IndexSet levy_set(const UnitVector& v, std::complex<double> lambda, double rho);

enum class ConcMode { Exact, Fast };

struct ConcentrationPoint {
  double q = 0.0;                       // captured fraction
  std::complex<double> center{0, 0};    // optimal center in coordinate space
  int count = 0;
};

// Levy concentration function Q_v(rho) = sup_lambda |E_v(lambda,rho)|/n.
// Exact mode enumerates point centers and pairwise circle intersections at
// the closed-disk optimum shrunk by 1e-12; fast mode uses point centers only.
double concentration_function(const UnitVector& v, double rho, ConcMode mode);
ConcentrationPoint concentration_argmax(const UnitVector& v, double rho, ConcMode mode);

// Best (lambda, support) found by alternating minimization with multistart,
// with a second sufficient route via concentration when Q_u(rho) >= 1 - m/n.
FlatnessCertificate flatness_certificate(const UnitVector& u, int m, double rho);

// Certificate induced by a fixed support: lambda = mean off the support.
FlatnessCertificate certificate_for_support(const UnitVector& u, const IndexSet& support,
                                            FlatnessMethod method);

// Deterministic net for the mean-zero (m,rho)-flat unit vectors: per support,
// an axis-aligned grid covering the radius-2 ball, projected and normalized.
// Points are materialized only when the exact cardinality is small; for_each
// replays the full enumeration either way.
struct FlatNet {
  int n = 0;
  int m = 0;
  double rho = 0.0;
  double spacing = 0.0;        // grid step per real coordinate
  double radius = 0.0;         // enumeration ball radius 2 + rho/6
  long long lattice_budget = 0;  // max allowed sum of squared lattice coords
  long long cardinality = 0;
  bool materialized = false;
  std::vector<UnitVector> points;

  void for_each(const std::function<void(const Eigen::VectorXcd&)>& fn) const;
};

FlatNet build_flat_net(int n, int m, double rho, double feasibility_cap = 1e7,
                       long long materialize_cap = 2000000);

// The net point nearest to the canonical sparse approximation of u on the
// given support (grid rounding); used by coverage checks.
Eigen::VectorXcd net_candidate_near(const FlatNet& net, const Eigen::VectorXcd& u,
                                    const IndexSet& support);

// Two well-separated level sets of a non-flat vector, from the dyadic scan
// of the concentration function, plus the dominant angular sector of the
// outer set.  lambda0 follows the levy_set convention (center * sqrt(n)).
struct BimodalSets {
  IndexSet J1;
  IndexSet J2;
  IndexSet J1_prime;
  int k0 = 0;
  std::complex<double> lambda0{0, 0};
  double weak_gap = 0.0;    // guaranteed min |u_j1 - u_j2| over J1 x J2
  double strong_gap = 0.0;  // guaranteed gap for equal-size averages
};

BimodalSets bimodal_sets(const UnitVector& u, int m, double rho);

// Monte Carlo for P(|center + sum xi_j v_j| <= r) over Rademacher signs.
struct SmallBallReport {
  double estimate = 0.0;
  double bound_shape = 0.0;  // (r + max_j |v_j|) / ||v||
  double fitted_c = 0.0;     // estimate / bound_shape
  long long trials = 0;
};

SmallBallReport small_ball_mc(const std::vector<std::complex<double>>& v, double r,
                              std::complex<double> center, long long trials,
                              RngStream& rng);
double small_ball_exact(const std::vector<std::complex<double>>& v, double r,
                        std::complex<double> center);

// Anti-concentration tensorization harness over iid two-point laws.
struct TensorizationReport {
  double p0 = 0.0;
  double eps0 = 0.0;
  double c1 = 0.0;
  int n = 0;
  long long trials = 0;
  double estimate = 0.0;          // P(sum zeta_j^2 <= c1 eps0^2 n), simulated
  double exact = 0.0;             // same probability via the binomial tail
  std::vector<std::pair<int, double>> curve;  // (size, estimate) sub-sizes
  double decay_rate = 0.0;        // fitted slope of -log P vs n
};

TensorizationReport tensorization_check(double p0, double eps0, int n, long long trials,
                                        RngStream& rng, double c1 = 0.25);

// Harness sample of a mean-zero flat vector with margins tight enough that
// net coverage within rho is guaranteed; remembers the generating support.
struct FlatSample {
  UnitVector u;
  IndexSet support;
};

FlatSample random_flat_sample(int n, int m, double rho, RngStream& rng);

}  // namespace rdl
