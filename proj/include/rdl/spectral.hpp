#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace rdl {

// Atomic measure with positive weights summing to 1.
struct EmpiricalMeasure {
  std::vector<std::complex<double>> atoms;
  std::vector<double> weights;

  int size() const { return static_cast<int>(atoms.size()); }
  bool real_supported(double tol = 1e-12) const;

  static EmpiricalMeasure uniform(std::vector<std::complex<double>> locations);
  static EmpiricalMeasure uniform_real(const std::vector<double>& locations);
  static EmpiricalMeasure weighted(std::vector<std::complex<double>> locations,
                                   std::vector<double> w);
};

// Right-continuous CDF of a real-supported measure.
double empirical_cdf(const EmpiricalMeasure& mu, double x);

// Singular value distribution plus the non-increasing side list s_1 >= ... >= s_n.
struct SingularValues {
  EmpiricalMeasure measure;
  Eigen::VectorXd values;
};

// 2n x 2n Hermitian block matrix with off-diagonal blocks M/sqrt(n) - z and
// its conjugate transpose; constructed exactly Hermitian, never symmetrized.
struct HermitizationView {
  Eigen::MatrixXcd base;
  std::complex<double> z;
  Eigen::MatrixXcd matrix;
  int n = 0;
};

enum class StieltjesRoute { Direct, Sv };

struct ResolventDerivativeReport {
  int i = 0, j = 0;
  double h = 0.0;
  double max_deviation = 0.0;
};

EmpiricalMeasure eigenvalues(const Eigen::MatrixXd& M);
EmpiricalMeasure eigenvalues(const Eigen::MatrixXcd& M);

// Eigenvalues of a Hermitian matrix, ascending.
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& H);

SingularValues singular_values(const Eigen::MatrixXd& M);
SingularValues singular_values(const Eigen::MatrixXcd& M);

double smallest_singular_value(const Eigen::MatrixXd& M);
double smallest_singular_value(const Eigen::MatrixXcd& M);

HermitizationView hermitize(const Eigen::MatrixXcd& M, std::complex<double> z);
HermitizationView hermitize(const Eigen::MatrixXd& M, std::complex<double> z);

// Normalized resolvent trace (1/2n) tr (H_z(M) - w)^{-1}.  The direct route
// inverts and validates the residual (IllConditioned on failure); the sv
// route evaluates (1/n) sum_i w/(s_i^2 - w^2) from singular values.
std::complex<double> stieltjes_g(const Eigen::MatrixXcd& M, std::complex<double> z,
                                 std::complex<double> w, StieltjesRoute route);
std::complex<double> stieltjes_g(const Eigen::MatrixXd& M, std::complex<double> z,
                                 std::complex<double> w, StieltjesRoute route);
std::complex<double> g_from_singular_values(const Eigen::VectorXd& s,
                                            std::complex<double> w);

// Operator norm of (H - w)^{-1}, exact through the Hermitian eigenvalues.
double resolvent_norm(const HermitizationView& H, std::complex<double> w);

// Finite difference of the resolvent in one entry of M against -R (dH) R.
ResolventDerivativeReport resolvent_derivative_check(const Eigen::MatrixXcd& M,
                                                     std::complex<double> z,
                                                     std::complex<double> w, int i,
                                                     int j, double h);

// -sum w_i log|atom_i - z|; +infinity when z hits an atom.
double log_potential(const EmpiricalMeasure& mu, std::complex<double> z);

double circular_radial_cdf(double r);
double km_density(std::complex<double> z, int d);
double km_radial_cdf(double r, int d);

double ks_distance(const EmpiricalMeasure& a, const std::function<double(double)>& cdf);
double ks_distance(const EmpiricalMeasure& a, const EmpiricalMeasure& b);

// Drop the single largest-modulus atom and renormalize.
EmpiricalMeasure exclude_largest_modulus(const EmpiricalMeasure& mu);

// Number of elements of `a` with no partner in `b` within `tol` under greedy
// nearest matching; zero means the multisets agree.
int multiset_mismatch_count(std::vector<std::complex<double>> a,
                            std::vector<std::complex<double>> b, double tol);

}  // namespace rdl
