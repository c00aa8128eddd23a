#include "rdl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rdl/errors.hpp"

namespace rdl {

namespace {

void require_square(Eigen::Index rows, Eigen::Index cols) {
  require(rows == cols && rows >= 1, "BadParams", "matrix must be square and nonempty");
}

std::vector<std::complex<double>> to_atoms(const Eigen::VectorXcd& v) {
  return {v.data(), v.data() + v.size()};
}

}  // namespace

bool EmpiricalMeasure::real_supported(double tol) const {
  for (const auto& a : atoms)
    if (std::abs(a.imag()) > tol) return false;
  return true;
}

EmpiricalMeasure EmpiricalMeasure::uniform(std::vector<std::complex<double>> locations) {
  require(!locations.empty(), "BadParams", "measure needs at least one atom");
  EmpiricalMeasure mu;
  mu.weights.assign(locations.size(), 1.0 / static_cast<double>(locations.size()));
  mu.atoms = std::move(locations);
  return mu;
}

EmpiricalMeasure EmpiricalMeasure::uniform_real(const std::vector<double>& locations) {
  std::vector<std::complex<double>> c(locations.begin(), locations.end());
  return uniform(std::move(c));
}

EmpiricalMeasure EmpiricalMeasure::weighted(std::vector<std::complex<double>> locations,
                                            std::vector<double> w) {
  require(!locations.empty() && locations.size() == w.size(), "BadParams",
          "atom and weight lists must match and be nonempty");
  double total = 0;
  for (double x : w) {
    require(x > 0, "BadWeights", "weights must be positive");
    total += x;
  }
  require(std::abs(total - 1.0) <= 1e-12, "BadWeights", "weights must sum to 1");
  EmpiricalMeasure mu;
  mu.atoms = std::move(locations);
  mu.weights = std::move(w);
  return mu;
}

double empirical_cdf(const EmpiricalMeasure& mu, double x) {
  require(mu.real_supported(), "BadParams", "CDF queries need a real-supported measure");
  double cum = 0;
  for (std::size_t i = 0; i < mu.atoms.size(); ++i)
    if (mu.atoms[i].real() <= x) cum += mu.weights[i];
  return cum;
}

EmpiricalMeasure eigenvalues(const Eigen::MatrixXd& M) {
  require_square(M.rows(), M.cols());
  Eigen::EigenSolver<Eigen::MatrixXd> es(M, /*computeEigenvectors=*/false);
  require(es.info() == Eigen::Success, "NumericalFailure",
          "real eigensolver failed to converge");
  return EmpiricalMeasure::uniform(to_atoms(es.eigenvalues()));
}

EmpiricalMeasure eigenvalues(const Eigen::MatrixXcd& M) {
  require_square(M.rows(), M.cols());
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, /*computeEigenvectors=*/false);
  require(es.info() == Eigen::Success, "NumericalFailure",
          "complex eigensolver failed to converge");
  return EmpiricalMeasure::uniform(to_atoms(es.eigenvalues()));
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& H) {
  require_square(H.rows(), H.cols());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
  require(es.info() == Eigen::Success, "NumericalFailure",
          "Hermitian eigensolver failed to converge");
  return es.eigenvalues();
}

namespace {

template <typename Matrix>
SingularValues singular_values_impl(const Matrix& M) {
  require_square(M.rows(), M.cols());
  Eigen::BDCSVD<Matrix> svd(M);
  require(svd.info() == Eigen::Success, "NumericalFailure", "SVD failed to converge");
  SingularValues out;
  out.values = svd.singularValues();
  std::vector<double> locs(out.values.data(), out.values.data() + out.values.size());
  out.measure = EmpiricalMeasure::uniform_real(locs);
  return out;
}

}  // namespace

SingularValues singular_values(const Eigen::MatrixXd& M) {
  return singular_values_impl(M);
}
SingularValues singular_values(const Eigen::MatrixXcd& M) {
  return singular_values_impl(M);
}

double smallest_singular_value(const Eigen::MatrixXd& M) {
  auto sv = singular_values(M);
  return sv.values[sv.values.size() - 1];
}
double smallest_singular_value(const Eigen::MatrixXcd& M) {
  auto sv = singular_values(M);
  return sv.values[sv.values.size() - 1];
}

HermitizationView hermitize(const Eigen::MatrixXcd& M, std::complex<double> z) {
  require_square(M.rows(), M.cols());
  int n = static_cast<int>(M.rows());
  Eigen::MatrixXcd B =
      M / std::sqrt(static_cast<double>(n)) -
      z * Eigen::MatrixXcd::Identity(n, n);
  HermitizationView view;
  view.base = M;
  view.z = z;
  view.n = n;
  view.matrix = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  view.matrix.topRightCorner(n, n) = B;
  view.matrix.bottomLeftCorner(n, n) = B.adjoint();
  return view;
}

HermitizationView hermitize(const Eigen::MatrixXd& M, std::complex<double> z) {
  return hermitize(Eigen::MatrixXcd(M.cast<std::complex<double>>()), z);
}

std::complex<double> g_from_singular_values(const Eigen::VectorXd& s,
                                            std::complex<double> w) {
  require(s.size() >= 1, "BadParams", "need at least one singular value");
  require(w.imag() > 0, "BadParams", "need Im w > 0");
  std::complex<double> sum = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    sum += w / (s[i] * s[i] - w * w);
  return sum / static_cast<double>(s.size());
}

std::complex<double> stieltjes_g(const Eigen::MatrixXcd& M, std::complex<double> z,
                                 std::complex<double> w, StieltjesRoute route) {
  require(w.imag() > 0, "BadParams", "need Im w > 0");
  require_square(M.rows(), M.cols());
  int n = static_cast<int>(M.rows());
  if (route == StieltjesRoute::Sv) {
    Eigen::MatrixXcd shifted =
        M / std::sqrt(static_cast<double>(n)) -
        z * Eigen::MatrixXcd::Identity(n, n);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(shifted);
    require(svd.info() == Eigen::Success, "NumericalFailure", "SVD failed to converge");
    return g_from_singular_values(svd.singularValues(), w);
  }
  HermitizationView view = hermitize(M, z);
  Eigen::MatrixXcd A =
      view.matrix - w * Eigen::MatrixXcd::Identity(2 * n, 2 * n);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  Eigen::MatrixXcd R = lu.inverse();
  double residual =
      (A * R - Eigen::MatrixXcd::Identity(2 * n, 2 * n)).cwiseAbs().maxCoeff();
  require(residual <= 1e-6, "IllConditioned",
          "direct resolvent inversion residual too large; use the sv route");
  return R.trace() / static_cast<double>(2 * n);
}

std::complex<double> stieltjes_g(const Eigen::MatrixXd& M, std::complex<double> z,
                                 std::complex<double> w, StieltjesRoute route) {
  return stieltjes_g(Eigen::MatrixXcd(M.cast<std::complex<double>>()), z, w, route);
}

double resolvent_norm(const HermitizationView& H, std::complex<double> w) {
  require(w.imag() > 0, "BadParams", "need Im w > 0");
  Eigen::VectorXd eigs = hermitian_eigenvalues(H.matrix);
  double min_dist = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < eigs.size(); ++i)
    min_dist = std::min(min_dist, std::abs(eigs[i] - w));
  return 1.0 / min_dist;
}

ResolventDerivativeReport resolvent_derivative_check(const Eigen::MatrixXcd& M,
                                                     std::complex<double> z,
                                                     std::complex<double> w, int i,
                                                     int j, double h) {
  require_square(M.rows(), M.cols());
  int n = static_cast<int>(M.rows());
  require(0 <= i && i < n && 0 <= j && j < n, "IndexOutOfRange", "entry out of range");
  require(h > 0, "BadParams", "need h > 0");
  require(w.imag() > 0, "BadParams", "need Im w > 0");

  auto resolvent_of = [&](const Eigen::MatrixXcd& X) {
    Eigen::MatrixXcd A = hermitize(X, z).matrix -
                         w * Eigen::MatrixXcd::Identity(2 * n, 2 * n);
    return Eigen::MatrixXcd(Eigen::PartialPivLU<Eigen::MatrixXcd>(A).inverse());
  };

  Eigen::MatrixXcd R0 = resolvent_of(M);
  Eigen::MatrixXcd Mh = M;
  Mh(i, j) += h;
  Eigen::MatrixXcd finite_diff = (resolvent_of(Mh) - R0) / h;

  Eigen::MatrixXcd dH = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  double root_n = std::sqrt(static_cast<double>(n));
  dH(i, n + j) = 1.0 / root_n;
  dH(n + j, i) = 1.0 / root_n;
  Eigen::MatrixXcd predicted = -R0 * dH * R0;

  ResolventDerivativeReport rep;
  rep.i = i;
  rep.j = j;
  rep.h = h;
  rep.max_deviation = (finite_diff - predicted).cwiseAbs().maxCoeff();
  return rep;
}

double log_potential(const EmpiricalMeasure& mu, std::complex<double> z) {
  double total = 0;
  for (std::size_t i = 0; i < mu.atoms.size(); ++i) {
    double dist = std::abs(mu.atoms[i] - z);
    if (dist == 0) return std::numeric_limits<double>::infinity();
    total -= mu.weights[i] * std::log(dist);
  }
  return total;
}

double circular_radial_cdf(double r) {
  require(r >= 0, "BadParams", "need r >= 0");
  return std::min(r * r, 1.0);
}

double km_density(std::complex<double> z, int d) {
  require(d >= 2, "BadParams", "need d >= 2");
  double abs_sq = std::norm(z);
  double dd = static_cast<double>(d);
  if (abs_sq >= dd) return 0.0;
  double denom = dd * dd - abs_sq;
  return dd * dd * (dd - 1.0) / (std::numbers::pi * denom * denom);
}

double km_radial_cdf(double r, int d) {
  require(d >= 2, "BadParams", "need d >= 2");
  require(r >= 0, "BadParams", "need r >= 0");
  double dd = static_cast<double>(d);
  if (r * r >= dd) return 1.0;
  return std::min((dd - 1.0) * r * r / (dd * dd - r * r), 1.0);
}

namespace {

// (location, weight) pairs sorted ascending with equal locations merged.
std::vector<std::pair<double, double>> sorted_real_atoms(const EmpiricalMeasure& mu) {
  require(mu.real_supported(), "BadParams",
          "Kolmogorov distance needs a real-supported measure");
  std::vector<std::pair<double, double>> pts(mu.atoms.size());
  for (std::size_t i = 0; i < mu.atoms.size(); ++i)
    pts[i] = {mu.atoms[i].real(), mu.weights[i]};
  std::sort(pts.begin(), pts.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& p : pts) {
    if (!merged.empty() && merged.back().first == p.first)
      merged.back().second += p.second;
    else
      merged.push_back(p);
  }
  return merged;
}

}  // namespace

double ks_distance(const EmpiricalMeasure& a, const std::function<double(double)>& cdf) {
  auto pts = sorted_real_atoms(a);
  double cum = 0, best = 0;
  for (const auto& [x, w] : pts) {
    double ref = cdf(x);
    best = std::max(best, std::abs(cum - ref));      // left limit
    cum += w;
    best = std::max(best, std::abs(cum - ref));      // right-continuous value
  }
  return best;
}

double ks_distance(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
  auto pa = sorted_real_atoms(a);
  auto pb = sorted_real_atoms(b);
  double ca = 0, cb = 0, best = 0;
  std::size_t ia = 0, ib = 0;
  while (ia < pa.size() || ib < pb.size()) {
    double xa = ia < pa.size() ? pa[ia].first : std::numeric_limits<double>::infinity();
    double xb = ib < pb.size() ? pb[ib].first : std::numeric_limits<double>::infinity();
    double x = std::min(xa, xb);
    while (ia < pa.size() && pa[ia].first == x) ca += pa[ia++].second;
    while (ib < pb.size() && pb[ib].first == x) cb += pb[ib++].second;
    best = std::max(best, std::abs(ca - cb));
  }
  return best;
}

EmpiricalMeasure exclude_largest_modulus(const EmpiricalMeasure& mu) {
  require(mu.size() >= 2, "BadParams", "need at least two atoms");
  std::size_t drop = 0;
  for (std::size_t i = 1; i < mu.atoms.size(); ++i)
    if (std::abs(mu.atoms[i]) > std::abs(mu.atoms[drop])) drop = i;
  std::vector<std::complex<double>> atoms;
  std::vector<double> weights;
  double keep = 1.0 - mu.weights[drop];
  for (std::size_t i = 0; i < mu.atoms.size(); ++i) {
    if (i == drop) continue;
    atoms.push_back(mu.atoms[i]);
    weights.push_back(mu.weights[i] / keep);
  }
  return EmpiricalMeasure::weighted(std::move(atoms), std::move(weights));
}

int multiset_mismatch_count(std::vector<std::complex<double>> a,
                            std::vector<std::complex<double>> b, double tol) {
  auto lex = [](const std::complex<double>& x, const std::complex<double>& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  };
  std::sort(a.begin(), a.end(), lex);
  std::sort(b.begin(), b.end(), lex);
  std::vector<bool> used(b.size(), false);
  int unmatched = 0;
  for (const auto& x : a) {
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      double dist = std::abs(x - b[j]);
      if (dist < best_dist) {
        best_dist = dist;
        best = static_cast<int>(j);
      }
    }
    if (best >= 0 && best_dist <= tol)
      used[best] = true;
    else
      ++unmatched;
  }
  return unmatched;
}

}  // namespace rdl
