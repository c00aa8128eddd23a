#include "rdl/acceptance.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rdl/digraph.hpp"
#include "rdl/ensembles.hpp"
#include "rdl/errors.hpp"
#include "rdl/factor.hpp"
#include "rdl/netgeom.hpp"
#include "rdl/regularity.hpp"
#include "rdl/rng.hpp"
#include "rdl/sampler.hpp"
#include "rdl/spectral.hpp"
#include "rdl/stats.hpp"

namespace rdl {

namespace {

using Complex = std::complex<double>;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

Eigen::MatrixXcd random_complex_matrix(int n, RngStream& rng) {
  Eigen::MatrixXcd M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = rng.next_complex_normal();
  return M;
}

std::vector<double> to_vector(const Eigen::VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

// Exact determinant of a small integer matrix by fraction-free (Bareiss)
// elimination; every division is exact and intermediates are minors, so int64
// is safe for the 8x8 entries used here.
long long int_det(std::vector<std::vector<long long>> m) {
  const int n = static_cast<int>(m.size());
  long long sign = 1, prev = 1;
  for (int k = 0; k + 1 < n; ++k) {
    int pivot = -1;
    for (int r = k; r < n && pivot < 0; ++r)
      if (m[r][k] != 0) pivot = r;
    if (pivot < 0) return 0;
    if (pivot != k) {
      std::swap(m[pivot], m[k]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

// Criterion bodies return (pass, human-readable detail); throwing is treated
// as a failure by the driver.
using Outcome = std::pair<bool, std::string>;

// ---------------------------------------------------------------- criterion 1
Outcome hermitization_identity() {
  RngStream rng(1001, 0);
  const int n = 50;
  double max_dev = 0.0;
  for (int t = 0; t < 20; ++t) {
    Eigen::MatrixXcd M = random_complex_matrix(n, rng);
    for (Complex z : {Complex(0, 0), Complex(1, 1)}) {
      Eigen::VectorXd eigs = hermitian_eigenvalues(hermitize(M, z).matrix);
      Eigen::MatrixXcd shifted = M / std::sqrt(static_cast<double>(n)) -
                                 z * Eigen::MatrixXcd::Identity(n, n);
      Eigen::VectorXd s = singular_values(shifted).values;
      std::vector<double> expect;
      for (int i = 0; i < n; ++i) {
        expect.push_back(s[i]);
        expect.push_back(-s[i]);
      }
      std::sort(expect.begin(), expect.end());
      for (int k = 0; k < 2 * n; ++k)
        max_dev = std::max(max_dev, std::abs(eigs[k] - expect[k]));
    }
  }
  return {max_dev <= 1e-8,
          "eigenvalues vs +/- singular values: max deviation " + fmt(max_dev) +
              " (tol 1e-8), 20 matrices, z in {0, 1+i}"};
}

// ---------------------------------------------------------------- criterion 2
Outcome resolvent_bounds() {
  RngStream rng(1002, 0);
  const int n = 50;
  const Complex z(1, 1);
  double max_excess = -1.0, max_route_dev = 0.0;
  for (int t = 0; t < 20; ++t) {
    Eigen::MatrixXcd M = random_complex_matrix(n, rng);
    HermitizationView H = hermitize(M, z);
    for (Complex w : {Complex(0, 1), Complex(0, 0.1), Complex(1, 1)}) {
      double excess = resolvent_norm(H, w) - 1.0 / w.imag();
      max_excess = std::max(max_excess, excess);
      Complex direct = stieltjes_g(M, z, w, StieltjesRoute::Direct);
      Complex via_sv = stieltjes_g(M, z, w, StieltjesRoute::Sv);
      max_route_dev = std::max(max_route_dev, std::abs(direct - via_sv));
    }
  }
  bool ok = max_excess <= 1e-10 && max_route_dev <= 1e-8;
  return {ok, "norm excess over 1/Im w: " + fmt(max_excess) +
                  " (tol 1e-10); direct-vs-sv transform deviation " +
                  fmt(max_route_dev) + " (tol 1e-8)"};
}

// ---------------------------------------------------------------- criterion 3
Outcome resolvent_derivative() {
  RngStream rng(1003, 0);
  const int n = 20;
  double max_dev = 0.0;
  for (int t = 0; t < 10; ++t) {
    Eigen::MatrixXcd M = random_complex_matrix(n, rng);
    int i = static_cast<int>(rng.next_below(n));
    int j = static_cast<int>(rng.next_below(n));
    ResolventDerivativeReport rep =
        resolvent_derivative_check(M, Complex(1, 1), Complex(0, 1), i, j, 1e-6);
    max_dev = std::max(max_dev, rep.max_deviation);
  }
  return {max_dev <= 1e-4, "finite difference vs -R dH R: max deviation " +
                               fmt(max_dev) + " (tol 1e-4), 10 trials, n=20"};
}

// ---------------------------------------------------------------- criterion 4
Outcome log_potential_identity() {
  RngStream rng(1004, 0);
  const int n = 30;
  const Complex z(2, 1);
  double max_rel = 0.0;
  for (int t = 0; t < 20; ++t) {
    Eigen::MatrixXcd M = random_complex_matrix(n, rng);
    double lhs = log_potential(eigenvalues(M), z);
    Eigen::MatrixXcd shifted = M - z * Eigen::MatrixXcd::Identity(n, n);
    Eigen::VectorXd s = singular_values(shifted).values;
    double rhs = 0.0;
    for (int i = 0; i < n; ++i) rhs -= std::log(s[i]);
    rhs /= n;
    double rel = std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
    max_rel = std::max(max_rel, rel);
  }
  return {max_rel <= 1e-6,
          "log potential vs -mean log singular value: max relative deviation " +
              fmt(max_rel) + " (tol 1e-6), 20 matrices, z=2+i"};
}

// ---------------------------------------------------------------- criterion 5
Outcome enumeration_counts() {
  std::size_t c21 = enumerate_regular(2, 1).size();
  std::size_t c31 = enumerate_regular(3, 1).size();
  std::size_t c42 = enumerate_regular(4, 2).size();
  // Independent brute force: every 16-bit mask as a 4x4 matrix, row i in bits
  // 4i..4i+3.
  int brute = 0;
  for (unsigned mask = 0; mask < 65536; ++mask) {
    bool ok = true;
    for (int i = 0; i < 4 && ok; ++i)
      if (std::popcount((mask >> (4 * i)) & 0xFu) != 2) ok = false;
    for (int j = 0; j < 4 && ok; ++j) {
      int col = 0;
      for (int i = 0; i < 4; ++i) col += (mask >> (4 * i + j)) & 1u;
      if (col != 2) ok = false;
    }
    if (ok) ++brute;
  }
  bool ok = c21 == 2 && c31 == 6 && c42 == 90 && brute == 90;
  return {ok, "counts (2,1)=" + std::to_string(c21) + " (3,1)=" +
                  std::to_string(c31) + " (4,2)=" + std::to_string(c42) +
                  ", brute-force recount " + std::to_string(brute) +
                  " (want 2/6/90/90)"};
}

// Class index over A_{4,2} keyed by the packed 0-1 matrix.
std::unordered_map<std::uint64_t, int> class_index(
    const std::vector<RegularDigraph>& all) {
  std::unordered_map<std::uint64_t, int> index;
  for (std::size_t k = 0; k < all.size(); ++k)
    index[dense_bitmask(all[k])] = static_cast<int>(k);
  return index;
}

// ---------------------------------------------------------------- criterion 6
Outcome chain_uniformity() {
  RngStream rng(1006, 0);
  auto all = enumerate_regular(4, 2);
  auto index = class_index(all);
  const long long draws = 100000;
  std::vector<std::uint64_t> counts(all.size(), 0);
  for (long long t = 0; t < draws; ++t)
    ++counts[index.at(dense_bitmask(chain_sample(4, 2, 200, rng)))];
  ChiSquareTest test = chisq_test(
      counts, std::vector<double>(all.size(),
                                  static_cast<double>(draws) / all.size()));
  return {test.p_value > 0.001,
          "chi-square over 90 classes: statistic " + fmt(test.statistic) +
              ", p=" + fmt(test.p_value) + " (need > 0.001), 1e5 samples"};
}

// ---------------------------------------------------------------- criterion 7
Outcome coupling_uniformity() {
  RngStream rng(1007, 0);
  auto all = enumerate_regular(4, 2);
  auto index = class_index(all);
  std::vector<int> pi = lexicographic_pairing(4);
  const IndexSet L = {0}, Lprime = {1};
  const long long draws = 100000;
  std::vector<std::uint64_t> counts(all.size(), 0);
  for (long long t = 0; t < draws; ++t) {
    const RegularDigraph& A = all[rng.next_below(all.size())];
    CouplingPlan plan = build_coupling(A, L, Lprime, pi, rng);
    ++counts[index.at(dense_bitmask(apply_coupling(A, plan)))];
  }
  ChiSquareTest test = chisq_test(
      counts, std::vector<double>(all.size(),
                                  static_cast<double>(draws) / all.size()));
  return {test.p_value > 0.001,
          "uniform in, coupled out: chi-square p=" + fmt(test.p_value) +
              " (need > 0.001), 1e5 draws through L={1}, L'={2}"};
}

// Expansion check on packed rows: every nonempty column set J with
// |J| <= n/(2 kappa d) must have strictly more than kappa d |J| rows meeting
// it.
bool expansion_bitmask(const std::array<unsigned, 6>& rows, double kappa, int d) {
  const int n = 6;
  int m_max = std::min(n, static_cast<int>(n / (2.0 * kappa * d)));
  for (unsigned J = 1; J < (1u << n); ++J) {
    int size = std::popcount(J);
    if (size > m_max) continue;
    int hit = 0;
    for (int i = 0; i < n; ++i)
      if (rows[i] & J) ++hit;
    if (!(hit > kappa * d * size)) return false;
  }
  return true;
}

IndexSet bits_to_set(unsigned mask) {
  IndexSet out;
  for (int j = 0; mask; ++j, mask >>= 1)
    if (mask & 1u) out.push_back(j);
  return out;
}

// ---------------------------------------------------------------- criterion 8
Outcome switching_algebra() {
  RngStream rng(1008, 0);
  long long involution_violations = 0, applied = 0;
  for (int t = 0; t < 1000; ++t) {
    RegularDigraph A = chain_sample(8, 3, default_chain_steps(8, 3), rng);
    int i1 = static_cast<int>(rng.next_below(8));
    int i2 = (i1 + 1 + static_cast<int>(rng.next_below(7))) % 8;
    int j1 = static_cast<int>(rng.next_below(8));
    int j2 = (j1 + 1 + static_cast<int>(rng.next_below(7))) % 8;
    RegularDigraph B = simple_switch(A, i1, i2, j1, j2);
    if (!(simple_switch(B, i1, i2, j1, j2) == A)) ++involution_violations;

    // A random valid block switch between two rows, when one exists.
    std::vector<int> diff1, diff2;
    for (int v : A.out_neighbors(i1))
      if (!A.has_edge(i2, v)) diff1.push_back(v);
    for (int v : A.out_neighbors(i2))
      if (!A.has_edge(i1, v)) diff2.push_back(v);
    if (!diff1.empty() && !diff2.empty()) {
      int s = 1 + static_cast<int>(rng.next_below(
                      std::min(diff1.size(), diff2.size())));
      SwitchSpec spec;
      spec.i1 = i1;
      spec.i2 = i2;
      for (int idx : rng.next_subset(static_cast<int>(diff1.size()), s))
        spec.J.push_back(diff1[idx]);
      for (int idx : rng.next_subset(static_cast<int>(diff2.size()), s))
        spec.Jprime.push_back(diff2[idx]);
      std::sort(spec.J.begin(), spec.J.end());
      std::sort(spec.Jprime.begin(), spec.Jprime.end());
      RegularDigraph C = neighborhood_switch(A, spec);
      if (!(C == A)) ++applied;
      if (!(neighborhood_switch(C, spec) == A)) ++involution_violations;
    }
  }

  // Expansion stability, exhaustively over A_{6,2} and every block switch.
  auto all6 = enumerate_regular(6, 2);
  RngStream crng(1008, 1);
  long long switches = 0, stability_violations = 0, api_mismatches = 0;
  long long not_certified = 0;
  for (std::size_t idx = 0; idx < all6.size(); ++idx) {
    const RegularDigraph& A = all6[idx];
    if (!check_expansion(A, 0.4, 1000000, crng).pass()) {
      ++not_certified;
      continue;
    }
    std::array<unsigned, 6> rows{};
    for (int i = 0; i < 6; ++i)
      for (int v : A.out_neighbors(i)) rows[i] |= 1u << v;
    for (int i1 = 0; i1 < 6; ++i1) {
      for (int i2 = i1 + 1; i2 < 6; ++i2) {
        unsigned d1 = rows[i1] & ~rows[i2];
        unsigned d2 = rows[i2] & ~rows[i1];
        for (unsigned J = d1; J; J = (J - 1) & d1) {
          for (unsigned Jp = d2; Jp; Jp = (Jp - 1) & d2) {
            if (std::popcount(J) != std::popcount(Jp)) continue;
            ++switches;
            std::array<unsigned, 6> switched = rows;
            switched[i1] = (rows[i1] & ~J) | Jp;
            switched[i2] = (rows[i2] & ~Jp) | J;
            bool stable = expansion_bitmask(switched, 0.2, 2);
            if (!stable) ++stability_violations;
            if (idx < 200) {
              SwitchSpec spec{i1, i2, bits_to_set(J), bits_to_set(Jp)};
              RegularDigraph B = neighborhood_switch(A, spec);
              std::array<unsigned, 6> brows{};
              for (int i = 0; i < 6; ++i)
                for (int v : B.out_neighbors(i)) brows[i] |= 1u << v;
              if (brows != switched) ++api_mismatches;
              if (check_expansion(B, 0.2, 1000000, crng).pass() != stable)
                ++api_mismatches;
            }
          }
        }
      }
    }
  }

  bool ok = involution_violations == 0 && stability_violations == 0 &&
            api_mismatches == 0 && applied > 0;
  return {ok, "involutions exact on 1000 instances (" + std::to_string(applied) +
                  " block switches applied); stability sweep: " +
                  std::to_string(switches) + " switches over " +
                  std::to_string(all6.size() - not_certified) +
                  " certified digraphs, " +
                  std::to_string(stability_violations) +
                  " violations, API cross-check mismatches " +
                  std::to_string(api_mismatches)};
}

// ---------------------------------------------------------------- criterion 9
Outcome expansion_consequences() {
  RngStream rng(1009, 0);
  auto all6 = enumerate_regular(6, 2);
  long long checked = 0, skipped = 0, violations = 0, not_certified = 0;
  for (const RegularDigraph& A : all6) {
    if (!check_expansion(A, 0.4, 1000000, rng).pass()) {
      ++skipped;
      continue;
    }
    RegularityReport rep = verify_expansion_consequences(A, 0.4, 1000000, rng);
    if (rep.verdict != Verdict::CertifiedPass) {
      if (rep.pass())
        ++not_certified;  // sampled instead of exhaustive: counts as failure
      else
        ++violations;
    }
    ++checked;
  }
  bool ok = checked > 0 && violations == 0 && not_certified == 0;
  return {ok, "exhaustive consequence checks on " + std::to_string(checked) +
                  " certified digraphs: " + std::to_string(violations) +
                  " violations, " + std::to_string(not_certified) +
                  " non-exhaustive verdicts, " + std::to_string(skipped) +
                  " skipped"};
}

// --------------------------------------------------------------- criterion 10
Outcome reflection_spectrum() {
  RngStream rng(1010, 0);
  const int n = 8, d = 3;
  // "Spectra agree except one eigenvalue" is an exact statement: -A and
  // ones-A act identically on the orthocomplement of 1, so their
  // characteristic polynomials share the degree n-1 factor and differ only in
  // the root carrying +d <-> -(n-d). Equivalently, as integer polynomials,
  //   det(xI - (ones - A)) * (x + d) == det(xI + A) * (x - (n - d)).
  // Checking that identity at degree+1 integer points with exact integer
  // determinants verifies the multiset claim with zero tolerance; eigensolvers
  // cannot do this when the shared factor has a large Jordan block, whose
  // computed roots scatter at machine-precision^(1/block-size).
  long long violations = 0;
  for (int t = 0; t < 20; ++t) {
    RegularDigraph A = chain_sample(n, d, default_chain_steps(n, d), rng);
    Eigen::MatrixXd D = A.dense();
    for (long long x = 0; x <= n + 1; ++x) {
      std::vector<std::vector<long long>> neg(n, std::vector<long long>(n, 0));
      std::vector<std::vector<long long>> refl(n, std::vector<long long>(n, 0));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          long long a = static_cast<long long>(D(i, j));
          neg[i][j] = (i == j ? x : 0) + a;
          refl[i][j] = (i == j ? x : 0) - (1 - a);
        }
      long long lhs = int_det(refl) * (x + d);
      long long rhs = int_det(neg) * (x - (n - d));
      if (lhs != rhs) ++violations;
    }
  }
  return {violations == 0,
          "spectra of -A and ones-A agree except the -d <-> n-d swap: "
          "characteristic polynomial identity exact at 10 integer points on "
          "all 20 samples, " +
              std::to_string(violations) + " violations (deviation 0 <= 1e-6)"};
}

// --------------------------------------------------------------- criterion 11
Outcome circular_law(std::vector<std::pair<int, double>>& gaps) {
  RngStream rng(1011, 0);
  const int n = 2000, d = 200;
  RegularDigraph A = chain_sample(n, d, default_chain_steps(n, d), rng);
  EmpiricalMeasure bulk = exclude_largest_modulus(eigenvalues(normalized(A)));
  std::vector<double> radii, angles;
  for (const auto& atom : bulk.atoms) {
    radii.push_back(std::abs(atom));
    angles.push_back(std::arg(atom));
  }
  double ks_radial = ks_vs_cdf(radii, circular_radial_cdf);
  double ks_angular = ks_vs_cdf(angles, [](double t) {
    return (t + std::numbers::pi) / (2 * std::numbers::pi);
  });
  gaps.push_back({n, interlacing_gap(A, Complex(1, 0))});
  bool ok = ks_radial <= 0.05 && ks_angular <= 0.05;
  return {ok, "n=2000 d=200: radial KS " + fmt(ks_radial) + ", angular KS " +
                  fmt(ks_angular) + " (tol 0.05 each)"};
}

// --------------------------------------------------------------- criterion 12
Outcome kesten_mckay_radial(std::vector<std::pair<int, double>>& gaps) {
  RngStream rng(1012, 0);
  const int n = 1000, d = 3;
  double worst = 0.0;
  for (int t = 0; t < 5; ++t) {
    RegularDigraph A = chain_sample(n, d, default_chain_steps(n, d), rng);
    EmpiricalMeasure bulk = exclude_largest_modulus(eigenvalues(A.dense()));
    std::vector<double> radii;
    for (const auto& atom : bulk.atoms) radii.push_back(std::abs(atom));
    worst = std::max(worst,
                     ks_vs_cdf(radii, [](double r) { return km_radial_cdf(r, 3); }));
    gaps.push_back({n, interlacing_gap(A, Complex(1, 0))});
  }
  return {worst <= 0.08, "d=3 radial KS vs fixed-degree law: worst " +
                             fmt(worst) + " over 5 samples (tol 0.08)"};
}

// --------------------------------------------------------------- criterion 13
Outcome smallest_singular_values(std::vector<std::pair<int, double>>& gaps) {
  const int n = 1000, d = 100;
  const Complex z(1, 1);
  RngStream rng(1013, 0);
  double min_raw = std::numeric_limits<double>::infinity();
  double min_shifted = std::numeric_limits<double>::infinity();
  long long singular = 0;
  double root_n = std::sqrt(static_cast<double>(n));
  for (long long s = 0; s < 50; ++s) {
    RngStream stream = ensemble_substream(rng, s);
    RegularDigraph A = chain_sample(n, d, default_chain_steps(n, d), stream);
    Eigen::MatrixXd D = A.dense();
    double sn_raw = smallest_singular_value(D);
    min_raw = std::min(min_raw, sn_raw);
    if (sn_raw <= 1e-10) ++singular;
    Eigen::MatrixXcd shifted_bar =
        normalized(A).cast<Complex>() - z * Eigen::MatrixXcd::Identity(n, n);
    Eigen::VectorXd sv_bar = singular_values(shifted_bar).values;
    min_shifted = std::min(min_shifted, sv_bar[n - 1]);
    Eigen::MatrixXcd shifted_y = (center_Y(A) / root_n).cast<Complex>() -
                                 z * Eigen::MatrixXcd::Identity(n, n);
    Eigen::VectorXd sv_y = singular_values(shifted_y).values;
    gaps.push_back({n, ks_two_sample(to_vector(sv_y), to_vector(sv_bar), 1e-9)});
  }
  bool ok = singular == 0 && min_shifted >= 1e-6;
  return {ok, "50 samples: min s_n(A) " + fmt(min_raw) +
                  " (singular count " + std::to_string(singular) +
                  "), min shifted s_n " + fmt(min_shifted) + " (need >= 1e-6)"};
}

// --------------------------------------------------------------- criterion 14
Outcome wegner_envelope(std::vector<std::pair<int, double>>& gaps) {
  const int n = 1000, d = 100;
  const Complex z(1, 1);
  RngStream rng(1014, 0);
  std::vector<double> etas;
  for (int k = 1; k <= 50; ++k) etas.push_back(0.02 * k);
  ComparisonReport rep = wegner_profile(n, d, z, etas, 20, rng, 10.0);
  long long passing = rep.details.at("samples_passing").get<long long>();
  for (long long s = 0; s < 20; ++s) {
    RngStream stream = ensemble_substream(rng, s);
    RegularDigraph A = chain_sample(n, d, default_chain_steps(n, d), stream);
    gaps.push_back({n, interlacing_gap(A, z)});
  }
  return {rep.pass, "profile within 10(eta + d^{-1/48}) on full grid in " +
                        std::to_string(passing) +
                        "/20 samples (need >= 19); fitted constant " +
                        fmt(rep.fitted_constant)};
}

// --------------------------------------------------------------- criterion 15
Outcome ensemble_agreement_ks(std::vector<std::pair<int, double>>& gaps) {
  const int n = 1000, d = 200;
  bool ok = true;
  std::string detail;
  for (int zi = 0; zi < 2; ++zi) {
    Complex z(zi == 0 ? 0.0 : 1.0, 0.0);
    RngStream rng(1015, static_cast<std::uint64_t>(zi));
    ComparisonReport rep = ensemble_agreement(n, d, z, 20, rng, 0.05);
    ok = ok && rep.pass;
    if (!detail.empty()) detail += ", ";
    detail += "z=" + fmt(z.real()) + ": KS " + fmt(rep.fitted_constant);
    for (long long s = 0; s < 20; ++s) {
      RngStream stream = ensemble_substream(rng, s);
      RegularDigraph A = chain_sample(n, d, default_chain_steps(n, d), stream);
      gaps.push_back({n, interlacing_gap(A, z)});
    }
  }
  return {ok, "pooled singular value measures, 20 regular vs 20 Gaussian: " +
                  detail + " (tol 0.05)"};
}

// --------------------------------------------------------------- criterion 16
Outcome stieltjes_comparison() {
  const std::vector<int> ds = {50, 200, 800};
  std::vector<double> diffs, errs;
  for (std::size_t k = 0; k < ds.size(); ++k) {
    RngStream rng(1016, k);
    ComparisonReport rep =
        compare_stieltjes(1000, ds[k], Complex(1, 0), Complex(0, 1), 50, rng);
    diffs.push_back(rep.details.at("difference").get<double>());
    errs.push_back(rep.details.at("mc_error").get<double>());
  }
  bool monotone = diffs[0] >= diffs[1] && diffs[1] >= diffs[2];
  // Least-squares fit of diff ~ C d^{-1/2}, then a factor-3 window.
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < ds.size(); ++k) {
    num += diffs[k] / std::sqrt(static_cast<double>(ds[k]));
    den += 1.0 / ds[k];
  }
  double c_fit = num / den;
  bool within = true;
  for (std::size_t k = 0; k < ds.size(); ++k) {
    double shape = c_fit / std::sqrt(static_cast<double>(ds[k]));
    if (!(diffs[k] >= shape / 3.0 && diffs[k] <= 3.0 * shape)) within = false;
  }
  bool ok = monotone && within;
  return {ok, "|mean g(X) - mean g(G)| at d={50,200,800}: " + fmt(diffs[0]) +
                  ", " + fmt(diffs[1]) + ", " + fmt(diffs[2]) +
                  " (mc errors " + fmt(errs[0]) + ", " + fmt(errs[1]) + ", " +
                  fmt(errs[2]) + ")" +
                  (monotone ? "; monotone" : "; NOT monotone") +
                  (within ? "; within factor 3 of " : "; outside factor 3 of ") +
                  fmt(c_fit) + "*d^{-1/2}"};
}

// --------------------------------------------------------------- criterion 17
Outcome gaussian_order_statistics() {
  const int n = 500;
  const int k = static_cast<int>(
      std::ceil(std::sqrt(static_cast<double>(n))));
  bool ok = true;
  std::string detail;
  for (int mi = 0; mi < 2; ++mi) {
    Eigen::MatrixXcd M = mi == 0
                             ? Eigen::MatrixXcd::Zero(n, n)
                             : Eigen::MatrixXcd(-Eigen::MatrixXcd::Identity(n, n));
    RngStream rng(1017, static_cast<std::uint64_t>(mi));
    ComparisonReport rep = gaussian_order_stats(n, M, k, 50, rng);
    long long violations =
        rep.details.at("violations_at_0.01").get<long long>();
    ok = ok && violations == 0;
    if (!detail.empty()) detail += ", ";
    detail += std::string(mi == 0 ? "M=0" : "M=-I") + ": " +
              std::to_string(violations) + " violations, safe c " +
              fmt(rep.fitted_constant);
  }
  return {ok, "s_{n-j} >= 0.01 j/n for j in [" + std::to_string(k) +
                  ", n-1], 50 samples each: " + detail};
}

// --------------------------------------------------------------- criterion 18
Outcome interlacing_audit(const std::vector<std::pair<int, double>>& gaps) {
  require(!gaps.empty(), "PrerequisiteMissing",
          "no interlacing samples were collected by the spectral criteria");
  double worst_scaled = 0.0;
  bool ok = true;
  for (const auto& [n, gap] : gaps) {
    worst_scaled = std::max(worst_scaled, gap * n);
    if (gap > 1.0 / n + 1e-12) ok = false;
  }
  return {ok, "KS between centered and plain shifted singular value measures: " +
                  std::to_string(gaps.size()) + " samples, worst n*KS " +
                  fmt(worst_scaled) + " (need <= 1)"};
}

// --------------------------------------------------------------- criterion 19
Outcome net_machinery() {
  const int n = 8, m = 2;
  const double rho = 0.5;
  FlatNet net = build_flat_net(n, m, rho, 2e7, 0);

  long long seen = 0, structural_bad = 0, api_checked = 0, api_bad = 0;
  net.for_each([&](const Eigen::VectorXcd& p) {
    ++seen;
    bool ok = std::abs(p.norm() - 1.0) <= 1e-9 && std::abs(p.sum()) <= 1e-9;
    if (ok) {
      // Flat with zero residual: some value repeats on at least n - m coords.
      int best = 0;
      for (int a = 0; a < n; ++a) {
        int same = 0;
        for (int b = 0; b < n; ++b)
          if (std::abs(p[a] - p[b]) <= 1e-12) ++same;
        best = std::max(best, same);
      }
      ok = best >= n - m;
    }
    if (!ok) ++structural_bad;
    if (seen % 10000 == 1) {
      ++api_checked;
      FlatnessCertificate cert =
          flatness_certificate(UnitVector::unit_mean_zero_checked(p), m, rho);
      if (!cert.member) ++api_bad;
    }
  });
  bool count_ok = seen == net.cardinality;
  double cap = std::pow(700.0 * n / (m * rho * rho), m);
  bool cap_ok = static_cast<double>(net.cardinality) <= cap;

  RngStream rng(1019, 0);
  double worst_cover = 0.0;
  for (int t = 0; t < 1000; ++t) {
    FlatSample fs = random_flat_sample(n, m, rho, rng);
    Eigen::VectorXcd q = net_candidate_near(net, fs.u.v, fs.support);
    worst_cover = std::max(worst_cover, (fs.u.v - q).norm());
  }
  bool cover_ok = worst_cover <= rho;

  // Bimodal separation at n=64.
  const int bn = 64, bm = 8;
  const double brho = 0.125;
  double weak_bound = brho / (2.0 * std::sqrt(static_cast<double>(bn)));
  double strong_bound = brho / (4.0 * std::sqrt(static_cast<double>(bn)));
  RngStream brng(1019, 1);
  long long weak_violations = 0, strong_violations = 0, strong_checks = 0;
  int used = 0, attempts = 0, flat_skipped = 0;
  while (used < 100 && attempts < 1000) {
    ++attempts;
    UnitVector u = random_unit_mean_zero(bn, brng);
    if (flatness_certificate(u, bm, brho).member) {
      ++flat_skipped;
      continue;
    }
    BimodalSets b = bimodal_sets(u, bm, brho);
    for (int j1 : b.J1)
      for (int j2 : b.J2)
        if (std::abs(u.v[j1] - u.v[j2]) < weak_bound) ++weak_violations;
    int r = static_cast<int>(std::min(b.J1_prime.size(), b.J2.size()));
    for (int t = 0; t < 10 && r >= 1; ++t) {
      int s = 1 + static_cast<int>(brng.next_below(r));
      Complex mean1 = 0, mean2 = 0;
      for (int idx : brng.next_subset(static_cast<int>(b.J1_prime.size()), s))
        mean1 += u.v[b.J1_prime[idx]];
      for (int idx : brng.next_subset(static_cast<int>(b.J2.size()), s))
        mean2 += u.v[b.J2[idx]];
      mean1 /= static_cast<double>(s);
      mean2 /= static_cast<double>(s);
      ++strong_checks;
      if (std::abs(mean1 - mean2) < strong_bound) ++strong_violations;
    }
    ++used;
  }
  bool bimodal_ok = used == 100 && weak_violations == 0 && strong_violations == 0;

  bool ok = count_ok && cap_ok && structural_bad == 0 && api_bad == 0 &&
            cover_ok && bimodal_ok;
  return {ok, "net (8,2,0.5): " + std::to_string(seen) + " points (count " +
                  std::string(count_ok ? "matches" : "MISMATCHES") +
                  " cardinality), structural failures " +
                  std::to_string(structural_bad) + ", certificate failures " +
                  std::to_string(api_bad) + "/" + std::to_string(api_checked) +
                  ", cap " + (cap_ok ? "ok" : "EXCEEDED") +
                  "; coverage worst distance " + fmt(worst_cover) +
                  " (tol 0.5); bimodal weak/strong violations " +
                  std::to_string(weak_violations) + "/" +
                  std::to_string(strong_violations) + " over 100 vectors, " +
                  std::to_string(strong_checks) + " average checks"};
}

// --------------------------------------------------------------- criterion 20
Outcome factor_machinery() {
  RngStream rng(1020, 0);
  long long mismatches = 0, bad_certificates = 0, bad_factors = 0;
  for (int t = 0; t < 500; ++t) {
    int n = 2 + static_cast<int>(rng.next_below(9));
    int d = 1 + static_cast<int>(rng.next_below(n));
    double q = 0.2 + 0.6 * rng.next_double();
    Eigen::MatrixXd B(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        B(i, j) = rng.next_bernoulli(q) ? 1.0 : 0.0;
    FactorResult flow = find_regular_factor(B, d);
    FactorResult exhaustive = ore_ryser_exhaustive(B, d);
    if (flow.exists != exhaustive.exists) {
      ++mismatches;
      continue;
    }
    if (flow.exists) {
      for (int i = 0; i < n; ++i)
        for (int v : flow.factor->out_neighbors(i))
          if (B(i, v) != 1.0) ++bad_factors;
    } else {
      for (const auto& cert : {flow.certificate, exhaustive.certificate}) {
        if (!cert ||
            ore_ryser_statistic(B, d, *cert) >=
                static_cast<long long>(d) * static_cast<long long>(cert->size()))
          ++bad_certificates;
      }
    }
  }

  double exact = membership_probability_exact(4, 2, 0.5);
  const long long tries = 200000;
  RngStream rrng(1020, 1);
  long long hits = 0;
  for (long long t = 0; t < tries; ++t)
    if (rejection_sample(4, 2, rrng, 1)) ++hits;
  double mean = tries * exact;
  double sigma = std::sqrt(tries * exact * (1.0 - exact));
  bool rate_ok = std::abs(hits - mean) <= 3.0 * sigma;

  RngStream frng(1020, 2);
  FactorProbabilityReport prob = factor_probability(200, 0.3, 0.3, 100, frng);

  // Classify the misses: a factor needs every row and column of B to hold at
  // least d ones, so a deficient line is an unconditional obstruction.
  long long misses = prob.samples - prob.successes;
  long long degree_deficient = 0;
  for (long long s = 0; s < prob.samples; ++s) {
    RngStream stream(frng.master_seed(),
                     (frng.stream_index() << 20) + static_cast<std::uint64_t>(s) + 1);
    Eigen::MatrixXd B(prob.n, prob.n);
    for (int i = 0; i < prob.n; ++i)
      for (int j = 0; j < prob.n; ++j)
        B(i, j) = stream.next_bernoulli(prob.p) ? 1.0 : 0.0;
    double dmin = std::min(B.rowwise().sum().minCoeff(), B.colwise().sum().minCoeff());
    if (dmin < prob.d) ++degree_deficient;
  }

  bool ok = mismatches == 0 && bad_certificates == 0 && bad_factors == 0 &&
            rate_ok && prob.pass;
  return {ok, "flow vs exhaustive: " + std::to_string(mismatches) +
                  " verdict mismatches, " + std::to_string(bad_certificates) +
                  " bad certificates, " + std::to_string(bad_factors) +
                  " support violations on 500 instances; acceptance rate " +
                  std::to_string(hits) + "/" + std::to_string(tries) +
                  " vs mean " + fmt(mean) + " (3 sigma " + fmt(3 * sigma) +
                  "); factors found " + std::to_string(prob.successes) +
                  "/100 at n=200, p=0.3, delta=0.3 (need >= 99); " +
                  std::to_string(degree_deficient) + " of the " +
                  std::to_string(misses) +
                  " misses have a line with fewer than d=42 ones and so cannot "
                  "contain a factor"};
}

}  // namespace

bool AcceptanceSummary::all_pass() const {
  for (const auto& r : results)
    if (r.binding && !r.pass) return false;
  return true;
}

Json AcceptanceSummary::to_json() const {
  Json j;
  j["level"] = level == AcceptanceLevel::Fast ? "fast" : "full";
  Json list = Json::array();
  for (const auto& r : results)
    list.push_back(Json{{"id", r.id},
                        {"name", r.name},
                        {"binding", r.binding},
                        {"pass", r.pass},
                        {"seconds", r.seconds},
                        {"detail", r.detail}});
  j["criteria"] = list;
  j["all_pass"] = all_pass();
  return j;
}

AcceptanceSummary run_acceptance(AcceptanceLevel level, std::ostream& out) {
  AcceptanceSummary summary;
  summary.level = level;
  std::vector<std::pair<int, double>> gaps;  // (matrix size, interlacing KS)

  struct Entry {
    int id;
    const char* name;
    bool binding;
    bool full_only;
    double time_limit;  // seconds; 0 = no limit asserted
    std::function<Outcome()> body;
  };
  const std::vector<Entry> entries = {
      {1, "hermitization-spectrum-identity", true, false, 10, hermitization_identity},
      {2, "resolvent-bounds", true, false, 10, resolvent_bounds},
      {3, "resolvent-derivative", true, false, 5, resolvent_derivative},
      {4, "log-potential-identity", true, false, 5, log_potential_identity},
      {5, "enumeration-counts", true, false, 10, enumeration_counts},
      {6, "chain-sampler-uniformity", true, false, 120, chain_uniformity},
      {7, "coupling-uniformity", true, false, 120, coupling_uniformity},
      {8, "switching-involution-and-stability", true, false, 0, switching_algebra},
      {9, "expansion-consequences", true, false, 0, expansion_consequences},
      {10, "reflection-spectrum", true, false, 0, reflection_spectrum},
      {11, "circular-law", true, true, 300, [&] { return circular_law(gaps); }},
      {12, "kesten-mckay-radial", false, true, 0,
       [&] { return kesten_mckay_radial(gaps); }},
      {13, "smallest-singular-value", true, true, 600,
       [&] { return smallest_singular_values(gaps); }},
      {14, "wegner-profile", true, true, 0, [&] { return wegner_envelope(gaps); }},
      {15, "ensemble-agreement", true, true, 0,
       [&] { return ensemble_agreement_ks(gaps); }},
      {16, "stieltjes-comparison", true, true, 0, stieltjes_comparison},
      {17, "gaussian-order-statistics", true, true, 0, gaussian_order_statistics},
      {18, "interlacing-gap", true, true, 0,
       [&] { return interlacing_audit(gaps); }},
      {19, "flat-net-and-bimodal", true, false, 0, net_machinery},
      {20, "regular-factor", true, false, 0, factor_machinery},
  };

  out << "acceptance suite, level "
      << (level == AcceptanceLevel::Fast ? "fast" : "full") << "\n";
  int passed = 0, binding_total = 0;
  for (const auto& entry : entries) {
    if (entry.full_only && level == AcceptanceLevel::Fast) continue;
    auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = entry.body();
    } catch (const Error& e) {
      outcome = {false, std::string("error: ") + e.what()};
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (outcome.first && entry.time_limit > 0 && seconds > entry.time_limit)
      outcome = {false, outcome.second + " [exceeded " +
                            fmt(entry.time_limit) + " s time limit]"};

    CriterionResult result;
    result.id = entry.id;
    result.name = entry.name;
    result.binding = entry.binding;
    result.pass = outcome.first;
    result.detail = outcome.second;
    result.seconds = seconds;
    summary.results.push_back(result);

    if (entry.binding) {
      ++binding_total;
      if (result.pass) ++passed;
    }
    char line[64];
    std::snprintf(line, sizeof line, "[%s] %2d %-38s (%6.1f s) ",
                  result.pass ? "PASS" : "FAIL", entry.id, entry.name, seconds);
    out << line << (entry.binding ? "" : "[non-binding] ") << result.detail
        << "\n";
    out.flush();
  }
  out << "result: " << passed << "/" << binding_total
      << " binding criteria passed"
      << (summary.all_pass() ? "" : " -- FAILURES PRESENT") << "\n";
  return summary;
}

}  // namespace rdl
