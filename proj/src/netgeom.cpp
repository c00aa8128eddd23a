#include "rdl/netgeom.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "rdl/errors.hpp"
#include "rdl/stats.hpp"

namespace rdl {

namespace {

constexpr double kTagTol = 1e-12;

double vec_norm(const Eigen::VectorXcd& x) { return x.norm(); }

std::complex<double> vec_mean(const Eigen::VectorXcd& x) {
  return x.sum() / static_cast<double>(x.size());
}

// Visit every k-subset of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_subset(int n, int k, Fn&& fn) {
  IndexSet pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  for (;;) {
    fn(pick);
    int i = k - 1;
    while (i >= 0 && pick[i] == n - k + i) --i;
    if (i < 0) return;
    ++pick[i];
    for (int l = i + 1; l < k; ++l) pick[l] = pick[l - 1] + 1;
  }
}

}  // namespace

UnitVector UnitVector::general(Eigen::VectorXcd x) {
  UnitVector u;
  u.v = std::move(x);
  return u;
}

UnitVector UnitVector::unit_checked(Eigen::VectorXcd x) {
  require(std::abs(vec_norm(x) - 1.0) <= kTagTol, "NotUnit",
          "vector norm differs from 1 by more than 1e-12");
  UnitVector u;
  u.v = std::move(x);
  u.unit = true;
  return u;
}

UnitVector UnitVector::unit_mean_zero_checked(Eigen::VectorXcd x) {
  require(std::abs(x.sum()) <= kTagTol, "NotMeanZero",
          "vector component sum exceeds 1e-12");
  UnitVector u = unit_checked(std::move(x));
  u.mean_zero = true;
  return u;
}

UnitVector project_normalize_mean_zero(const Eigen::VectorXcd& x) {
  Eigen::VectorXcd p = x.array() - vec_mean(x);
  double nrm = p.norm();
  require(nrm > 1e-12, "DegenerateVector",
          "projection onto the mean-zero hyperplane is numerically zero");
  p /= nrm;
  UnitVector u;
  u.v = std::move(p);
  u.unit = true;
  u.mean_zero = true;
  return u;
}

UnitVector random_unit(int n, RngStream& rng) {
  require(n >= 1, "BadParams", "need n >= 1");
  Eigen::VectorXcd x(n);
  for (;;) {
    for (int j = 0; j < n; ++j) x[j] = rng.next_complex_normal();
    double nrm = x.norm();
    if (nrm > 1e-8) {
      UnitVector u;
      u.v = x / nrm;
      u.unit = true;
      return u;
    }
  }
}

UnitVector random_unit_mean_zero(int n, RngStream& rng) {
  require(n >= 2, "BadParams", "need n >= 2");
  for (;;) {
    Eigen::VectorXcd x(n);
    for (int j = 0; j < n; ++j) x[j] = rng.next_complex_normal();
    Eigen::VectorXcd p = x.array() - vec_mean(x);
    if (p.norm() > 1e-8) return project_normalize_mean_zero(x);
  }
}

IndexSet levy_set(const UnitVector& v, std::complex<double> lambda, double rho) {
  require(rho > 0, "BadParams", "need rho > 0");
  int n = v.n();
  double root_n = std::sqrt(static_cast<double>(n));
  std::complex<double> center = lambda / root_n;
  double r = rho / root_n;
  IndexSet out;
  for (int j = 0; j < n; ++j)
    if (std::abs(v.v[j] - center) < r) out.push_back(j);
  return out;
}

namespace {

ConcentrationPoint concentration_impl(const Eigen::VectorXcd& v, double rho, bool exact) {
  int n = static_cast<int>(v.size());
  double root_n = std::sqrt(static_cast<double>(n));
  double r = rho / root_n;
  // Closed-disk optimum at a radius shrunk by 1e-12 stands in for the open
  // supremum; the small equality slack absorbs roundoff on circle boundaries.
  double r_shrunk = r * (1.0 - 1e-12);
  double r_count = r_shrunk + 1e-13 * r;

  auto count_at = [&](std::complex<double> c) {
    int cnt = 0;
    for (int k = 0; k < n; ++k)
      if (std::abs(v[k] - c) <= r_count) ++cnt;
    return cnt;
  };

  ConcentrationPoint best;
  best.count = -1;
  auto consider = [&](std::complex<double> c) {
    int cnt = count_at(c);
    if (cnt > best.count) {
      best.count = cnt;
      best.center = c;
    }
  };

  for (int j = 0; j < n; ++j) consider(v[j]);
  if (exact) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        std::complex<double> diff = v[j] - v[i];
        double dist = std::abs(diff);
        if (dist <= 0 || dist > 2 * r_shrunk) continue;
        std::complex<double> mid = (v[i] + v[j]) / 2.0;
        double half = std::sqrt(std::max(0.0, r_shrunk * r_shrunk - dist * dist / 4));
        std::complex<double> perp =
            std::complex<double>(-diff.imag(), diff.real()) / dist * half;
        consider(mid + perp);
        consider(mid - perp);
      }
  }
  best.q = static_cast<double>(best.count) / n;
  return best;
}

}  // namespace

ConcentrationPoint concentration_argmax(const UnitVector& v, double rho, ConcMode mode) {
  require(rho > 0, "BadParams", "need rho > 0");
  require(mode == ConcMode::Fast || v.n() <= 2000, "TooLarge",
          "exact concentration is limited to n <= 2000");
  return concentration_impl(v.v, rho, mode == ConcMode::Exact);
}

double concentration_function(const UnitVector& v, double rho, ConcMode mode) {
  return concentration_argmax(v, rho, mode).q;
}

FlatnessCertificate certificate_for_support(const UnitVector& u, const IndexSet& support,
                                            FlatnessMethod method) {
  int n = u.n();
  require(static_cast<int>(support.size()) < n, "BadParams",
          "support must leave at least one coordinate free");
  std::vector<bool> in_supp(n, false);
  for (int j : support) {
    require(0 <= j && j < n, "IndexOutOfRange", "support entry out of range");
    require(!in_supp[j], "BadParams", "support entries must be distinct");
    in_supp[j] = true;
  }
  std::complex<double> off_sum = 0;
  int off_count = 0;
  for (int j = 0; j < n; ++j)
    if (!in_supp[j]) {
      off_sum += u.v[j];
      ++off_count;
    }
  std::complex<double> lambda = off_sum / static_cast<double>(off_count);
  double res_sq = 0;
  for (int j = 0; j < n; ++j)
    if (!in_supp[j]) res_sq += std::norm(u.v[j] - lambda);
  FlatnessCertificate cert;
  cert.member = false;
  cert.lambda = lambda;
  cert.support = support;
  std::sort(cert.support.begin(), cert.support.end());
  cert.residual = std::sqrt(res_sq);
  cert.method = method;
  return cert;
}

FlatnessCertificate flatness_certificate(const UnitVector& u, int m, double rho) {
  int n = u.n();
  require(u.unit, "NotUnit", "flatness certificates require a unit vector");
  require(1 <= m && m < n, "BadParams", "need 1 <= m < n");
  require(rho > 0, "BadParams", "need rho > 0");

  std::complex<double> total = u.v.sum();
  std::vector<std::pair<double, int>> order(n);

  auto refine = [&](std::complex<double> lambda0) -> FlatnessCertificate {
    std::complex<double> lambda = lambda0;
    IndexSet support;
    for (int iter = 0; iter < 60; ++iter) {
      for (int j = 0; j < n; ++j) order[j] = {-std::abs(u.v[j] - lambda), j};
      std::sort(order.begin(), order.end());
      support.clear();
      std::complex<double> supp_sum = 0;
      for (int t = 0; t < m; ++t) {
        support.push_back(order[t].second);
        supp_sum += u.v[order[t].second];
      }
      std::complex<double> next = (total - supp_sum) / static_cast<double>(n - m);
      bool settled = std::abs(next - lambda) <= 1e-15 * (1.0 + std::abs(lambda));
      lambda = next;
      if (settled) break;
    }
    FlatnessCertificate cert =
        certificate_for_support(u, support, FlatnessMethod::Alternating);
    return cert;
  };

  FlatnessCertificate best;
  best.residual = std::numeric_limits<double>::infinity();
  auto track = [&](const FlatnessCertificate& c) {
    if (c.residual < best.residual) best = c;
  };
  track(refine({0.0, 0.0}));
  for (int j = 0; j < n && best.residual > 1e-13; ++j) track(refine(u.v[j]));

  if (best.residual <= rho) {
    best.member = true;
    best.method = FlatnessMethod::Alternating;
    return best;
  }

  // Second sound route: heavy concentration forces flatness.
  ConcMode mode = n <= 2000 ? ConcMode::Exact : ConcMode::Fast;
  ConcentrationPoint cp = concentration_argmax(u, rho, mode);
  if (cp.q >= 1.0 - static_cast<double>(m) / n) {
    double root_n = std::sqrt(static_cast<double>(n));
    double r = rho / root_n;
    IndexSet outside;
    for (int j = 0; j < n; ++j)
      if (!(std::abs(u.v[j] - cp.center) < r)) outside.push_back(j);
    if (static_cast<int>(outside.size()) <= m) {
      FlatnessCertificate cert =
          certificate_for_support(u, outside, FlatnessMethod::ConcentrationImplied);
      cert.member = true;
      return cert;
    }
  }
  best.member = false;
  return best;
}

// ---------------------------------------------------------------------------
// Flat net construction.

namespace {

struct NetGeometry {
  int n = 0, m = 0;
  double h = 0;
  long long S = 0;  // lattice ball: sum of squared integer coords <= S

  // Lexicographically first m-superset of the (ascending) index set s.
  IndexSet lex_first_superset(const IndexSet& s) const {
    IndexSet out = s;
    int want = m - static_cast<int>(s.size());
    std::size_t pos = 0;
    for (int j = 0; j < n && want > 0; ++j) {
      while (pos < s.size() && s[pos] < j) ++pos;
      if (pos < s.size() && s[pos] == j) continue;
      out.push_back(j);
      --want;
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  template <typename Fn>
  void enumerate(Fn&& fn) const {  // fn(support, k-array of 2m ints)
    std::vector<int> k(2 * m, 0);
    for_each_subset(n, m, [&](const IndexSet& J) {
      walk(J, k, 0, S, fn);
    });
  }

  template <typename Fn>
  void walk(const IndexSet& J, std::vector<int>& k, int dim, long long rem,
            Fn&& fn) const {
    if (dim == 2 * m) {
      fn(J, k);
      return;
    }
    int top = static_cast<int>(std::sqrt(static_cast<double>(rem)));
    while (static_cast<long long>(top + 1) * (top + 1) <= rem) ++top;
    while (static_cast<long long>(top) * top > rem) --top;
    for (int t = -top; t <= top; ++t) {
      k[dim] = t;
      walk(J, k, dim + 1, rem - static_cast<long long>(t) * t, fn);
    }
  }
};

// Exact count of admissible lattice points: distinct sparse vectors with at
// most m nonzero complex coordinates inside the lattice ball.
long long net_cardinality(int n, int m, long long S) {
  require(m == 1 || S <= 20000, "TooLarge",
          "lattice ball too large for exact counting");
  std::vector<long long> pair_count(S + 1, 0);
  int top = static_cast<int>(std::sqrt(static_cast<double>(S))) + 1;
  for (int a = -top; a <= top; ++a) {
    long long aa = static_cast<long long>(a) * a;
    if (aa > S) continue;
    for (int b = -top; b <= top; ++b) {
      long long s = aa + static_cast<long long>(b) * b;
      if (s <= S) ++pair_count[s];
    }
  }
  pair_count[0] -= 1;  // a complex coordinate must be nonzero

  auto choose = [&](int kk) -> long long {
    long double c = 1;
    for (int t = 1; t <= kk; ++t) c = c * (n - t + 1) / t;
    return static_cast<long long>(c + 0.5L);
  };

  std::vector<long long> cur(S + 1, 0);
  cur[0] = 1;
  long long total = 0;
  for (int kk = 1; kk <= m; ++kk) {
    std::vector<long long> next(S + 1, 0);
    for (long long s = 0; s <= S; ++s) {
      if (cur[s] == 0) continue;
      for (long long t = 0; s + t <= S; ++t)
        if (pair_count[t] != 0) next[s + t] += cur[s] * pair_count[t];
    }
    cur = std::move(next);
    long long w = 0;
    for (long long s = 0; s <= S; ++s) w += cur[s];
    total += choose(kk) * w;
  }
  return total;
}

}  // namespace

void FlatNet::for_each(const std::function<void(const Eigen::VectorXcd&)>& fn) const {
  NetGeometry geo{n, m, spacing, lattice_budget};
  Eigen::VectorXcd out(n);
  IndexSet live;
  geo.enumerate([&](const IndexSet& J, const std::vector<int>& k) {
    live.clear();
    for (int c = 0; c < m; ++c)
      if (k[2 * c] != 0 || k[2 * c + 1] != 0) live.push_back(J[c]);
    if (live.empty()) return;
    if (static_cast<int>(live.size()) < m && geo.lex_first_superset(live) != J)
      return;
    std::complex<double> sum = 0;
    double sumsq = 0;
    for (int c = 0; c < m; ++c) {
      double re = spacing * k[2 * c];
      double im = spacing * k[2 * c + 1];
      sum += std::complex<double>(re, im);
      sumsq += re * re + im * im;
    }
    std::complex<double> mean = sum / static_cast<double>(n);
    double norm_sq = sumsq - std::norm(sum) / n;
    if (norm_sq < 1e-18) return;  // degenerate projection
    double inv = 1.0 / std::sqrt(norm_sq);
    out.setConstant(-mean * inv);
    for (int c = 0; c < m; ++c)
      out[J[c]] = (std::complex<double>(spacing * k[2 * c], spacing * k[2 * c + 1]) -
                   mean) *
                  inv;
    fn(out);
  });
}

FlatNet build_flat_net(int n, int m, double rho, double feasibility_cap,
                       long long materialize_cap) {
  require(n >= 2 && 1 <= m && m < n, "BadParams", "need n >= 2 and 1 <= m < n");
  require(rho > 0, "BadParams", "need rho > 0");
  long double gate = 1;
  for (int t = 1; t <= m; ++t) gate = gate * (n - t + 1) / t;
  gate *= std::pow(static_cast<long double>(13.0 / rho), 2 * m);
  require(gate <= static_cast<long double>(feasibility_cap), "TooLarge",
          "net size estimate exceeds the feasibility cap");

  FlatNet net;
  net.n = n;
  net.m = m;
  net.rho = rho;
  net.spacing = rho / (3.0 * std::sqrt(2.0 * m));
  net.radius = 2.0 + rho / 6.0;
  double ratio = net.radius / net.spacing;
  net.lattice_budget = static_cast<long long>(ratio * ratio * (1 + 1e-12));
  net.cardinality = net_cardinality(n, m, net.lattice_budget);
  net.materialized = net.cardinality <= materialize_cap;
  if (net.materialized) {
    net.points.reserve(static_cast<std::size_t>(net.cardinality));
    long long seen = 0;
    net.for_each([&](const Eigen::VectorXcd& p) {
      ++seen;
      UnitVector u;
      u.v = p;
      u.unit = true;
      u.mean_zero = true;
      net.points.push_back(std::move(u));
    });
    require(seen == net.cardinality, "Internal",
            "net enumeration disagrees with the exact count");
  }
  return net;
}

Eigen::VectorXcd net_candidate_near(const FlatNet& net, const Eigen::VectorXcd& u,
                                    const IndexSet& support) {
  int n = net.n;
  require(static_cast<int>(u.size()) == n, "BadParams", "dimension mismatch");
  require(static_cast<int>(support.size()) == net.m, "BadParams",
          "support must have exactly m entries");
  std::vector<bool> in_supp(n, false);
  for (int j : support) {
    require(0 <= j && j < n, "IndexOutOfRange", "support entry out of range");
    in_supp[j] = true;
  }
  std::complex<double> off_sum = 0;
  int off_count = 0;
  for (int j = 0; j < n; ++j)
    if (!in_supp[j]) {
      off_sum += u[j];
      ++off_count;
    }
  require(off_count > 0, "BadParams", "support covers every coordinate");
  std::complex<double> lambda = off_sum / static_cast<double>(off_count);

  auto round_coords = [&](double scale, std::vector<long long>& k) -> long long {
    long long sumsq = 0;
    for (int c = 0; c < net.m; ++c) {
      std::complex<double> val = (u[support[c]] - lambda) * scale;
      k[2 * c] = std::llround(val.real() / net.spacing);
      k[2 * c + 1] = std::llround(val.imag() / net.spacing);
      sumsq += k[2 * c] * k[2 * c] + k[2 * c + 1] * k[2 * c + 1];
    }
    return sumsq;
  };

  std::vector<long long> k(2 * net.m, 0);
  long long sumsq = round_coords(1.0, k);
  if (sumsq > net.lattice_budget) {
    double shrink =
        0.999 * std::sqrt(static_cast<double>(net.lattice_budget) / sumsq);
    sumsq = round_coords(shrink, k);
  }
  require(sumsq <= net.lattice_budget, "TooLarge",
          "sparse part of u lies outside the net's enumeration ball");

  Eigen::VectorXcd g = Eigen::VectorXcd::Zero(n);
  for (int c = 0; c < net.m; ++c)
    g[support[c]] = std::complex<double>(net.spacing * k[2 * c],
                                         net.spacing * k[2 * c + 1]);
  Eigen::VectorXcd p = g.array() - vec_mean(g);
  double nrm = p.norm();
  require(nrm > 1e-9, "DegenerateVector", "candidate projects to zero");
  return p / nrm;
}

BimodalSets bimodal_sets(const UnitVector& u, int m, double rho) {
  int n = u.n();
  require(u.unit, "NotUnit", "bimodal decomposition requires a unit vector");
  require(1 <= m && m < n, "BadParams", "need 1 <= m < n");
  require(rho > 0 && rho <= 1, "BadParams", "need rho in (0,1]");
  require(n <= 2000, "TooLarge", "bimodal decomposition is limited to n <= 2000");

  double threshold = 1.0 - static_cast<double>(m) / n;
  int k_hi = static_cast<int>(std::ceil(std::log2(1.0 / rho)));
  int k0 = -1;
  for (int k = 0; k <= k_hi; ++k) {
    double q = concentration_function(u, std::ldexp(1.0, -k), ConcMode::Exact);
    if (q < threshold) {
      k0 = k;
      break;
    }
  }
  require(k0 >= 0, "IsFlat",
          "concentration stays high at every dyadic radius down to rho");

  double root_n = std::sqrt(static_cast<double>(n));
  double radius_outer = std::ldexp(1.0, -k0);        // in levy units
  double radius_inner = std::ldexp(1.0, -k0 - 1);
  ConcentrationPoint cp = concentration_argmax(u, radius_inner, ConcMode::Exact);
  std::complex<double> center = cp.center;
  double r_outer = radius_outer / root_n;
  double r_inner = radius_inner / root_n;

  BimodalSets out;
  out.k0 = k0;
  out.lambda0 = center * root_n;
  for (int j = 0; j < n; ++j) {
    double dist = std::abs(u.v[j] - center);
    if (!(dist < r_outer)) out.J1.push_back(j);
    if (dist < r_inner) out.J2.push_back(j);
  }

  constexpr int kSectors = 16;
  std::array<std::vector<int>, kSectors> sectors;
  for (int j : out.J1) {
    double theta = std::arg(u.v[j] - center);  // [-pi, pi]
    int idx = static_cast<int>((theta + std::numbers::pi) /
                               (2 * std::numbers::pi / kSectors));
    idx = std::clamp(idx, 0, kSectors - 1);
    sectors[idx].push_back(j);
  }
  int best = 0;
  for (int s = 1; s < kSectors; ++s)
    if (sectors[s].size() > sectors[best].size()) best = s;
  out.J1_prime = sectors[best];

  out.weak_gap = r_outer - r_inner;  // = r_inner
  out.strong_gap = (std::cos(std::numbers::pi / kSectors) - 0.5) * r_outer;
  return out;
}

SmallBallReport small_ball_mc(const std::vector<std::complex<double>>& v, double r,
                              std::complex<double> center, long long trials,
                              RngStream& rng) {
  require(trials >= 1, "BadParams", "need trials >= 1");
  double norm_sq = 0, max_abs = 0;
  for (auto c : v) {
    norm_sq += std::norm(c);
    max_abs = std::max(max_abs, std::abs(c));
  }
  require(norm_sq > 0, "ZeroVector", "step vector must be nonzero");
  long long hits = 0;
  for (long long t = 0; t < trials; ++t) {
    std::complex<double> s = center;
    for (auto c : v) s += rng.next_bit() ? c : -c;
    if (std::abs(s) <= r) ++hits;
  }
  SmallBallReport rep;
  rep.trials = trials;
  rep.estimate = static_cast<double>(hits) / trials;
  rep.bound_shape = (r + max_abs) / std::sqrt(norm_sq);
  rep.fitted_c = rep.bound_shape > 0 ? rep.estimate / rep.bound_shape : 0.0;
  return rep;
}

double small_ball_exact(const std::vector<std::complex<double>>& v, double r,
                        std::complex<double> center) {
  int len = static_cast<int>(v.size());
  require(len <= 20, "TooLarge", "exact enumeration is limited to 20 steps");
  double norm_sq = 0;
  for (auto c : v) norm_sq += std::norm(c);
  require(norm_sq > 0, "ZeroVector", "step vector must be nonzero");
  long long hits = 0;
  for (long long mask = 0; mask < (1LL << len); ++mask) {
    std::complex<double> s = center;
    for (int j = 0; j < len; ++j) s += ((mask >> j) & 1) ? v[j] : -v[j];
    if (std::abs(s) <= r) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(1LL << len);
}

TensorizationReport tensorization_check(double p0, double eps0, int n, long long trials,
                                        RngStream& rng, double c1) {
  require(0 <= p0 && p0 < 1, "BadParams", "need p0 in [0,1)");
  require(eps0 > 0 && c1 > 0, "BadParams", "need eps0 > 0 and c1 > 0");
  require(n >= 1 && trials >= 1, "BadParams", "need n >= 1 and trials >= 1");

  TensorizationReport rep;
  rep.p0 = p0;
  rep.eps0 = eps0;
  rep.c1 = c1;
  rep.n = n;
  rep.trials = trials;

  std::vector<int> sizes;
  for (int s : {n / 4, n / 2, n})
    if (s >= 1 && (sizes.empty() || sizes.back() != s)) sizes.push_back(s);

  // Two-point law: zeta = 0 w.p. p0, else 2*eps0; the event reduces to the
  // count of heavy coordinates.
  for (int s : sizes) {
    int heavy_cap = static_cast<int>(std::floor(c1 * s / 4.0 + 1e-12));
    long long ok = 0;
    for (long long t = 0; t < trials; ++t) {
      int heavy = 0;
      for (int j = 0; j < s; ++j)
        if (!rng.next_bernoulli(p0)) ++heavy;
      if (heavy <= heavy_cap) ++ok;
    }
    rep.curve.emplace_back(s, static_cast<double>(ok) / trials);
  }
  rep.estimate = rep.curve.back().second;
  int cap_n = static_cast<int>(std::floor(c1 * n / 4.0 + 1e-12));
  rep.exact = cap_n >= n ? 1.0 : 1.0 - binomial_upper_tail(n, 1.0 - p0, cap_n + 1);

  double floor_p = 0.5 / static_cast<double>(trials);
  if (rep.curve.size() >= 2) {
    auto [s_a, p_a] = rep.curve.front();
    auto [s_b, p_b] = rep.curve.back();
    rep.decay_rate = (std::log(std::max(p_a, floor_p)) -
                      std::log(std::max(p_b, floor_p))) /
                     static_cast<double>(s_b - s_a);
  }
  return rep;
}

FlatSample random_flat_sample(int n, int m, double rho, RngStream& rng) {
  require(n >= 2 && 1 <= m && m < n, "BadParams", "need 1 <= m < n");
  require(rho > 0 && rho <= 1, "BadParams", "need rho in (0,1]");
  for (;;) {
    IndexSet support = rng.next_subset(n, m);
    std::sort(support.begin(), support.end());
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
    for (int j : support) v[j] = rng.next_complex_normal();
    double proj_sq = v.squaredNorm() - std::norm(v.sum()) / n;
    if (proj_sq < 1e-12) continue;
    v *= 1.1 / std::sqrt(proj_sq);  // ||P v|| = 1.1
    if (v.norm() > 1.5) continue;   // keep the sparse part well inside radius 2

    Eigen::VectorXcd w(n);
    for (int j = 0; j < n; ++j) w[j] = rng.next_complex_normal();
    double wn = w.norm();
    if (wn < 1e-9) continue;
    w *= (rho / 3.0) * rng.next_double() / wn;  // ||w|| <= rho/3

    FlatSample out;
    out.u = project_normalize_mean_zero(v + w);
    out.support = std::move(support);
    return out;
  }
}

}  // namespace rdl
