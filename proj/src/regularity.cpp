#include "rdl/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "rdl/errors.hpp"

namespace rdl {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::CertifiedPass: return "certified-pass";
    case Verdict::CertifiedFail: return "certified-fail";
    case Verdict::SampledPass: return "sampled-pass";
    default: return "sampled-fail";
  }
}

Json RegularityReport::to_json() const {
  Json j;
  j["property"] = property;
  j["parameters"] = parameters;
  j["verdict"] = to_string(verdict);
  j["witness"] = witness;
  j["trials"] = trials;
  j["details"] = details;
  return j;
}

namespace {

// Saturating sum of binomial coefficients C(n,1..kmax), capped at `cap`.
std::uint64_t subset_count_upto(int n, int kmax, std::uint64_t cap) {
  long double total = 0, c = 1;  // c = C(n,k)
  for (int k = 1; k <= kmax; ++k) {
    c = c * (n - k + 1) / k;
    total += c;
    if (total > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::uint64_t>(total);
}

// Visit every k-subset of {0..n-1} in lexicographic order until fn says stop.
template <typename Fn>
void for_each_subset(int n, int k, Fn&& fn) {
  IndexSet pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  for (;;) {
    if (!fn(pick)) return;
    int i = k - 1;
    while (i >= 0 && pick[i] == n - k + i) --i;
    if (i < 0) return;
    ++pick[i];
    for (int l = i + 1; l < k; ++l) pick[l] = pick[l - 1] + 1;
  }
}

// Integer size in [lo, hi] drawn with log-uniform bias toward the low end.
int draw_size_log_uniform(RngStream& rng, int lo, int hi) {
  if (lo >= hi) return lo;
  double a = std::log(static_cast<double>(lo));
  double b = std::log(static_cast<double>(hi) + 1.0);
  int s = static_cast<int>(std::exp(a + rng.next_double() * (b - a)));
  return std::clamp(s, lo, hi);
}

IndexSet draw_subset(RngStream& rng, int n, int k) {
  IndexSet s = rng.next_subset(n, k);
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

RegularityReport check_codegree(const RegularDigraph& A) {
  int n = A.n();
  int d = A.d();
  RegularityReport rep;
  rep.property = "codegree";
  rep.parameters = Json{{"threshold", d / 4.0}};

  std::unordered_map<long long, int> pair_count;
  pair_count.reserve(static_cast<std::size_t>(n) * d);
  for (int c = 0; c < n; ++c) {
    const auto& col = A.in_neighbors(c);
    for (std::size_t a = 0; a < col.size(); ++a)
      for (std::size_t b = a + 1; b < col.size(); ++b)
        ++pair_count[static_cast<long long>(col[a]) * n + col[b]];
  }
  int max_codeg = 0;
  long long arg_a = 0, arg_b = (n > 1 ? 1 : 0);
  for (const auto& [key, cnt] : pair_count) {
    if (cnt > max_codeg) {
      max_codeg = cnt;
      arg_a = key / n;
      arg_b = key % n;
    }
  }
  long long total_pairs = static_cast<long long>(n) * (n - 1) / 2;
  rep.trials = total_pairs;
  bool ok = max_codeg <= d / 4.0;
  rep.verdict = ok ? Verdict::CertifiedPass : Verdict::CertifiedFail;
  if (!ok)
    rep.witness = Json{{"pair", Json::array({arg_a + 1, arg_b + 1})},
                       {"codegree", max_codeg}};

  double mean = total_pairs > 0
                    ? static_cast<double>(n) * d * (d - 1) / 2.0 / total_pairs
                    : 0.0;
  Json tails = Json::array();
  double dd_over_n = static_cast<double>(d) * d / n;
  for (int K = 1; K <= 3; ++K) {
    double thresh = (1.0 + K) * dd_over_n;
    long long exceed = 0;
    for (const auto& kv : pair_count)
      if (kv.second > thresh) ++exceed;
    tails.push_back(Json{{"K", K},
                         {"threshold", thresh},
                         {"fraction", total_pairs > 0
                                          ? static_cast<double>(exceed) / total_pairs
                                          : 0.0},
                         {"tail_bound", std::exp(-K * K / (4.0 + 2.0 * K) * dd_over_n)}});
  }
  rep.details = Json{{"max_codegree", max_codeg},
                     {"argmax_pair", Json::array({arg_a + 1, arg_b + 1})},
                     {"mean_codegree", mean},
                     {"tails", tails}};
  return rep;
}

RegularityReport check_discrepancy(const RegularDigraph& A, int n0, double delta,
                                   long long budget, RngStream& rng) {
  int n = A.n();
  int d = A.d();
  require(1 <= n0 && n0 <= n, "BadParams", "need 1 <= n0 <= n");
  require(delta > 0, "BadParams", "need delta > 0");
  require(budget >= 1, "BadParams", "need budget >= 1");

  RegularityReport rep;
  rep.property = "discrepancy";
  rep.parameters = Json{{"n0", n0}, {"delta", delta}, {"budget", budget}};
  double p = static_cast<double>(d) / n;

  auto test_pair = [&](const IndexSet& I, const IndexSet& J) -> bool {
    double mu = p * static_cast<double>(I.size()) * static_cast<double>(J.size());
    long long e = edge_count(A, I, J);
    if (std::abs(e - mu) < delta * mu) return true;
    rep.witness = Json{{"I", index_set_to_json(I)},
                       {"J", index_set_to_json(J)},
                       {"edges", e},
                       {"expected", mu},
                       {"bound", delta * mu}};
    return false;
  };

  if (n0 >= n) {  // no qualifying sets at all
    rep.verdict = Verdict::CertifiedPass;
    rep.details = Json{{"mode", "vacuous"}};
    return rep;
  }

  bool certified = 2 * n < 63 && (1ULL << (2 * n)) <= static_cast<std::uint64_t>(budget);
  if (certified) {
    std::vector<IndexSet> big;  // every subset larger than n0
    for (int k = n0 + 1; k <= n; ++k)
      for_each_subset(n, k, [&](const IndexSet& s) {
        big.push_back(s);
        return true;
      });
    bool ok = true;
    for (const auto& I : big) {
      for (const auto& J : big) {
        ++rep.trials;
        if (!test_pair(I, J)) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    rep.verdict = ok ? Verdict::CertifiedPass : Verdict::CertifiedFail;
    rep.details = Json{{"mode", "exhaustive"}, {"qualifying_sets", big.size()}};
    return rep;
  }

  bool ok = true;
  for (long long t = 0; t < budget && ok; ++t) {
    int si = draw_size_log_uniform(rng, n0 + 1, n);
    int sj = draw_size_log_uniform(rng, n0 + 1, n);
    IndexSet I = draw_subset(rng, n, si);
    IndexSet J = draw_subset(rng, n, sj);
    ++rep.trials;
    ok = test_pair(I, J);
  }
  rep.verdict = ok ? Verdict::SampledPass : Verdict::SampledFail;
  rep.details = Json{{"mode", "sampled"}};
  return rep;
}

RegularityReport check_expansion(const RegularDigraph& A, double kappa,
                                 long long budget, RngStream& rng) {
  int n = A.n();
  int d = A.d();
  require(kappa > 0 && kappa < 1, "BadParams", "need kappa in (0,1)");
  require(budget >= 1, "BadParams", "need budget >= 1");

  RegularityReport rep;
  rep.property = "expansion";
  rep.parameters = Json{{"kappa", kappa}, {"budget", budget}};
  int m_max = std::min<long long>(
      n, static_cast<long long>(std::floor(n / (2.0 * kappa * d))));

  auto test_subset = [&](const IndexSet& J) -> bool {
    auto hit = in_neighborhood(A, J);
    double bound = kappa * d * static_cast<double>(J.size());
    if (static_cast<double>(hit.size()) > bound) return true;
    rep.witness = Json{{"J", index_set_to_json(J)},
                       {"neighborhood_size", hit.size()},
                       {"bound", bound}};
    return false;
  };

  if (m_max < 1) {
    rep.verdict = Verdict::CertifiedPass;
    rep.details = Json{{"mode", "vacuous"}, {"max_size", m_max}};
    return rep;
  }

  std::uint64_t count = subset_count_upto(n, m_max, static_cast<std::uint64_t>(budget));
  if (count <= static_cast<std::uint64_t>(budget)) {
    bool ok = true;
    for (int k = 1; k <= m_max && ok; ++k)
      for_each_subset(n, k, [&](const IndexSet& J) {
        ++rep.trials;
        ok = test_subset(J);
        return ok;
      });
    rep.verdict = ok ? Verdict::CertifiedPass : Verdict::CertifiedFail;
    rep.details = Json{{"mode", "exhaustive"}, {"max_size", m_max}};
    return rep;
  }

  bool ok = true;
  for (long long t = 0; t < budget && ok; ++t) {
    int k = draw_size_log_uniform(rng, 1, m_max);
    IndexSet J = draw_subset(rng, n, k);
    ++rep.trials;
    ok = test_subset(J);
  }
  rep.verdict = ok ? Verdict::SampledPass : Verdict::SampledFail;
  rep.details = Json{{"mode", "sampled"}, {"max_size", m_max}};
  return rep;
}

RegularityReport verify_expansion_consequences(const RegularDigraph& A, double kappa,
                                               long long budget, RngStream& rng) {
  int n = A.n();
  int d = A.d();
  require(kappa > 0 && kappa < 1, "BadParams", "need kappa in (0,1)");
  require(budget >= 1, "BadParams", "need budget >= 1");

  RegularityReport membership = check_expansion(A, kappa, budget, rng);
  require(membership.pass(), "PrerequisiteMissing",
          "expansion membership could not be established at kappa = " +
              std::to_string(kappa));

  RegularityReport rep;
  rep.property = "expansion-consequences";
  rep.parameters = Json{{"kappa", kappa}, {"budget", budget}};
  int m_max = std::min<long long>(
      n, static_cast<long long>(std::floor(n / (2.0 * kappa * d))));
  int r_max = static_cast<int>(std::ceil(2.0 / kappa));

  auto test_small = [&](const IndexSet& J, int r) -> bool {
    auto hit = threshold_neighborhood(A, J, r, ThresholdMode::le);
    double bound = (kappa - 1.0 / (r + 1)) * d * static_cast<double>(J.size());
    if (static_cast<double>(hit.size()) >= bound) return true;
    rep.witness = Json{{"part", 1},
                       {"J", index_set_to_json(J)},
                       {"r", r},
                       {"neighborhood_size", hit.size()},
                       {"bound", bound}};
    return false;
  };
  auto test_large = [&](const IndexSet& J, int r) -> bool {
    auto hit = threshold_neighborhood(A, J, r, ThresholdMode::gt);
    double bound = n / 8.0;
    if (static_cast<double>(hit.size()) > bound) return true;
    rep.witness = Json{{"part", 2},
                       {"J", index_set_to_json(J)},
                       {"r", r},
                       {"neighborhood_size", hit.size()},
                       {"bound", bound}};
    return false;
  };
  auto r_hi_large = [&](int size) {
    return static_cast<int>(std::floor(kappa * d * size / (4.0 * n)));
  };

  // Work estimate to decide exhaustive vs sampled.
  std::uint64_t cap = static_cast<std::uint64_t>(budget);
  std::uint64_t part1 = subset_count_upto(n, m_max, cap);
  bool exhaustive =
      part1 <= cap && part1 * static_cast<std::uint64_t>(r_max) <= cap;
  std::uint64_t part2 = 0;
  if (exhaustive) {
    long double c = 1;
    for (int k = 1; k <= n; ++k) {
      c = c * (n - k + 1) / k;
      if (k > m_max) part2 += static_cast<std::uint64_t>(c) * r_hi_large(k);
      if (part1 * r_max + part2 > cap) {
        exhaustive = false;
        break;
      }
    }
  }

  bool ok = true;
  if (exhaustive) {
    for (int k = 1; k <= m_max && ok; ++k)
      for_each_subset(n, k, [&](const IndexSet& J) {
        for (int r = 1; r <= r_max && ok; ++r) {
          ++rep.trials;
          ok = test_small(J, r);
        }
        return ok;
      });
    for (int k = m_max + 1; k <= n && ok; ++k) {
      if (r_hi_large(k) < 1) continue;
      for_each_subset(n, k, [&](const IndexSet& J) {
        for (int r = 1; r <= r_hi_large(k) && ok; ++r) {
          ++rep.trials;
          ok = test_large(J, r);
        }
        return ok;
      });
    }
    rep.verdict = ok ? Verdict::CertifiedPass : Verdict::CertifiedFail;
  } else {
    // Smallest large-set size whose r range is nonempty.
    int k_lo = std::max<long long>(
        m_max + 1, static_cast<long long>(std::ceil(4.0 * n / (kappa * d))));
    bool part2_possible = k_lo <= n;
    long long half = part2_possible ? budget / 2 : budget;
    for (long long t = 0; t < half && ok && m_max >= 1; ++t) {
      int k = draw_size_log_uniform(rng, 1, m_max);
      IndexSet J = draw_subset(rng, n, k);
      int r = 1 + static_cast<int>(rng.next_below(r_max));
      ++rep.trials;
      ok = test_small(J, r);
    }
    for (long long t = half; t < budget && ok && part2_possible; ++t) {
      int k = k_lo + static_cast<int>(rng.next_below(n - k_lo + 1));
      IndexSet J = draw_subset(rng, n, k);
      int r = 1 + static_cast<int>(rng.next_below(r_hi_large(k)));
      ++rep.trials;
      ok = test_large(J, r);
    }
    rep.verdict = ok ? Verdict::SampledPass : Verdict::SampledFail;
  }
  rep.details = Json{{"mode", exhaustive ? "exhaustive" : "sampled"},
                     {"max_small_size", m_max},
                     {"r_max", r_max},
                     {"membership_verdict", to_string(membership.verdict)}};
  return rep;
}

}  // namespace rdl
