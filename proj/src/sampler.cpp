#include "rdl/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rdl {

namespace {

// Mutable dense 0-1 state for the proposal walk, packed 64 entries per word.
class BitMatrix {
public:
  explicit BitMatrix(int n) : n_(n), words_per_row_((n + 63) / 64), bits_(static_cast<std::size_t>(n) * words_per_row_, 0) {}

  bool get(int i, int j) const {
    return (bits_[static_cast<std::size_t>(i) * words_per_row_ + j / 64] >> (j % 64)) & 1u;
  }
  void flip(int i, int j) {
    bits_[static_cast<std::size_t>(i) * words_per_row_ + j / 64] ^= 1ull << (j % 64);
  }
  void set(int i, int j) {
    bits_[static_cast<std::size_t>(i) * words_per_row_ + j / 64] |= 1ull << (j % 64);
  }

  std::vector<std::vector<int>> out_lists(int d) const {
    std::vector<std::vector<int>> out(n_);
    for (int i = 0; i < n_; ++i) {
      out[i].reserve(d);
      for (int j = 0; j < n_; ++j)
        if (get(i, j)) out[i].push_back(j);
    }
    return out;
  }

private:
  int n_;
  int words_per_row_;
  std::vector<std::uint64_t> bits_;
};

int draw_distinct(RngStream& rng, int n, int avoid) {
  int v = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - 1)));
  return v + (v >= avoid ? 1 : 0);
}

// Sorted set difference a \ b for sorted vectors.
IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(const IndexSet& a, const IndexSet& sorted_b) {
  for (int v : a)
    if (!std::binary_search(sorted_b.begin(), sorted_b.end(), v)) return false;
  return true;
}

}  // namespace

RegularDigraph circulant_digraph(int n, int d) {
  require(n >= 1 && 1 <= d && d <= n, "BadDegree", "need 1 <= d <= n");
  std::vector<std::vector<int>> out(n);
  for (int i = 0; i < n; ++i) {
    out[i].reserve(d);
    for (int k = 0; k < d; ++k) out[i].push_back((i + k) % n);
  }
  return RegularDigraph::from_out_lists(n, d, std::move(out));
}

RegularDigraph simple_switch(const RegularDigraph& A, int i1, int i2, int j1, int j2) {
  require(i1 != i2 && j1 != j2, "BadParams", "simple_switch needs distinct rows and columns");
  bool a11 = A.has_edge(i1, j1), a12 = A.has_edge(i1, j2);
  bool a21 = A.has_edge(i2, j1), a22 = A.has_edge(i2, j2);
  bool identity_pattern = a11 && a22 && !a12 && !a21;
  bool anti_pattern = a12 && a21 && !a11 && !a22;
  if (!identity_pattern && !anti_pattern) return A;
  auto out = A.out_lists();
  auto swap_edge = [&](int row, int from, int to) {
    auto& lst = out[row];
    lst.erase(std::find(lst.begin(), lst.end(), from));
    lst.push_back(to);
  };
  if (identity_pattern) {
    swap_edge(i1, j1, j2);
    swap_edge(i2, j2, j1);
  } else {
    swap_edge(i1, j2, j1);
    swap_edge(i2, j1, j2);
  }
  return RegularDigraph::from_out_lists(A.n(), A.d(), std::move(out));
}

long long default_chain_steps(int n, int d) {
  double nd = static_cast<double>(n) * d;
  return 10LL * n * d * static_cast<long long>(std::ceil(std::log(nd + 1.0)));
}

RegularDigraph chain_sample(int n, int d, long long steps, RngStream& rng) {
  require(n >= 2 && 1 <= d && d <= n - 1, "BadDegree",
          "chain needs n >= 2 and 1 <= d <= n-1");
  require(steps >= 0, "BadParams", "steps must be >= 0");
  BitMatrix M(n);
  // Live edge list: proposals pick edges, not index tuples, so the acceptance
  // rate stays of order one even when d << n.
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(n) * d);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < d; ++k) {
      int j = (i + k) % n;
      M.set(i, j);
      edges.push_back({i, j});
    }
  const std::uint64_t m = edges.size();
  for (long long t = 0; t < steps; ++t) {
    std::uint64_t k1 = rng.next_below(m);
    std::uint64_t k2 = rng.next_below(m - 1);
    if (k2 >= k1) ++k2;
    auto [i1, j1] = edges[k1];
    auto [i2, j2] = edges[k2];
    if (i1 != i2 && j1 != j2 && !M.get(i1, j2) && !M.get(i2, j1)) {
      M.flip(i1, j1);
      M.flip(i1, j2);
      M.flip(i2, j1);
      M.flip(i2, j2);
      edges[k1].second = j2;
      edges[k2].second = j1;
    }
  }
  return RegularDigraph::from_out_lists(n, d, M.out_lists(d));
}

std::optional<RegularDigraph> rejection_sample(int n, int d, RngStream& rng,
                                               long long max_tries, int cap_n) {
  require(n >= 1 && 1 <= d && d <= n, "BadDegree", "need 1 <= d <= n");
  require(n <= cap_n, "TooLarge",
          "rejection sampling is infeasible beyond n = " + std::to_string(cap_n));
  double p = static_cast<double>(d) / n;
  for (long long t = 0; t < max_tries; ++t) {
    std::vector<std::vector<int>> out(n);
    std::vector<int> col_sum(n, 0);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      out[i].reserve(d);
      for (int j = 0; j < n; ++j)
        if (rng.next_bernoulli(p)) out[i].push_back(j);
      if (static_cast<int>(out[i].size()) != d) ok = false;
      for (int j : out[i])
        if (++col_sum[j] > d) ok = false;
    }
    if (!ok) continue;
    for (int j = 0; j < n; ++j)
      if (col_sum[j] != d) ok = false;
    if (ok) return RegularDigraph::from_out_lists(n, d, std::move(out));
  }
  return std::nullopt;
}

namespace {

void enumerate_rows(int n, int d, int row, std::vector<int>& col_need,
                    std::vector<std::vector<int>>& out,
                    std::vector<RegularDigraph>& result) {
  if (row == n) {
    result.push_back(RegularDigraph::from_out_lists(n, d, out));
    return;
  }
  int remaining_rows = n - row;
  for (int j = 0; j < n; ++j)
    if (col_need[j] > remaining_rows) return;
  // Walk the d-subsets of columns in lexicographic order.
  std::vector<int> pick(d);
  for (int k = 0; k < d; ++k) pick[k] = k;
  for (;;) {
    bool feasible = true;
    for (int k = 0; k < d && feasible; ++k)
      if (col_need[pick[k]] == 0) feasible = false;
    if (feasible) {
      for (int k = 0; k < d; ++k) --col_need[pick[k]];
      out[row] = pick;
      enumerate_rows(n, d, row + 1, col_need, out, result);
      for (int k = 0; k < d; ++k) ++col_need[pick[k]];
    }
    int k = d - 1;
    while (k >= 0 && pick[k] == n - d + k) --k;
    if (k < 0) break;
    ++pick[k];
    for (int l = k + 1; l < d; ++l) pick[l] = pick[l - 1] + 1;
  }
}

}  // namespace

std::vector<RegularDigraph> enumerate_regular(int n, int d, int cap_n) {
  require(n >= 1 && 1 <= d && d <= n, "BadDegree", "need 1 <= d <= n");
  require(n <= cap_n, "TooLarge",
          "enumeration is infeasible beyond n = " + std::to_string(cap_n));
  std::vector<RegularDigraph> result;
  std::vector<int> col_need(n, d);
  std::vector<std::vector<int>> out(n);
  enumerate_rows(n, d, 0, col_need, out, result);
  return result;
}

RegularDigraph neighborhood_switch(const RegularDigraph& A, const SwitchSpec& spec) {
  require(spec.i1 != spec.i2, "InvalidSpec", "row pair must be distinct");
  require(!spec.J.empty() && spec.J.size() == spec.Jprime.size(), "InvalidSpec",
          "J and Jprime must be nonempty and equal size");
  IndexSet J = spec.J, Jp = spec.Jprime;
  std::sort(J.begin(), J.end());
  std::sort(Jp.begin(), Jp.end());
  require(std::adjacent_find(J.begin(), J.end()) == J.end() &&
              std::adjacent_find(Jp.begin(), Jp.end()) == Jp.end(),
          "InvalidSpec", "J and Jprime must not repeat vertices");
  IndexSet overlap;
  std::set_intersection(J.begin(), J.end(), Jp.begin(), Jp.end(),
                        std::back_inserter(overlap));
  require(overlap.empty(), "InvalidSpec", "J and Jprime must be disjoint");

  auto all_edges = [&](int row, const IndexSet& S) {
    for (int j : S)
      if (!A.has_edge(row, j)) return false;
    return true;
  };
  auto no_edges = [&](int row, const IndexSet& S) {
    for (int j : S)
      if (A.has_edge(row, j)) return false;
    return true;
  };

  int lo = spec.i1, hi = spec.i2;
  // J out of lo only and Jprime out of hi only, or the mirrored configuration.
  bool forward = all_edges(lo, J) && no_edges(hi, J) && all_edges(hi, Jp) && no_edges(lo, Jp);
  bool mirrored = all_edges(hi, J) && no_edges(lo, J) && all_edges(lo, Jp) && no_edges(hi, Jp);
  if (!forward && !mirrored) return A;
  if (mirrored) std::swap(lo, hi);

  auto out = A.out_lists();
  auto replace_block = [&](int row, const IndexSet& remove, const IndexSet& add) {
    IndexSet next = set_difference(out[row], remove);
    next.insert(next.end(), add.begin(), add.end());
    out[row] = std::move(next);
  };
  replace_block(lo, J, Jp);
  replace_block(hi, Jp, J);
  return RegularDigraph::from_out_lists(A.n(), A.d(), std::move(out));
}

std::vector<int> lexicographic_pairing(int n) {
  int half = n / 2;
  std::vector<int> pi(half);
  for (int i = 0; i < half; ++i) pi[i] = half + i;
  return pi;
}

namespace {

void validate_coupling_inputs(const RegularDigraph& A, const IndexSet& L,
                              const IndexSet& Lprime, const std::vector<int>& pi) {
  int n = A.n();
  int half = n / 2;
  require(!L.empty() && !Lprime.empty(), "BadParams", "L and Lprime must be nonempty");
  IndexSet sl = L, sp = Lprime;
  std::sort(sl.begin(), sl.end());
  std::sort(sp.begin(), sp.end());
  IndexSet overlap;
  std::set_intersection(sl.begin(), sl.end(), sp.begin(), sp.end(),
                        std::back_inserter(overlap));
  require(overlap.empty(), "BadParams", "L and Lprime must be disjoint");
  for (int v : sl) require(0 <= v && v < n, "IndexOutOfRange", "L entry out of range");
  for (int v : sp) require(0 <= v && v < n, "IndexOutOfRange", "Lprime entry out of range");
  require(static_cast<int>(pi.size()) == half, "BadParams",
          "pairing must map [0, floor(n/2))");
  std::vector<bool> seen(n, false);
  for (int v : pi) {
    require(half <= v && v < 2 * half, "BadParams", "pairing image out of range");
    require(!seen[v], "BadParams", "pairing must be a bijection");
    seen[v] = true;
  }
}

// Sorted intersection of a sorted list with set L given as a mask.
IndexSet masked(const std::vector<int>& sorted_list, const std::vector<bool>& mask) {
  IndexSet out;
  for (int v : sorted_list)
    if (mask[v]) out.push_back(v);
  return out;
}

}  // namespace

CouplingPlan build_coupling(const RegularDigraph& A, const IndexSet& L,
                            const IndexSet& Lprime, const std::vector<int>& pi,
                            RngStream& rng) {
  validate_coupling_inputs(A, L, Lprime, pi);
  int n = A.n();
  int half = n / 2;
  std::vector<bool> in_L(n, false), in_Lp(n, false);
  for (int v : L) in_L[v] = true;
  for (int v : Lprime) in_Lp[v] = true;

  CouplingPlan plan;
  plan.L = L;
  plan.Lprime = Lprime;
  plan.pi = pi;
  plan.J_map.assign(half, {});
  plan.Jprime_map.assign(half, {});

  for (int i = 0; i < half; ++i) {
    int partner = pi[i];
    IndexSet L_low = masked(A.out_neighbors(i), in_L);
    IndexSet L_high = masked(A.out_neighbors(partner), in_L);
    // Qualification: one row of the pair has out-edges in L, its partner has
    // none, and the partner offers enough unshared out-edges in Lprime.
    if (L_high.empty() && !L_low.empty()) {
      IndexSet avail;
      for (int v : masked(A.out_neighbors(partner), in_Lp))
        if (!A.has_edge(i, v)) avail.push_back(v);
      if (avail.size() >= L_low.size()) {
        plan.I_plus.push_back(i);
        plan.J_map[i] = L_low;
        auto idx = rng.next_subset(static_cast<int>(avail.size()),
                                   static_cast<int>(L_low.size()));
        IndexSet chosen;
        for (int k : idx) chosen.push_back(avail[k]);
        std::sort(chosen.begin(), chosen.end());
        plan.Jprime_map[i] = std::move(chosen);
      }
    } else if (L_low.empty() && !L_high.empty()) {
      IndexSet avail;
      for (int v : masked(A.out_neighbors(i), in_Lp))
        if (!A.has_edge(partner, v)) avail.push_back(v);
      if (avail.size() >= L_high.size()) {
        plan.I_minus.push_back(i);
        plan.J_map[i] = L_high;
        auto idx = rng.next_subset(static_cast<int>(avail.size()),
                                   static_cast<int>(L_high.size()));
        IndexSet chosen;
        for (int k : idx) chosen.push_back(avail[k]);
        std::sort(chosen.begin(), chosen.end());
        plan.Jprime_map[i] = std::move(chosen);
      }
    }
  }
  plan.xi.resize(n);
  for (int i = 0; i < n; ++i) plan.xi[i] = rng.next_bit() ? 1 : 0;
  return plan;
}

RegularDigraph apply_coupling(const RegularDigraph& A, const CouplingPlan& plan) {
  validate_coupling_inputs(A, plan.L, plan.Lprime, plan.pi);
  require(static_cast<int>(plan.xi.size()) == A.n(), "PlanMismatch",
          "coin vector has wrong length");
  int n = A.n();
  std::vector<bool> in_L(n, false), in_Lp(n, false);
  for (int v : plan.L) in_L[v] = true;
  for (int v : plan.Lprime) in_Lp[v] = true;

  // Re-derive the qualification data from A; the plan must agree with it.
  auto expect_member = [&](const IndexSet& set, int i) {
    return std::binary_search(set.begin(), set.end(), i);
  };
  int half = n / 2;
  require(static_cast<int>(plan.J_map.size()) == half &&
              static_cast<int>(plan.Jprime_map.size()) == half,
          "PlanMismatch", "per-pair set maps have wrong length");

  RegularDigraph current = A;
  for (int i = 0; i < half; ++i) {
    int partner = plan.pi[i];
    IndexSet L_low = masked(A.out_neighbors(i), in_L);
    IndexSet L_high = masked(A.out_neighbors(partner), in_L);
    bool plus = false, minus = false;
    if (L_high.empty() && !L_low.empty()) {
      IndexSet avail;
      for (int v : masked(A.out_neighbors(partner), in_Lp))
        if (!A.has_edge(i, v)) avail.push_back(v);
      plus = avail.size() >= L_low.size();
      if (plus) {
        require(plan.J_map[i] == L_low, "PlanMismatch",
                "plan J set disagrees with the digraph");
        require(plan.Jprime_map[i].size() == L_low.size() &&
                    is_subset(plan.Jprime_map[i], avail),
                "PlanMismatch", "plan Jprime set is not an admissible choice");
      }
    } else if (L_low.empty() && !L_high.empty()) {
      IndexSet avail;
      for (int v : masked(A.out_neighbors(i), in_Lp))
        if (!A.has_edge(partner, v)) avail.push_back(v);
      minus = avail.size() >= L_high.size();
      if (minus) {
        require(plan.J_map[i] == L_high, "PlanMismatch",
                "plan J set disagrees with the digraph");
        require(plan.Jprime_map[i].size() == L_high.size() &&
                    is_subset(plan.Jprime_map[i], avail),
                "PlanMismatch", "plan Jprime set is not an admissible choice");
      }
    }
    require(plus == expect_member(plan.I_plus, i) && minus == expect_member(plan.I_minus, i),
            "PlanMismatch", "plan qualification sets disagree with the digraph");
    if ((plus || minus) && plan.xi[i]) {
      SwitchSpec spec{i, partner, plan.J_map[i], plan.Jprime_map[i]};
      RegularDigraph next = neighborhood_switch(current, spec);
      require(!(next == current), "PlanMismatch",
              "qualified switching failed to modify the digraph");
      current = std::move(next);
    }
  }
  return current;
}

}  // namespace rdl
