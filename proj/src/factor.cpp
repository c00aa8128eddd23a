#include "rdl/factor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include "rdl/errors.hpp"
#include "rdl/sampler.hpp"
#include "rdl/stats.hpp"

namespace rdl {

namespace {

void validate_zero_one(const Eigen::MatrixXd& B) {
  require(B.rows() == B.cols() && B.rows() >= 1, "BadParams",
          "B must be square and nonempty");
  for (Eigen::Index i = 0; i < B.rows(); ++i)
    for (Eigen::Index j = 0; j < B.cols(); ++j)
      require(B(i, j) == 0.0 || B(i, j) == 1.0, "BadParams",
              "B must be a 0-1 matrix");
}

void validate_degree(int n, int d) {
  require(1 <= d && d <= n, "BadParams", "need 1 <= d <= n");
}

// Deterministic Dinic max-flow; edges keep insertion order, so the flow (and
// thus the extracted factor) is a pure function of the input.
class MaxFlow {
public:
  explicit MaxFlow(int nodes) : head_(nodes) {}

  int add_edge(int from, int to, long long cap) {
    int id = static_cast<int>(to_.size());
    head_[from].push_back(id);
    to_.push_back(to);
    cap_.push_back(cap);
    head_[to].push_back(id + 1);
    to_.push_back(from);
    cap_.push_back(0);
    return id;
  }

  long long run(int source, int sink) {
    long long total = 0;
    while (bfs(source, sink)) {
      iter_.assign(head_.size(), 0);
      long long pushed;
      while ((pushed = dfs(source, sink,
                           std::numeric_limits<long long>::max())) > 0)
        total += pushed;
    }
    return total;
  }

  long long residual(int edge_id) const { return cap_[edge_id]; }
  long long flow_on(int edge_id) const { return cap_[edge_id ^ 1]; }

  // Source side of the min-cut: nodes reachable in the residual graph after a
  // maximal flow.
  std::vector<bool> reachable(int source) const {
    std::vector<bool> seen(head_.size(), false);
    std::queue<int> queue;
    seen[source] = true;
    queue.push(source);
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop();
      for (int id : head_[u]) {
        if (cap_[id] > 0 && !seen[to_[id]]) {
          seen[to_[id]] = true;
          queue.push(to_[id]);
        }
      }
    }
    return seen;
  }

private:
  bool bfs(int source, int sink) {
    level_.assign(head_.size(), -1);
    std::queue<int> queue;
    level_[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop();
      for (int id : head_[u]) {
        if (cap_[id] > 0 && level_[to_[id]] < 0) {
          level_[to_[id]] = level_[u] + 1;
          queue.push(to_[id]);
        }
      }
    }
    return level_[sink] >= 0;
  }

  long long dfs(int u, int sink, long long limit) {
    if (u == sink) return limit;
    for (std::size_t& i = iter_[u]; i < head_[u].size(); ++i) {
      int id = head_[u][i];
      int v = to_[id];
      if (cap_[id] > 0 && level_[v] == level_[u] + 1) {
        long long pushed = dfs(v, sink, std::min(limit, cap_[id]));
        if (pushed > 0) {
          cap_[id] -= pushed;
          cap_[id ^ 1] += pushed;
          return pushed;
        }
      }
    }
    return 0;
  }

  std::vector<std::vector<int>> head_;
  std::vector<int> to_;
  std::vector<long long> cap_;
  std::vector<int> level_;
  std::vector<std::size_t> iter_;
};

}  // namespace

long long ore_ryser_statistic(const Eigen::MatrixXd& B, int d, const IndexSet& T) {
  validate_zero_one(B);
  int n = static_cast<int>(B.rows());
  validate_degree(n, d);
  std::vector<bool> in_t(n, false);
  for (int j : T) {
    require(0 <= j && j < n, "IndexOutOfRange", "column out of range");
    require(!in_t[j], "BadParams", "duplicate column in T");
    in_t[j] = true;
  }
  long long x = 0;
  for (int i = 0; i < n; ++i) {
    int deg = 0;
    for (int j = 0; j < n; ++j)
      if (in_t[j] && B(i, j) == 1.0) ++deg;
    x += std::min(d, deg);
  }
  return x;
}

FactorResult ore_ryser_exhaustive(const Eigen::MatrixXd& B, int d) {
  validate_zero_one(B);
  int n = static_cast<int>(B.rows());
  validate_degree(n, d);
  require(n <= 20, "TooLarge", "exhaustive subset check is capped at n = 20");

  // Lexicographic DFS over column subsets; deg[] tracks deg_T(i) incrementally
  // so each subset costs O(n).
  std::vector<int> deg(n, 0);
  IndexSet current;
  IndexSet violating;
  auto x_of_current = [&]() {
    long long x = 0;
    for (int i = 0; i < n; ++i) x += std::min(d, deg[i]);
    return x;
  };
  std::function<bool(int)> walk = [&](int next) {
    for (int j = next; j < n; ++j) {
      current.push_back(j);
      for (int i = 0; i < n; ++i)
        if (B(i, j) == 1.0) ++deg[i];
      if (x_of_current() <
          static_cast<long long>(d) * static_cast<long long>(current.size())) {
        violating = current;
        return true;
      }
      if (walk(j + 1)) return true;
      for (int i = 0; i < n; ++i)
        if (B(i, j) == 1.0) --deg[i];
      current.pop_back();
    }
    return false;
  };

  FactorResult result;
  if (walk(0)) {
    result.exists = false;
    result.certificate = violating;
  } else {
    result.exists = true;
  }
  return result;
}

FactorResult find_regular_factor(const Eigen::MatrixXd& B, int d) {
  validate_zero_one(B);
  int n = static_cast<int>(B.rows());
  validate_degree(n, d);

  int source = 2 * n;
  int sink = 2 * n + 1;
  MaxFlow net(2 * n + 2);
  for (int i = 0; i < n; ++i) net.add_edge(source, i, d);
  std::vector<std::vector<std::pair<int, int>>> middle(n);  // (col, edge id)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (B(i, j) == 1.0) middle[i].push_back({j, net.add_edge(i, n + j, 1)});
  for (int j = 0; j < n; ++j) net.add_edge(n + j, sink, d);

  long long flow = net.run(source, sink);
  FactorResult result;
  if (flow == static_cast<long long>(n) * d) {
    result.exists = true;
    std::vector<std::vector<int>> out(n);
    for (int i = 0; i < n; ++i)
      for (const auto& [j, id] : middle[i])
        if (net.flow_on(id) == 1) out[i].push_back(j);
    result.factor = RegularDigraph::from_out_lists(n, d, std::move(out));
    return result;
  }

  // The unreachable columns of the min-cut violate the counting condition:
  // X_T <= (support edges crossing the cut) + d (rows outside the cut)
  //      = cut - d |reachable cols| < d n - d |reachable cols| = d |T|.
  std::vector<bool> reach = net.reachable(source);
  IndexSet T;
  for (int j = 0; j < n; ++j)
    if (!reach[n + j]) T.push_back(j);
  require(!T.empty() &&
              ore_ryser_statistic(B, d, T) <
                  static_cast<long long>(d) * static_cast<long long>(T.size()),
          "Internal", "min-cut certificate failed its own re-check");
  result.exists = false;
  result.certificate = T;
  return result;
}

Json FactorProbabilityReport::to_json() const {
  Json j;
  j["n"] = n;
  j["p"] = p;
  j["delta"] = delta;
  j["d"] = d;
  j["samples"] = samples;
  j["successes"] = successes;
  j["estimate"] = estimate;
  j["stderr"] = stderr_of_mean;
  j["fitted_c"] = fitted_c;
  j["fitted_is_lower_bound"] = fitted_is_lower_bound;
  j["pass"] = pass;
  j["master_seed"] = master_seed;
  j["stream_index"] = stream_index;
  return j;
}

FactorProbabilityReport factor_probability(int n, double p, double delta,
                                           long long samples, RngStream& rng,
                                           double pass_level) {
  require(n >= 1, "BadParams", "need n >= 1");
  require(0.0 < p && p <= 1.0, "BadParams", "need p in (0, 1]");
  require(0.0 < delta && delta <= 0.5, "BadParams", "need delta in (0, 1/2]");
  require(samples >= 1, "BadParams", "need samples >= 1");
  double d_real = (1.0 - delta) * p * n;
  int d = static_cast<int>(std::lround(d_real));
  require(std::abs(d_real - d) <= 1e-9 && d >= 1, "NonIntegralD",
          "(1-delta) p n must be a positive integer");

  long long successes = 0;
  std::vector<double> hits;
  for (long long s = 0; s < samples; ++s) {
    RngStream stream(rng.master_seed(),
                     (rng.stream_index() << 20) + static_cast<std::uint64_t>(s) + 1);
    Eigen::MatrixXd B(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        B(i, j) = stream.next_bernoulli(p) ? 1.0 : 0.0;
    bool ok = find_regular_factor(B, d).exists;
    if (ok) ++successes;
    hits.push_back(ok ? 1.0 : 0.0);
  }

  FactorProbabilityReport rep;
  rep.n = n;
  rep.p = p;
  rep.delta = delta;
  rep.d = d;
  rep.samples = samples;
  rep.successes = successes;
  rep.estimate = static_cast<double>(successes) / static_cast<double>(samples);
  rep.stderr_of_mean = mean_stderr(hits).stderr_of_mean;
  double exponent_scale = delta * delta * p * n;
  if (successes == samples) {
    // All samples succeeded: c is bounded below at 95% confidence.
    rep.fitted_c = std::log(static_cast<double>(samples) / 3.0 + 1.0) / exponent_scale;
    rep.fitted_is_lower_bound = true;
  } else {
    rep.fitted_c = -std::log(1.0 - rep.estimate) / exponent_scale;
    rep.fitted_is_lower_bound = false;
  }
  rep.pass = rep.estimate >= pass_level;
  rep.master_seed = rng.master_seed();
  rep.stream_index = rng.stream_index();
  return rep;
}

double membership_probability_exact(int n, int d, double p, int cap_n) {
  require(0.0 <= p && p <= 1.0, "BadParams", "need p in [0, 1]");
  std::vector<RegularDigraph> all = enumerate_regular(n, d, cap_n);
  double count = static_cast<double>(all.size());
  double nd = static_cast<double>(n) * d;
  double rest = static_cast<double>(n) * n - nd;
  return count * std::pow(p, nd) * std::pow(1.0 - p, rest);
}

}  // namespace rdl
