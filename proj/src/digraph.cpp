#include "rdl/digraph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rdl {

namespace {

std::vector<bool> membership_mask(int n, const IndexSet& S) {
  std::vector<bool> mask(n, false);
  for (int v : S) {
    require(0 <= v && v < n, "IndexOutOfRange",
            "index " + std::to_string(v + 1) + " outside [1, " + std::to_string(n) + "]");
    mask[v] = true;
  }
  return mask;
}

}  // namespace

RegularDigraph RegularDigraph::from_dense(const Eigen::MatrixXd& M, int d) {
  require(M.rows() == M.cols() && M.rows() > 0, "NotRegular", "matrix must be square");
  int n = static_cast<int>(M.rows());
  std::vector<std::vector<int>> out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double v = M(i, j);
      require(v == 0.0 || v == 1.0, "NotZeroOne",
              "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                  ") is not 0 or 1");
      if (v == 1.0) out[i].push_back(j);
    }
  }
  return from_out_lists(n, d, std::move(out));
}

RegularDigraph RegularDigraph::from_dense(const Eigen::MatrixXcd& M, int d) {
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j)
      require(M(i, j).imag() == 0.0, "NotZeroOne", "entry has nonzero imaginary part");
  return from_dense(Eigen::MatrixXd(M.real()), d);
}

RegularDigraph RegularDigraph::from_out_lists(int n, int d,
                                              std::vector<std::vector<int>> out) {
  require(n > 0, "NotRegular", "vertex count must be positive");
  require(1 <= d && d <= n, "NotRegular", "degree must be in [1, n]");
  require(static_cast<int>(out.size()) == n, "NotRegular", "need one list per vertex");
  RegularDigraph g(n, d);
  std::vector<int> col_sum(n, 0);
  for (int i = 0; i < n; ++i) {
    auto& row = out[i];
    std::sort(row.begin(), row.end());
    require(static_cast<int>(row.size()) == d, "NotRegular",
            "row " + std::to_string(i + 1) + " sum is " + std::to_string(row.size()) +
                ", expected " + std::to_string(d));
    for (std::size_t k = 0; k < row.size(); ++k) {
      require(0 <= row[k] && row[k] < n, "IndexOutOfRange", "neighbor out of range");
      require(k == 0 || row[k] != row[k - 1], "NotZeroOne",
              "repeated out-neighbor in row " + std::to_string(i + 1));
      ++col_sum[row[k]];
    }
  }
  for (int j = 0; j < n; ++j)
    require(col_sum[j] == d, "NotRegular",
            "column " + std::to_string(j + 1) + " sum is " + std::to_string(col_sum[j]) +
                ", expected " + std::to_string(d));
  g.out_ = std::move(out);
  g.in_.assign(n, {});
  for (int j = 0; j < n; ++j) g.in_[j].reserve(d);
  for (int i = 0; i < n; ++i)
    for (int j : g.out_[i]) g.in_[j].push_back(i);  // i ascending: lists stay sorted
  return g;
}

bool RegularDigraph::has_edge(int i, int j) const {
  const auto& row = out_[at(i)];
  at(j);
  return std::binary_search(row.begin(), row.end(), j);
}

Eigen::MatrixXd RegularDigraph::dense() const {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j : out_[i]) M(i, j) = 1.0;
  return M;
}

RegularDigraph complement(const RegularDigraph& A) {
  require(A.d() < A.n(), "DegreeOverflow",
          "complement of a degree-n digraph has degree 0");
  int n = A.n();
  std::vector<std::vector<int>> out(n);
  for (int i = 0; i < n; ++i) {
    const auto& row = A.out_neighbors(i);
    std::size_t k = 0;
    for (int j = 0; j < n; ++j) {
      if (k < row.size() && row[k] == j) {
        ++k;
      } else {
        out[i].push_back(j);
      }
    }
  }
  return RegularDigraph::from_out_lists(n, n - A.d(), std::move(out));
}

Eigen::MatrixXd normalized(const RegularDigraph& A) {
  int n = A.n();
  int d = A.d();
  require(1 <= d && d <= n - 1, "DegenerateScale",
          "normalization needs 1 <= d <= n-1");
  double scale = std::sqrt(d * (1.0 - static_cast<double>(d) / n));
  return A.dense() / scale;
}

int codegree(const RegularDigraph& A, int i1, int i2) {
  require(i1 != i2, "SameVertex", "codegree needs distinct vertices");
  const auto& a = A.out_neighbors(i1);
  const auto& b = A.out_neighbors(i2);
  int count = 0;
  std::size_t p = 0, q = 0;
  while (p < a.size() && q < b.size()) {
    if (a[p] < b[q]) {
      ++p;
    } else if (a[p] > b[q]) {
      ++q;
    } else {
      ++count;
      ++p;
      ++q;
    }
  }
  return count;
}

long long edge_count(const RegularDigraph& A, const IndexSet& I, const IndexSet& J) {
  auto in_I = membership_mask(A.n(), I);
  auto in_J = membership_mask(A.n(), J);
  long long count = 0;
  for (int i = 0; i < A.n(); ++i) {
    if (!in_I[i]) continue;
    for (int j : A.out_neighbors(i))
      if (in_J[j]) ++count;
  }
  return count;
}

IndexSet threshold_neighborhood(const RegularDigraph& A, const IndexSet& J, int r,
                                ThresholdMode mode) {
  if (mode == ThresholdMode::le || mode == ThresholdMode::ge)
    require(r >= 1, "BadParams", "threshold r must be >= 1 for modes le/ge");
  if (J.empty()) return {};
  auto in_J = membership_mask(A.n(), J);
  IndexSet result;
  for (int i = 0; i < A.n(); ++i) {
    int cnt = 0;
    for (int j : A.out_neighbors(i))
      if (in_J[j]) ++cnt;
    bool keep = false;
    switch (mode) {
      case ThresholdMode::le: keep = cnt >= 1 && cnt <= r; break;
      case ThresholdMode::ge: keep = cnt >= r; break;
      case ThresholdMode::lt: keep = cnt < r; break;
      case ThresholdMode::gt: keep = cnt > r; break;
    }
    if (keep) result.push_back(i);
  }
  return result;
}

IndexSet in_neighborhood(const RegularDigraph& A, const IndexSet& J) {
  return threshold_neighborhood(A, J, 1, ThresholdMode::ge);
}

std::uint64_t dense_bitmask(const RegularDigraph& A) {
  require(A.n() * A.n() <= 64, "TooLarge", "dense_bitmask requires n*n <= 64");
  std::uint64_t mask = 0;
  for (int i = 0; i < A.n(); ++i)
    for (int j : A.out_neighbors(i)) mask |= 1ull << (i * A.n() + j);
  return mask;
}

}  // namespace rdl
