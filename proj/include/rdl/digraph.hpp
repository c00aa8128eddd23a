#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "rdl/errors.hpp"

namespace rdl {

// Index sets are 0-based vertex lists internally; all I/O is 1-based.
using IndexSet = std::vector<int>;

// Adjacency matrix of a d-regular digraph: an n x n 0-1 matrix with every row
// and column sum equal to d. Self-loops are allowed, multi-edges are not.
// Immutable after construction; operations that change the graph return a new
// value. Both adjacency views (out- and in-) are kept sorted.
class RegularDigraph {
public:
  static RegularDigraph from_dense(const Eigen::MatrixXd& M, int d);
  static RegularDigraph from_dense(const Eigen::MatrixXcd& M, int d);

  // Builds from out-neighbor lists, validating every invariant (distinctness,
  // range, row/column regularity).
  static RegularDigraph from_out_lists(int n, int d, std::vector<std::vector<int>> out);

  int n() const { return n_; }
  int d() const { return d_; }

  const std::vector<int>& out_neighbors(int i) const { return out_[at(i)]; }
  const std::vector<int>& in_neighbors(int j) const { return in_[at(j)]; }
  const std::vector<std::vector<int>>& out_lists() const { return out_; }
  const std::vector<std::vector<int>>& in_lists() const { return in_; }

  bool has_edge(int i, int j) const;

  // 0-1 matrix form, materialized on demand.
  Eigen::MatrixXd dense() const;

  bool operator==(const RegularDigraph& other) const {
    return n_ == other.n_ && d_ == other.d_ && out_ == other.out_;
  }

private:
  RegularDigraph(int n, int d) : n_(n), d_(d) {}
  int at(int v) const {
    require(0 <= v && v < n_, "IndexOutOfRange", "vertex out of range");
    return v;
  }

  int n_ = 0;
  int d_ = 0;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

// The digraph with matrix ones*ones^T - A; it is (n-d)-regular. Errors with
// DegreeOverflow when d = n (the complement would have degree 0).
RegularDigraph complement(const RegularDigraph& A);

// A / sqrt(d (1 - d/n)): the scaling under which the bulk spectrum fills the
// unit disk. Requires 1 <= d <= n-1.
Eigen::MatrixXd normalized(const RegularDigraph& A);

// Number of common out-neighbors of distinct vertices i1, i2.
int codegree(const RegularDigraph& A, int i1, int i2);

// Directed edge count from I to J: sum of a_ij over i in I, j in J.
// Duplicate entries in the inputs are ignored (set semantics).
long long edge_count(const RegularDigraph& A, const IndexSet& I, const IndexSet& J);

enum class ThresholdMode { le, ge, lt, gt };

// Vertices i whose out-neighborhood meets J in a number of vertices related to
// r as requested. Mode `le` additionally requires the intersection to be
// nonempty (so it selects vertices with 1 <= |N(i) cap J| <= r).
IndexSet threshold_neighborhood(const RegularDigraph& A, const IndexSet& J, int r,
                                ThresholdMode mode);

// In-neighborhood of a set: vertices i with at least one out-edge into J.
IndexSet in_neighborhood(const RegularDigraph& A, const IndexSet& J);

// Row-major bit encoding of the 0-1 matrix; requires n*n <= 64. Used to key
// tiny digraphs in enumeration-based statistical tests.
std::uint64_t dense_bitmask(const RegularDigraph& A);

}  // namespace rdl
