#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rdl/digraph.hpp"
#include "rdl/rng.hpp"

namespace rdl {

// Deterministic seed state for the switching chain: out_adj[i] = {i, ..., i+d-1 mod n}.
RegularDigraph circulant_digraph(int n, int d);

// 2x2 switching: if the submatrix at rows (i1,i2), columns (j1,j2) is the
// identity or anti-identity pattern, exchange it (degrees are preserved);
// otherwise the digraph is returned unchanged. Self-inverse for fixed
// arguments.
RegularDigraph simple_switch(const RegularDigraph& A, int i1, int i2, int j1, int j2);

// Number of proposal steps after which the chain is treated as mixed:
// 10 * n * d * ceil(log(nd+1)), i.e. about 10 log(nd) sweeps of the edge set.
// Empirically validated against exhaustive enumeration at tiny sizes; this is
// a tunable, not a proven mixing bound.
long long default_chain_steps(int n, int d);

// Random walk on the d-regular digraphs: starting from the circulant, performs
// `steps` proposals, each drawing an ordered pair of distinct current edges
// (i1,j1), (i2,j2) uniformly at random and applying the simple switch on rows
// (i1,i2) and columns (j1,j2) when the two crossed cells are vacant;
// non-applicable proposals count as (lazy) steps. Every applicable switch is
// proposed the same number of ways from either endpoint state, so the walk is
// symmetric, and it is connected, so its stationary law is uniform. Edge-pair
// proposals keep the acceptance rate of order one at low density, where
// uniform index quadruples would almost always miss the edge set. One caveat
// at d = 1: states are permutation matrices, every proposal is applicable, and
// each switch transposes two columns, so the step count determines the sign of
// the returned permutation; mix even and odd step counts to reach both
// parity classes.
RegularDigraph chain_sample(int n, int d, long long steps, RngStream& rng);

// Draws iid Bernoulli(d/n) matrices until one is d-regular; that draw is an
// exactly uniform sample. Returns nullopt when max_tries consecutive draws all
// fail. Only feasible for tiny n (cap guards against astronomic acceptance
// times).
std::optional<RegularDigraph> rejection_sample(int n, int d, RngStream& rng,
                                               long long max_tries, int cap_n = 16);

// All d-regular digraphs on n vertices, by row-wise backtracking with
// column-sum pruning, ordered lexicographically by out-neighbor lists.
std::vector<RegularDigraph> enumerate_regular(int n, int d, int cap_n = 6);

// Block switching at a row pair: exchanges the out-neighbor sets J and Jprime
// between rows i1 and i2.
struct SwitchSpec {
  int i1 = 0;
  int i2 = 0;
  IndexSet J;
  IndexSet Jprime;
};

// If J lies in N(i1) \ N(i2) and Jprime in N(i2) \ N(i1) (or the mirrored
// condition with the roles of J and Jprime exchanged), moves J to the other
// row and Jprime back; otherwise returns the digraph unchanged. An involution.
RegularDigraph neighborhood_switch(const RegularDigraph& A, const SwitchSpec& spec);

// One round of randomized block switchings across the fixed row pairing
// pi : [0, floor(n/2)) -> [floor(n/2), 2*floor(n/2)), driven by two disjoint
// column sets L, Lprime. The plan records which pairs qualify (I_plus when the
// low row has out-edges in L and its partner has none, with enough room in
// Lprime; I_minus for the mirrored roles), the deterministic sets J, the
// randomly drawn sets Jprime, and the coin vector xi. Applying the plan maps
// the uniform distribution to itself.
struct CouplingPlan {
  IndexSet L;
  IndexSet Lprime;
  std::vector<int> pi;
  IndexSet I_plus;
  IndexSet I_minus;
  std::vector<IndexSet> J_map;       // indexed by i in [0, floor(n/2)); empty if unused
  std::vector<IndexSet> Jprime_map;  // same indexing
  std::vector<std::uint8_t> xi;      // n coin flips
};

// The lexicographically minimal pairing pi[i] = floor(n/2) + i.
std::vector<int> lexicographic_pairing(int n);

CouplingPlan build_coupling(const RegularDigraph& A, const IndexSet& L,
                            const IndexSet& Lprime, const std::vector<int>& pi,
                            RngStream& rng);

RegularDigraph apply_coupling(const RegularDigraph& A, const CouplingPlan& plan);

}  // namespace rdl
