#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <cmath>
#include <string>
#include <vector>

#include "rdl/digraph.hpp"
#include "rdl/errors.hpp"
#include "rdl/regularity.hpp"
#include "rdl/rng.hpp"
#include "rdl/sampler.hpp"

using rdl::RegularDigraph;
using rdl::RngStream;
using rdl::Verdict;

namespace {

// Direct restatement of the expansion property over bitmask subsets.
bool expansion_brute(const RegularDigraph& A, double kappa) {
  int n = A.n(), d = A.d();
  int m_max = std::min(n, static_cast<int>(n / (2.0 * kappa * d)));
  std::vector<unsigned> rows(n, 0);
  for (int i = 0; i < n; ++i)
    for (int v : A.out_neighbors(i)) rows[i] |= 1u << v;
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

// Direct restatement of the discrepancy property.
bool discrepancy_brute(const RegularDigraph& A, int n0, double delta) {
  int n = A.n(), d = A.d();
  double p = static_cast<double>(d) / n;
  std::vector<unsigned> rows(n, 0);
  for (int i = 0; i < n; ++i)
    for (int v : A.out_neighbors(i)) rows[i] |= 1u << v;
  for (unsigned I = 1; I < (1u << n); ++I) {
    if (std::popcount(I) <= n0) continue;
    for (unsigned J = 1; J < (1u << n); ++J) {
      if (std::popcount(J) <= n0) continue;
      long long edges = 0;
      for (int i = 0; i < n; ++i)
        if (I & (1u << i)) edges += std::popcount(rows[i] & J);
      double expect = p * std::popcount(I) * std::popcount(J);
      if (!(std::abs(edges - expect) < delta * expect)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("verdict names are distinct and reports serialize") {
  CHECK(rdl::to_string(Verdict::CertifiedPass) != rdl::to_string(Verdict::CertifiedFail));
  CHECK(rdl::to_string(Verdict::SampledPass) != rdl::to_string(Verdict::SampledFail));
  RngStream rng(20, 0);
  rdl::RegularityReport rep = rdl::check_codegree(rdl::circulant_digraph(6, 1));
  rdl::Json j = rep.to_json();
  CHECK(j.contains("property"));
  CHECK(j.contains("verdict"));
  CHECK(j.contains("parameters"));
  CHECK(j.contains("details"));
}

TEST_CASE("codegree check certifies permutations and rejects overlapping rows") {
  // d = 1: no two rows share a column, so the maximum codegree is 0 <= d/4.
  rdl::RegularityReport pass = rdl::check_codegree(rdl::circulant_digraph(6, 1));
  CHECK(pass.verdict == Verdict::CertifiedPass);
  CHECK(pass.pass());
  // Adjacent circulant rows share d-1 = 1 out-neighbor, above d/4 = 0.5.
  rdl::RegularityReport fail = rdl::check_codegree(rdl::circulant_digraph(8, 2));
  CHECK(fail.verdict == Verdict::CertifiedFail);
  CHECK(!fail.pass());
  CHECK(!fail.witness.is_null());
}

TEST_CASE("expansion check agrees with brute force on random instances") {
  RngStream rng(21, 0);
  int fails = 0, passes = 0;
  for (int t = 0; t < 20; ++t) {
    RegularDigraph A = rdl::chain_sample(7, 3, 400, rng);
    bool brute = expansion_brute(A, 0.5);
    rdl::RegularityReport rep = rdl::check_expansion(A, 0.5, 1000000, rng);
    CHECK(rep.verdict == (brute ? Verdict::CertifiedPass : Verdict::CertifiedFail));
    (brute ? passes : fails) += 1;
  }
  CHECK(passes + fails == 20);
}

TEST_CASE("expansion failure produces a certified witness") {
  // Rows 0,1 both cover {0,1}: that column pair has only 2 in-neighbors,
  // not more than kappa*d*|J| = 2.
  RegularDigraph A =
      RegularDigraph::from_out_lists(4, 2, {{0, 1}, {0, 1}, {2, 3}, {2, 3}});
  RngStream rng(22, 0);
  rdl::RegularityReport rep = rdl::check_expansion(A, 0.5, 1000000, rng);
  CHECK(rep.verdict == Verdict::CertifiedFail);
  CHECK(!rep.witness.is_null());
  CHECK_THROWS_WITH_AS(
      static_cast<void>(rdl::verify_expansion_consequences(A, 0.5, 1000000, rng)),
      doctest::Contains("PrerequisiteMissing"), rdl::Error);
}

TEST_CASE("small budgets fall back to sampled verdicts") {
  RngStream rng(23, 0);
  RegularDigraph A = rdl::chain_sample(12, 3, 2000, rng);
  rdl::RegularityReport rep = rdl::check_expansion(A, 0.5, 20, rng);
  bool sampled = rep.verdict == Verdict::SampledPass || rep.verdict == Verdict::SampledFail;
  CHECK(sampled);
}

TEST_CASE("discrepancy check agrees with brute force") {
  RngStream rng(24, 0);
  for (int t = 0; t < 10; ++t) {
    RegularDigraph A = rdl::chain_sample(6, 3, 300, rng);
    bool brute = discrepancy_brute(A, 2, 0.5);
    rdl::RegularityReport rep = rdl::check_discrepancy(A, 2, 0.5, 1000000, rng);
    CHECK(rep.pass() == brute);
    CHECK((rep.verdict == Verdict::CertifiedPass || rep.verdict == Verdict::CertifiedFail));
  }
}

TEST_CASE("expansion consequences certify on an expander-by-counting") {
  // For d = 2, kappa = 0.4 every digraph expands (each row covers at most two
  // columns of J, so at least |J| rows meet it), and the consequence scan is
  // exhaustive at this size.
  RngStream rng(25, 0);
  RegularDigraph A = rdl::circulant_digraph(8, 2);
  rdl::RegularityReport expansion = rdl::check_expansion(A, 0.4, 1000000, rng);
  REQUIRE(expansion.verdict == Verdict::CertifiedPass);
  rdl::RegularityReport rep = rdl::verify_expansion_consequences(A, 0.4, 1000000, rng);
  CHECK(rep.verdict == Verdict::CertifiedPass);
  CHECK(rep.pass());
  CHECK(rep.trials > 0);
}

TEST_CASE("parameter validation") {
  RngStream rng(26, 0);
  RegularDigraph A = rdl::circulant_digraph(6, 2);
  CHECK_THROWS_AS(static_cast<void>(rdl::check_expansion(A, 0.0, 100, rng)), rdl::Error);
  CHECK_THROWS_AS(static_cast<void>(rdl::check_expansion(A, 1.0, 100, rng)), rdl::Error);
  CHECK_THROWS_AS(static_cast<void>(rdl::check_expansion(A, 0.4, 0, rng)), rdl::Error);
  CHECK_THROWS_AS(static_cast<void>(rdl::check_discrepancy(A, 0, 0.5, 100, rng)), rdl::Error);
  CHECK_THROWS_AS(static_cast<void>(rdl::check_discrepancy(A, 2, 0.0, 100, rng)), rdl::Error);
}
