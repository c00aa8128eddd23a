#pragma once

#include <string>

#include "rdl/digraph.hpp"
#include "rdl/io.hpp"
#include "rdl/rng.hpp"

namespace rdl {

// Verdicts distinguish exhausted quantifiers from randomized spot checks.
enum class Verdict { CertifiedPass, CertifiedFail, SampledPass, SampledFail };

std::string to_string(Verdict v);

struct RegularityReport {
  std::string property;
  Json parameters;
  Verdict verdict = Verdict::CertifiedPass;
  Json witness;  // null unless a violation was found
  long long trials = 0;
  Json details;  // auxiliary statistics

  bool pass() const {
    return verdict == Verdict::CertifiedPass || verdict == Verdict::SampledPass;
  }
  Json to_json() const;
};

// Exhausts all row pairs; pass iff the maximum out-codegree is at most d/4.
// Details expose the maximum, its argmax pair, the mean, and tail fractions
// at thresholds (1+K) d^2/n for K in {1,2,3} next to exp(-K^2/(4+2K) d^2/n).
RegularityReport check_codegree(const RegularDigraph& A);

// Tests |e_A(I,J) - (d/n)|I||J|| < delta (d/n)|I||J| over index sets with
// |I|,|J| > n0: exhaustively when 4^n fits the budget, otherwise over
// `budget` random pairs with sizes drawn log-uniformly in (n0, n].
RegularityReport check_discrepancy(const RegularDigraph& A, int n0, double delta,
                                   long long budget, RngStream& rng);

// Tests |N_{A^T}(J)| > kappa d |J| for all J with |J| <= n/(2 kappa d):
// exhaustively when the subset count fits the budget, otherwise over random
// subsets with sizes biased small (log-uniform).
RegularityReport check_expansion(const RegularDigraph& A, double kappa,
                                 long long budget, RngStream& rng);

// Consequences of expansion: (1) |N^{<=r}(J)| >= (kappa - 1/(r+1)) d |J| for
// |J| <= n/(2 kappa d) and r in {1..ceil(2/kappa)}; (2) |N^{>r}(J)| > n/8 for
// larger J and 1 <= r <= kappa d |J| / (4n).  Establishes expansion membership
// first and throws PrerequisiteMissing when that fails.
RegularityReport verify_expansion_consequences(const RegularDigraph& A, double kappa,
                                               long long budget, RngStream& rng);

}  // namespace rdl
