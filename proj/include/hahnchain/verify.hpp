#pragma once

// Identity suites run against one chain: polynomial identities, the
// eigensystem, the oracle and the end-to-end closed forms.

#include <string>
#include <vector>

#include "hahnchain/chain.hpp"

namespace hahnchain {

struct SuiteResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = true;
  bool applicable = true;
};

struct VerificationReport {
  std::vector<SuiteResult> suites;

  bool all_passed() const;
  const SuiteResult& at(const std::string& name) const;
};

/// Suites, in order: hahn-orthogonality, diff-eq-1, diff-eq-2, q-diff-eq-1,
/// q-diff-eq-2, U-orthogonality, MU-UD, oracle-match, correlation-unitarity,
/// kummer, gauss.
///
/// Polynomial suites use the classical parameters without q and the q-Hahn
/// parameters with q; suites of the other kind are reported as not
/// applicable. kummer and gauss use (alpha, alpha + 1) on a classical chain
/// of the same m. Residuals are relative (MU-UD to max|eps|, orthogonality to
/// h_n, difference equations to the largest term).
VerificationReport run_verification(const ChainSpec& spec, double rtol = 1e-10);

}  // namespace hahnchain
