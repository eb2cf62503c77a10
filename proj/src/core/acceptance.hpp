#pragma once

// Self-contained acceptance suite: ten deterministic pass/fail checks
// exercising the full pipeline (round trips, orbit invariance, signature
// conservation, exact coefficient identities, atlas validity, operator-only
// and glr cross-checks, the anti-triangular determinant identity, and the
// scalar oracle).

#include <string>
#include <vector>

#include "types.hpp"

namespace canonpair {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // short diagnostic, filled on failure or with stats
};

std::vector<CriterionResult> run_acceptance(const ToleranceConfig& tol);

}  // namespace canonpair
