#pragma once

#include "pair.hpp"
#include "types.hpp"

namespace canonpair {

// Full canonicalization of a validated pair. The returned transition M obeys
// the transformation law: (M^{-1})^* H M^{-1} and M C conj(M)^{-1} are the
// assembled canonical matrices, up to the reported residuals.
CanonicalForm canonicalize_pair(const SelfAdjointPair& p, const ToleranceConfig& tol);

// Jordan-type classification of the antilinear operator alone. Blocks carry
// epsilon = 0: without a form there is no sign characteristic.
CanonicalForm canonicalize_operator(const Mat& c, const ToleranceConfig& tol);

// A Hermitian form making (H, c) a valid pair whose canonical blocks all
// have epsilon = +1, built from the operator-only transition.
Mat witness_form(const Mat& c, const ToleranceConfig& tol);

// Residuals of a claimed canonical form against the pair it came from.
ResidualReport verify_canonical(const SelfAdjointPair& p, const CanonicalForm& f,
                                const ToleranceConfig& tol);

}  // namespace canonpair
