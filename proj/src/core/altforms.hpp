#pragma once

#include "pair.hpp"
#include "types.hpp"

namespace canonpair {

// Transition D for one block from the standard model to the alternative one:
// (D^{-1})^* (eps H) D^{-1} = eps N and D C conj(D)^{-1} = M. Cached per
// block data.
Mat block_converter(const CanonicalBlock& b, const ToleranceConfig& tol);

// Canonicalization straight to the alternative atlas.
CanonicalForm alt_canonicalize(const SelfAdjointPair& p, const ToleranceConfig& tol);

// Rewrites a standard-flavor form as alternative or back; blocks are kept,
// the transition is composed with the per-block converters.
CanonicalForm convert_form(const CanonicalForm& f, Flavor target,
                           const ToleranceConfig& tol);

// Whether m preserves the sesquilinear form S_n and commutes with
// J_{lambda_sq,n}.
bool is_glr_symmetry(const Mat& m, int n, Complex lambda_sq, double tol);

}  // namespace canonpair
