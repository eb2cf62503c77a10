#pragma once

// Randomized generation and cross-checking utilities. Everything here is
// deterministic in the seed.

#include <cstdint>
#include <string>
#include <vector>

#include "pair.hpp"
#include "types.hpp"

namespace canonpair {

// Parses a block list of the shape
//   family:lsq_re:lsq_im:k:eps[;family:...]
// family in {positive, zero, negative, nonreal}. Throws InvalidInput.
std::vector<CanonicalBlock> parse_spectrum_spec(const std::string& spec);

// A pair conjugated off a random block-diagonal canonical model. When spec is
// empty, blocks are drawn at random to fill dimension n; otherwise the spec
// fixes them and must total n (n == 0 accepts any total). The conjugating
// matrix has entries uniform in [-1,1] for both parts and is resampled until
// ||M||_F ||M^{-1}||_F <= 100. Identical seeds give identical bytes.
SelfAdjointPair random_canonical_pair(int n, const std::string& spec,
                                      std::uint64_t seed,
                                      const ToleranceConfig& tol,
                                      std::vector<CanonicalBlock>* planted = nullptr);

// True when two block lists agree entry by entry after sorting, with
// lambda_sq compared up to lambda_tol.
bool block_lists_match(std::vector<CanonicalBlock> a, std::vector<CanonicalBlock> b,
                       double lambda_tol);

// Canonicalizes the pair and `trials` random conjugates of it; true when all
// sorted block lists agree.
bool orbit_check(const SelfAdjointPair& p, int trials, std::uint64_t seed,
                 const ToleranceConfig& tol);

// Direct answer for n = 1: nonzero c gives a positive-real block with
// lambda = |c|, zero c a zero block; epsilon is the sign of h.
CanonicalBlock brute_force_1d_oracle(Complex h, Complex c, double zero_tol);

}  // namespace canonpair
