#pragma once

#include "types.hpp"

#include <vector>

namespace canonpair {

// Canonicalization of a pair (Hermitian form h, h-self-adjoint linear
// operator b), i.e. h * b == b^* * h. Blocks are (epsilon S_k, J_{eta,k}) for
// real eta and (S_{2k}, J_{eta,k} + J_{conj eta,k}) for nonreal eta.

struct GlrBlock {
  Complex eta;   // Im >= 0; nonreal entry stands for the conjugate pair
  int k = 0;
  int epsilon = 1;  // +1 always when eta is nonreal
  bool real_eta = true;
  int dim() const { return real_eta ? k : 2 * k; }
};

struct GlrForm {
  std::vector<GlrBlock> blocks;
  Mat transition;  // M with M b M^{-1} and (M^{-1})^* h M^{-1} canonical
  ResidualReport residuals;
};

// One Jordan chain a_1, ..., a_s with a_m = (b - eta)^{m-1} a_1, normalized
// so the reversed basis carries the canonical form. For nonreal eta the
// cross-paired chain at conj(eta) is in conj_chain.
struct GlrChain {
  Mat chain;
  Mat conj_chain;
  int s = 0;
  int epsilon = 1;
};

// Longest Jordan chain length of b at eta. scale_floor, when positive, is an
// ambient magnitude for b (for example the norm of an operator b was
// restricted from); rank cutoffs for powers of b - eta never drop below the
// noise level that magnitude implies.
int max_grade(const Mat& b, Complex eta, double rank_tol, double scale_floor = 0.0);

// Seed with ell(v, (b - eta)^{s1-1} v) bounded away from zero, chosen by a
// sweep over kernel basis vectors and their pairwise combinations.
Vec glr_seed_real(const Mat& h, const Mat& b, double eta, int s1,
                  const ToleranceConfig& tol, double scale_floor = 0.0);

// Rescale coefficients alpha_0, alpha_1, ... for a chain whose reversed Gram
// is Hankel with antidiagonal values hvals[0], hvals[1], ... (hvals[0] != 0).
// The reseeded chain has reversed Gram epsilon * S.
std::pair<std::vector<double>, int> toeplitz_rescale(
    const std::vector<double>& hvals);

GlrChain glr_peel_real(const Mat& h, const Mat& b, double eta, int s1,
                       const ToleranceConfig& tol, double scale_floor = 0.0);
GlrChain glr_peel_nonreal(const Mat& h, const Mat& b, Complex eta, int s1,
                          const ToleranceConfig& tol, double scale_floor = 0.0);

GlrForm glr_canonicalize(const Mat& h, const Mat& b, const ToleranceConfig& tol);

// Canonical matrices for a block list, for residual checks and comparison.
std::pair<Mat, Mat> assemble_glr(const std::vector<GlrBlock>& blocks);

void sort_glr_blocks(std::vector<GlrBlock>& blocks);

}  // namespace canonpair
