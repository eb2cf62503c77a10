#pragma once

// Dense complex primitives shared by every other module: eigenvalues,
// tolerance-based rank/kernel, Hermitian diagonalization, Takagi
// factorization of (possibly singular) complex symmetric matrices, and the
// signature of a nondegenerate Hermitian matrix.

#include <utility>
#include <vector>

#include "types.hpp"

namespace canonpair {

// All eigenvalues with algebraic multiplicity, in no particular order.
std::vector<Complex> eigenvalues(const Mat& m);

struct RankKernel {
  int rank = 0;
  Mat kernel;  // orthonormal columns spanning the numerical kernel
};

// scale_hint, when positive, participates in the cutoff so that a matrix
// whose true value is zero (e.g. a vanishing power, computed as pure
// rounding noise with a tiny top singular value) is ranked as zero instead
// of full.  Callers computing products pass the expected magnitude of the
// result, typically ||previous factor|| * ||last factor||.
RankKernel rank_and_kernel(const Mat& m, double rank_tol, double scale_hint = 0.0);

// h = u * diag(d) * u^*, u unitary, d real and sorted descending.
std::pair<Mat, RealVec> hermitian_diagonalize(const Mat& h, double verify_tol);

// Takagi factorization s = u * diag(sigma) * u^T with u unitary and sigma
// real, nonnegative, sorted descending.  Zero singular values are allowed.
std::pair<Mat, RealVec> takagi(const Mat& s, double verify_tol);

// (positives, negatives) among the eigenvalues of a nondegenerate Hermitian h.
std::pair<int, int> signature(const Mat& h, const ToleranceConfig& tol);

}  // namespace canonpair
