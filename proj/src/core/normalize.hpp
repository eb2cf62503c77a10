#pragma once

// Per-family normalizers. Each one operates on a pair (h, c) restricted to a
// cluster invariant subspace, extracts one block of maximal size, and returns
// the block record together with the new-basis columns (in the restricted
// coordinates, already in canonical column order).

#include "types.hpp"

namespace canonpair {

struct PeelResult {
  CanonicalBlock block;
  Mat basis;  // n_restricted x block.dim(), canonical order
};

// Angle estimate for the positive-family seed rotation from the first
// Fourier coefficients of theta -> pairing(cos t v+ - sin t v-).
double fourier_seed_angle(double a0, double a1, double b1);

PeelResult peel_positive(const Mat& h, const Mat& c, double lambda, int s1,
                         const ToleranceConfig& tol);
// Block size is the nilpotency index of the restricted operator. op_scale,
// when positive, is the norm of the ambient operator c was restricted from;
// it keeps rank decisions meaningful when the restriction is zero up to
// rounding noise.
PeelResult peel_zero(const Mat& h, const Mat& c, const ToleranceConfig& tol,
                     double op_scale = 0.0);
PeelResult peel_negative(const Mat& h, const Mat& c, double lambda_sq, int s1,
                         const ToleranceConfig& tol);
PeelResult peel_nonreal(const Mat& h, const Mat& c, Complex lambda_sq, int s1,
                        const ToleranceConfig& tol);

}  // namespace canonpair
