#pragma once

#include "pair.hpp"
#include "types.hpp"

#include <vector>

namespace canonpair {

// One cluster of eigenvalues of the squared operator. The representative
// lambda_sq has Im >= 0; a nonreal cluster stands for the conjugate pair.
struct SpectralCluster {
  Complex lambda_sq;
  Complex lambda;  // principal root
  Family family = Family::Zero;
  int multiplicity = 0;  // algebraic multiplicity of lambda_sq alone
  // Jordan sizes of (B - lambda_sq I) on the cluster subspace: (s_i, r_i)
  // with s_i strictly decreasing. For nonreal clusters these count the
  // lambda_sq half only (the conjugate half mirrors them).
  std::vector<std::pair<int, int>> jordan_sizes;
  // Rank tolerance for operations restricted to this cluster. A defective
  // eigenvalue of multiplicity m is only computed to about (eps * scale)^(1/m),
  // so rank decisions near the cluster must treat that much as zero even when
  // the global rank tolerance is tighter.
  double local_rank_tol = 0.0;
};

struct SpectralProfile {
  std::vector<SpectralCluster> clusters;
  double cluster_radius = 0.0;
};

// Clusters the spectrum of the squared operator. Eigenvalues within
// cluster_tol * max(1, ||bsq||) of each other are merged, values near the
// real axis are snapped onto it, and conjugate clusters are folded into one
// entry with Im > 0. Clusters are ordered real first, then by (Re, Im).
SpectralProfile profile_square(const Mat& bsq, const ToleranceConfig& tol);

// Orthonormal basis of ker((b - eta I)^power). scale_floor, when positive, is
// an ambient magnitude for b; rank cutoffs for the powers never drop below
// the noise level that magnitude implies, so powers that vanish exactly are
// recognized even when every computed entry is rounding noise.
Mat generalized_eigenspace(const Mat& b, Complex eta, int power, double rank_tol,
                           double scale_floor = 0.0);

// Orthonormal basis of the invariant subspace attached to a cluster. For a
// nonreal cluster this joins the generalized eigenspaces of lambda_sq and its
// conjugate.
Mat cluster_invariant_subspace(const Mat& bsq, const SpectralCluster& cl,
                               const ToleranceConfig& tol,
                               double scale_floor = 0.0);

// Realification of the antilinear map v -> c * conj(v) acting on [Re v; Im v].
RealMat realify_antilinear(const Mat& c);

RealVec realify_vec(const Vec& v);
Vec complexify_vec(const RealVec& v);

// Matrix of A^m where A is the antilinear map given by c.
Mat antilinear_power(const Mat& c, int m);

// Smallest m >= 1 with A^m = 0, or 0 if no such m <= n exists.
int antilinear_nilpotency_index(const Mat& c, double rank_tol);

// Real orthonormal basis of ker((r - lambda I)^power) for real r, returned as
// complexified columns. Their real span is closed under the antilinear map
// and they also form a complex basis of the corresponding filtration space.
Mat real_filtration_basis(const RealMat& r, double lambda, int power,
                          double rank_tol);

// Splits v = v_plus + i v_minus with both parts in the real span of the
// columns of w. Throws NumericalFailure if v is not in the complex span.
std::pair<Vec, Vec> real_form_split(const Vec& v, const Mat& w, double rank_tol);

// Sizes s_1 >= s_2 >= ... of the Jordan chains of the operator m restricted
// to its generalized kernel (eigenvalue 0), from kernel dimension increments.
// scale_floor plays the same role as in generalized_eigenspace: it keeps the
// rank cutoffs meaningful when m itself, or one of its powers, is zero up to
// rounding noise.
std::vector<int> nilpotent_segre(const Mat& m, double rank_tol,
                                 double scale_floor = 0.0);

}  // namespace canonpair
