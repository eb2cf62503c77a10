#include "glr.hpp"

#include "atlas.hpp"
#include "kernel.hpp"
#include "pair.hpp"
#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace canonpair {

namespace {

// scale, when requested, is the magnitude the power would have if it were
// nonzero at its natural scale, for rank decisions on vanishing powers. The
// per-factor magnitude is floored by the scale of b and eta (and the caller's
// floor): the computed shifted matrix, or an intermediate power, can be pure
// rounding noise, and tracking its computed norm would collapse the cutoff
// below the noise level of later products.
Mat matrix_power_shifted(const Mat& b, Complex eta, int p, double* scale = nullptr,
                         double scale_floor = 0.0) {
  const int n = static_cast<int>(b.rows());
  Mat shifted = b - eta * Mat::Identity(n, n);
  const double mag =
      std::max({shifted.norm(), b.norm(), std::abs(eta), scale_floor});
  Mat pw = Mat::Identity(n, n);
  double sc = std::sqrt(static_cast<double>(n));
  for (int i = 0; i < p; ++i) {
    sc *= mag;
    pw = pw * shifted;
  }
  if (scale) *scale = sc;
  return pw;
}

// Chain columns a_1, ..., a_s with a_m = (b - eta)^{m-1} v.
Mat build_chain(const Mat& b, Complex eta, const Vec& v, int s) {
  const int n = static_cast<int>(b.rows());
  Mat shifted = b - eta * Mat::Identity(n, n);
  Mat out(n, s);
  Vec cur = v;
  for (int m = 0; m < s; ++m) {
    out.col(m) = cur;
    if (m + 1 < s) cur = shifted * cur;
  }
  return out;
}

Mat reversed_cols(const Mat& m) {
  return m.rowwise().reverse();
}

}  // namespace

int max_grade(const Mat& b, Complex eta, double rank_tol, double scale_floor) {
  const int n = static_cast<int>(b.rows());
  int prev = 0;
  for (int j = 1; j <= n; ++j) {
    double scale = 0.0;
    Mat pw = matrix_power_shifted(b, eta, j, &scale, scale_floor);
    int d = n - rank_and_kernel(pw, rank_tol, scale).rank;
    if (d == prev) return j - 1;
    prev = d;
  }
  return n;
}

Vec glr_seed_real(const Mat& h, const Mat& b, double eta, int s1,
                  const ToleranceConfig& tol, double scale_floor) {
  double scale = 0.0;
  Mat pw = matrix_power_shifted(b, Complex(eta, 0.0), s1, &scale, scale_floor);
  Mat ker = rank_and_kernel(pw, tol.rank_tol, scale).kernel;
  Mat nmat = matrix_power_shifted(b, Complex(eta, 0.0), s1 - 1);
  const int d = static_cast<int>(ker.cols());
  if (d == 0) throw NumericalFailure("glr_seed_real: empty kernel");

  auto score = [&](const Vec& v) {
    Vec u = v / v.norm();
    return std::abs(form_value(h, u, Vec(nmat * u)));
  };
  Vec best = ker.col(0);
  double best_score = score(best);
  const Complex sigmas[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (int i = 0; i < d; ++i) {
    Vec ui = ker.col(i);
    if (score(ui) > best_score) { best_score = score(ui); best = ui; }
    for (int j = i + 1; j < d; ++j)
      for (const Complex& s : sigmas) {
        Vec cand = ui + s * ker.col(j);
        double sc = score(cand);
        if (sc > best_score) { best_score = sc; best = cand; }
      }
  }
  double floor = tol.rank_tol * std::max(1.0, h.norm() * nmat.norm());
  if (best_score < floor)
    throw NumericalFailure("glr_seed_real: no admissible seed found");
  return best / best.norm();
}

std::pair<std::vector<double>, int> toeplitz_rescale(
    const std::vector<double>& hvals) {
  const int s = static_cast<int>(hvals.size());
  if (s == 0 || hvals[0] == 0.0)
    throw NumericalFailure("toeplitz_rescale: leading value must be nonzero");
  const double h0 = hvals[0];
  const int eps = h0 > 0 ? 1 : -1;
  std::vector<double> alpha(s, 0.0);
  alpha[0] = 1.0 / std::sqrt(std::abs(h0));
  for (int i = 1; i < s; ++i) {
    double acc = 0.0;
    for (int r = 0; r < i; ++r)
      for (int q = 0; q < i; ++q) {
        int t = i - r - q;
        if (t >= 0 && t < s) acc += alpha[r] * alpha[q] * hvals[t];
      }
    alpha[i] = -acc / (2.0 * alpha[0] * h0);
  }
  return {alpha, eps};
}

GlrChain glr_peel_real(const Mat& h, const Mat& b, double eta, int s1,
                       const ToleranceConfig& tol, double scale_floor) {
  Vec v = glr_seed_real(h, b, eta, s1, tol, scale_floor);
  Mat chain = build_chain(b, Complex(eta, 0.0), v, s1);
  // hvals[t] = ell(v, (b - eta)^{s1-1-t} v), real by self-adjointness
  std::vector<double> hvals(s1);
  for (int t = 0; t < s1; ++t)
    hvals[t] = form_value(h, v, Vec(chain.col(s1 - 1 - t))).real();
  auto [alpha, eps] = toeplitz_rescale(hvals);
  Vec seed = Vec::Zero(v.size());
  for (int i = 0; i < s1; ++i) seed += alpha[i] * chain.col(i);

  GlrChain out;
  out.chain = build_chain(b, Complex(eta, 0.0), seed, s1);
  out.s = s1;
  out.epsilon = eps;
  return out;
}

GlrChain glr_peel_nonreal(const Mat& h, const Mat& b, Complex eta, int s1,
                          const ToleranceConfig& tol, double scale_floor) {
  Complex etab = std::conj(eta);
  double sc1 = 0.0, sc2 = 0.0;
  Mat pw1 = matrix_power_shifted(b, eta, s1, &sc1, scale_floor);
  Mat pw2 = matrix_power_shifted(b, etab, s1, &sc2, scale_floor);
  Mat ker = rank_and_kernel(pw1, tol.rank_tol, sc1).kernel;
  Mat kerb = rank_and_kernel(pw2, tol.rank_tol, sc2).kernel;
  Mat nmat = matrix_power_shifted(b, eta, s1 - 1);
  if (ker.cols() == 0 || kerb.cols() == 0)
    throw NumericalFailure("glr_peel_nonreal: empty kernel");

  // Pairing ell(v', (b - eta)^{s1-1} v) is linear in v' and conjugate-linear
  // in v, so a sweep over basis pairs finds a nonzero value.
  Vec v, vp;
  double best_score = -1.0;
  for (int i = 0; i < ker.cols(); ++i)
    for (int j = 0; j < kerb.cols(); ++j) {
      Vec u = ker.col(i), w = kerb.col(j);
      double sc = std::abs(form_value(h, w, Vec(nmat * u)));
      if (sc > best_score) { best_score = sc; v = u; vp = w; }
    }
  double floor = tol.rank_tol * std::max(1.0, h.norm() * nmat.norm());
  if (best_score < floor)
    throw NumericalFailure("glr_peel_nonreal: no admissible seed pair");

  Mat chain = build_chain(b, eta, v, s1);
  // g_t = ell(v', (b - eta)^t v); triangular solve makes ell(a'_1, a_m) =
  // delta_{m,s1}, after which the cross Gram in reversed order is exactly S.
  std::vector<Complex> g(s1);
  for (int t = 0; t < s1; ++t) g[t] = form_value(h, vp, Vec(chain.col(t)));
  std::vector<Complex> beta(s1, Complex(0, 0));
  beta[0] = 1.0 / g[s1 - 1];
  for (int j = 1; j < s1; ++j) {
    Complex acc = 0.0;
    for (int r = 0; r < j; ++r) acc += beta[r] * g[s1 - 1 - j + r];
    beta[j] = -acc / g[s1 - 1];
  }
  Mat chainb_raw = build_chain(b, etab, vp, s1);
  Vec seedb = Vec::Zero(vp.size());
  for (int r = 0; r < s1; ++r) seedb += beta[r] * chainb_raw.col(r);

  GlrChain out;
  out.chain = chain;
  out.conj_chain = build_chain(b, etab, seedb, s1);
  out.s = s1;
  out.epsilon = 1;
  return out;
}

void sort_glr_blocks(std::vector<GlrBlock>& blocks) {
  std::stable_sort(blocks.begin(), blocks.end(),
                   [](const GlrBlock& a, const GlrBlock& b) {
                     return std::make_tuple(a.eta.real(), a.eta.imag(), -a.k,
                                            -a.epsilon) <
                            std::make_tuple(b.eta.real(), b.eta.imag(), -b.k,
                                            -b.epsilon);
                   });
}

std::pair<Mat, Mat> assemble_glr(const std::vector<GlrBlock>& blocks) {
  int total = 0;
  for (const auto& bl : blocks) total += bl.dim();
  Mat h = Mat::Zero(total, total), j = Mat::Zero(total, total);
  int off = 0;
  for (const auto& bl : blocks) {
    if (bl.real_eta) {
      h.block(off, off, bl.k, bl.k) = double(bl.epsilon) * sip_matrix(bl.k);
      j.block(off, off, bl.k, bl.k) = jordan_block(bl.eta, bl.k);
    } else {
      h.block(off, off, 2 * bl.k, 2 * bl.k) = sip_matrix(2 * bl.k);
      j.block(off, off, bl.k, bl.k) = jordan_block(bl.eta, bl.k);
      j.block(off + bl.k, off + bl.k, bl.k, bl.k) =
          jordan_block(std::conj(bl.eta), bl.k);
    }
    off += bl.dim();
  }
  return {h, j};
}

GlrForm glr_canonicalize(const Mat& h, const Mat& b, const ToleranceConfig& tol) {
  const int n = static_cast<int>(h.rows());
  if (b.rows() != n || h.cols() != n || b.cols() != n)
    throw InvalidInput("glr_canonicalize: dimension mismatch");
  double scale = std::max(1.0, h.norm() * std::max(1.0, b.norm()));
  if ((h - h.adjoint()).norm() > 1e-10 * std::max(1.0, h.norm()))
    throw InvalidInput("glr_canonicalize: form is not Hermitian");
  if ((h * b - b.adjoint() * h).norm() > 1e-8 * scale)
    throw InvalidInput("glr_canonicalize: operator is not self-adjoint");
  if (rank_and_kernel(h, tol.rank_tol).rank != n)
    throw InvalidInput("glr_canonicalize: form is degenerate");

  SpectralProfile prof = profile_square(b, tol);
  const double bnorm = b.norm();

  std::vector<std::pair<GlrBlock, Mat>> pieces;
  for (const auto& cl : prof.clusters) {
    bool real_eta = cl.lambda_sq.imag() == 0.0;
    ToleranceConfig ctol = tol;
    ctol.rank_tol = std::max(tol.rank_tol, cl.local_rank_tol);
    ctol.verify_tol = std::max(tol.verify_tol, 10.0 * ctol.rank_tol);
    Mat v = cluster_invariant_subspace(b, cl, ctol, bnorm);
    Mat hc = v.adjoint() * h * v;
    Mat bc = v.adjoint() * b * v;
    while (v.cols() > 0) {
      int s1 = max_grade(bc, cl.lambda_sq, ctol.rank_tol, bnorm);
      if (s1 <= 0)
        throw NumericalFailure("glr_canonicalize: stalled peel");
      GlrBlock bl;
      bl.eta = cl.lambda_sq;
      bl.k = s1;
      bl.real_eta = real_eta;
      Mat local;
      if (real_eta) {
        GlrChain ch = glr_peel_real(hc, bc, cl.lambda_sq.real(), s1, ctol, bnorm);
        bl.epsilon = ch.epsilon;
        local = reversed_cols(ch.chain);
      } else {
        GlrChain ch = glr_peel_nonreal(hc, bc, cl.lambda_sq, s1, ctol, bnorm);
        bl.epsilon = 1;
        local = Mat(ch.chain.rows(), 2 * s1);
        local.leftCols(s1) = reversed_cols(ch.chain);
        local.rightCols(s1) = reversed_cols(ch.conj_chain);
      }
      pieces.emplace_back(bl, Mat(v * local));
      // ell-orthogonal complement inside the cluster subspace
      Mat w = rank_and_kernel(Mat(local.adjoint() * hc), ctol.rank_tol).kernel;
      if (w.cols() != v.cols() - local.cols())
        throw NumericalFailure("glr_canonicalize: complement dimension drop");
      v = v * w;
      hc = w.adjoint() * hc * w;
      bc = w.adjoint() * bc * w;
    }
  }

  std::stable_sort(pieces.begin(), pieces.end(),
                   [](const auto& a, const auto& b) {
                     auto key = [](const GlrBlock& x) {
                       return std::make_tuple(x.eta.real(), x.eta.imag(), -x.k,
                                              -x.epsilon);
                     };
                     return key(a.first) < key(b.first);
                   });

  GlrForm out;
  Mat p(n, n);
  int off = 0;
  for (auto& [bl, cols] : pieces) {
    out.blocks.push_back(bl);
    p.middleCols(off, static_cast<int>(cols.cols())) = cols;
    off += static_cast<int>(cols.cols());
  }
  if (off != n) throw NumericalFailure("glr_canonicalize: basis is incomplete");
  if (rank_and_kernel(p, tol.rank_tol).rank != n)
    throw NumericalFailure("glr_canonicalize: transition is singular");
  out.transition = p.inverse();

  auto [hcan, jcan] = assemble_glr(out.blocks);
  Mat minv = p;
  out.residuals.h_residual = rel_residual(Mat(minv.adjoint() * h * minv - hcan), hcan);
  out.residuals.c_residual =
      rel_residual(Mat(out.transition * b * minv - jcan), jcan);
  return out;
}

}  // namespace canonpair
