#include "normalize.hpp"

#include "atlas.hpp"
#include "glr.hpp"
#include "kernel.hpp"
#include "pair.hpp"
#include "spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace canonpair {

namespace {

Vec apply_a(const Mat& c, const Vec& v) { return c * v.conjugate(); }

// e_1 = v, e_{i+1} = (A - lambda) e_i with A antilinear. lambda real here.
Mat a_chain(const Mat& c, double lambda, const Vec& v, int len) {
  Mat out(v.size(), len);
  Vec cur = v;
  for (int i = 0; i < len; ++i) {
    out.col(i) = cur;
    if (i + 1 < len) cur = apply_a(c, cur) - lambda * cur;
  }
  return out;
}

// e_1 = v, e_{i+1} = (B - eta) e_i for a linear matrix b.
Mat b_chain(const Mat& b, Complex eta, const Vec& v, int len) {
  const int n = static_cast<int>(b.rows());
  Mat shifted = b - eta * Mat::Identity(n, n);
  Mat out(n, len);
  Vec cur = v;
  for (int i = 0; i < len; ++i) {
    out.col(i) = cur;
    if (i + 1 < len) cur = shifted * cur;
  }
  return out;
}

Mat reversed_cols(const Mat& m) { return m.rowwise().reverse(); }

// Rebuild a chain from rescale coefficients: new seed = sum alpha_i e_{1+i}.
Vec combine(const Mat& chain, const std::vector<double>& alpha) {
  Vec out = Vec::Zero(chain.rows());
  for (size_t i = 0; i < alpha.size(); ++i) out += alpha[i] * chain.col(i);
  return out;
}

}  // namespace

double fourier_seed_angle(double /*a0*/, double a1, double b1) {
  return 0.5 * std::atan2(b1, a1);
}

PeelResult peel_positive(const Mat& h, const Mat& c, double lambda, int s1,
                         const ToleranceConfig& tol) {
  const Complex eta(lambda * lambda, 0.0);
  Mat bsq = square_operator(c);
  // Noise in the squared operator lives at the scale of ||c||^2.
  const double bscale = c.norm() * c.norm();
  Vec seed0 = glr_seed_real(h, bsq, eta.real(), s1, tol, bscale);

  // Real points of the filtration space; their complex span is the whole
  // generalized eigenspace, so the split below is well posed.
  RealMat ra = realify_antilinear(c);
  Mat wt = real_filtration_basis(ra, lambda, s1, tol.rank_tol);
  Mat wcx = generalized_eigenspace(bsq, eta, s1, tol.rank_tol, bscale);
  if (wt.cols() != wcx.cols())
    throw NumericalFailure("peel_positive: real filtration dimension mismatch");
  auto [vplus, vminus] = real_form_split(seed0, wt, tol.rank_tol);

  auto rotated = [&](double theta) -> Vec {
    return std::cos(theta) * vplus - std::sin(theta) * vminus;
  };
  auto pairing = [&](const Vec& u, const Vec& w) -> Complex {
    Mat ch = a_chain(c, lambda, w, s1);
    return form_value(h, u, Vec(ch.col(s1 - 1)));
  };

  const Complex ppp = pairing(vplus, vplus), pmm = pairing(vminus, vminus);
  const Complex ppm = pairing(vplus, vminus), pmp = pairing(vminus, vplus);
  const double floor_im = tol.verify_tol * std::max(1.0, h.norm());
  for (Complex z : {ppp, pmm, ppm, pmp})
    if (std::abs(z.imag()) > floor_im)
      throw NumericalFailure("peel_positive: pairing is not real on the real span");
  const double a0 = (ppp + pmm).real();
  const double a1 = (ppp - pmm).real();
  const double b1 = -(ppm + pmp).real();

  double phi = fourier_seed_angle(a0, a1, b1);
  std::vector<double> cands{phi, phi + 0.5 * M_PI};
  for (int i = 0; i < 64; ++i) cands.push_back(M_PI * i / 64.0);
  double best_theta = 0.0, best_score = -1.0;
  for (double theta : cands) {
    Vec v = rotated(theta);
    double nrm = v.norm();
    if (nrm < 1e-14) continue;
    v /= nrm;
    double sc = std::abs(pairing(v, v));
    if (sc > best_score) { best_score = sc; best_theta = theta; }
  }
  if (best_score < tol.rank_tol * std::max(1.0, h.norm()))
    throw NumericalFailure("peel_positive: no admissible seed angle");

  Vec v = rotated(best_theta);
  v /= v.norm();
  Mat chain = a_chain(c, lambda, v, s1);

  // Gram is real Hankel with zeros above the antidiagonal; check before
  // rescaling.
  const double hscale = std::max(1.0, h.norm());
  std::vector<double> hvals(s1);
  for (int i = 0; i < s1; ++i)
    for (int j = 0; j < s1; ++j) {
      Complex g = form_value(h, Vec(chain.col(i)), Vec(chain.col(j)));
      if (std::abs(g.imag()) > tol.verify_tol * hscale)
        throw NumericalFailure("peel_positive: Gram has a nonreal entry");
      if (i + j + 2 >= s1 + 2 && std::abs(g) > tol.verify_tol * hscale)
        throw NumericalFailure("peel_positive: Gram zero pattern violated");
      if (i == 0 && j <= s1 - 1) hvals[s1 - 1 - j] = g.real();
    }
  auto [alpha, eps] = toeplitz_rescale(hvals);
  Vec seed = combine(chain, alpha);

  PeelResult out;
  out.block = make_block(Family::PositiveReal, eta, s1, eps);
  out.basis = reversed_cols(a_chain(c, lambda, seed, s1));
  return out;
}

PeelResult peel_zero(const Mat& h, const Mat& c, const ToleranceConfig& tol,
                     double op_scale) {
  const int n = static_cast<int>(h.rows());
  RealMat ra = realify_antilinear(c);
  Mat racx = ra.cast<Complex>();
  std::vector<int> sizes = nilpotent_segre(racx, tol.rank_tol, op_scale);
  const int k = sizes.empty() ? 0 : sizes.front();
  if (k <= 0 || k > n)
    throw NumericalFailure("peel_zero: operator is not nilpotent in range");

  Mat kmat = (k >= 2) ? antilinear_power(c, k - 1) : Mat(Mat::Identity(n, n));
  const double hscale = std::max(1.0, h.norm() * std::max(1.0, kmat.norm()));

  Vec a1;
  int eps = 1;
  if (k % 2 == 1) {
    // A^{k-1} is linear; v -> l(A^{k-1} v, v) is a Hermitian form with
    // matrix H K. Its largest eigenvalue in magnitude selects the seed.
    Mat m = h * kmat;
    m = 0.5 * (m + m.adjoint()).eval();
    auto [u, d] = hermitian_diagonalize(m, tol.verify_tol);
    int idx = std::abs(d(0)) >= std::abs(d(d.size() - 1)) ? 0
                                                          : int(d.size()) - 1;
    double mu = d(idx);
    if (std::abs(mu) < tol.rank_tol * hscale)
      throw NumericalFailure("peel_zero: degenerate top form (odd size)");
    eps = mu > 0 ? 1 : -1;
    a1 = u.col(idx) / std::sqrt(std::abs(mu));
    Complex val = form_value(h, Vec(kmat * a1), a1);
    if (std::abs(val.imag()) > tol.verify_tol * std::max(1.0, hscale))
      throw NumericalFailure("peel_zero: top pairing has a nonreal phase");
  } else {
    // A^{k-1} is antilinear; v -> l(A^{k-1} v, v) is a symmetric bilinear
    // form in conj(v) with matrix H K. Takagi gives the extremal seed.
    Mat s = h * kmat;
    s = 0.5 * (s + s.transpose()).eval();
    auto [u, sig] = takagi(s, tol.verify_tol);
    if (sig(0) < tol.rank_tol * hscale)
      throw NumericalFailure("peel_zero: degenerate top form (even size)");
    a1 = u.col(0) / std::sqrt(sig(0));
    eps = 1;
  }

  // Chain e_i = A^{i-1} e_1; corrections e_1 += gamma_M e_M kill the
  // subdiagonal values l(e_1, e_j), j < k, one at a time. Each value is
  // affine over R^2 in the matching gamma, so three probes determine it.
  Mat raw = a_chain(c, 0.0, a1, k);
  Vec e1 = a1;
  for (int j = k - 1; j >= 1; --j) {
    const int bigm = k + 1 - j;  // 1-based chain index of the probe column
    auto phi = [&](Complex gamma) -> Complex {
      Vec cand = e1 + gamma * raw.col(bigm - 1);
      Mat ch = a_chain(c, 0.0, cand, j);
      return form_value(h, cand, Vec(ch.col(j - 1)));
    };
    Complex c0 = phi(0.0), c1 = phi(1.0), ci = phi(Complex(0, 1));
    double m00 = (c1 - c0).real(), m01 = (ci - c0).real();
    double m10 = (c1 - c0).imag(), m11 = (ci - c0).imag();
    double det = m00 * m11 - m01 * m10;
    if (std::abs(det) < tol.rank_tol * hscale * tol.rank_tol) {
      if (std::abs(c0) > tol.verify_tol * hscale)
        throw NumericalFailure("peel_zero: orthogonalization step is singular");
      continue;
    }
    double x = (-c0.real() * m11 + c0.imag() * m01) / det;
    double y = (-m00 * c0.imag() + m10 * c0.real()) / det;
    e1 += Complex(x, y) * raw.col(bigm - 1);
  }

  Mat chain = a_chain(c, 0.0, e1, k);
  Complex top = form_value(h, e1, Vec(chain.col(k - 1)));
  if (std::abs(top - double(eps)) > tol.verify_tol * std::max(1.0, hscale))
    throw NumericalFailure("peel_zero: top pairing drifted");

  PeelResult out;
  out.block = make_block(Family::Zero, Complex(0, 0), k, eps);
  out.basis = reversed_cols(chain);
  return out;
}

PeelResult peel_negative(const Mat& h, const Mat& c, double lambda_sq, int s1,
                         const ToleranceConfig& tol) {
  if (lambda_sq >= 0.0) throw InvalidInput("peel_negative: lambda_sq must be < 0");
  Mat bsq = square_operator(c);
  const Complex eta(lambda_sq, 0.0);
  const double hscale = std::max(1.0, h.norm());
  const double bscale = c.norm() * c.norm();

  GlrChain gch = glr_peel_real(h, bsq, lambda_sq, s1, tol, bscale);
  Mat achain = gch.chain;
  int epsp = gch.epsilon;

  // Stage 1: arrange l(a_1, A a_{s1}) = 0 while keeping the chain Gram
  // anti-diagonal. Both roots of the quadratic are tried; the one keeping
  // the top value away from zero wins.
  Complex p = form_value(h, Vec(achain.col(0)), apply_a(c, Vec(achain.col(s1 - 1))));
  if (std::abs(p) > tol.rank_tol * hscale) {
    Complex disc = std::sqrt(Complex(lambda_sq * lambda_sq, 0.0) -
                             lambda_sq * std::norm(p));
    Complex base = -lambda_sq * double(epsp);
    std::array<Complex, 2> roots{(base + disc) / p, (base - disc) / p};
    Vec b1 = apply_a(c, Vec(achain.col(0)));
    Mat best_chain;
    double best_top = -1.0;
    for (Complex alpha : roots) {
      Vec w = alpha * achain.col(0) + b1;
      Mat ch = b_chain(bsq, eta, w, s1);
      double t = std::abs(form_value(h, w, Vec(ch.col(s1 - 1))));
      if (t > best_top) { best_top = t; best_chain = ch; }
    }
    if (best_top < tol.rank_tol * hscale)
      throw NumericalFailure("peel_negative: both quadratic roots degenerate");
    // Restore the anti-diagonal Gram; real coefficients keep the new
    // l(a_1, A a_{s1}) at zero.
    std::vector<double> hvals(s1);
    for (int t = 0; t < s1; ++t)
      hvals[t] = form_value(h, Vec(best_chain.col(0)),
                            Vec(best_chain.col(s1 - 1 - t))).real();
    auto [alpha2, eps2] = toeplitz_rescale(hvals);
    Vec seed = combine(best_chain, alpha2);
    achain = b_chain(bsq, eta, seed, s1);
    epsp = eps2;
    Complex phat = form_value(h, Vec(achain.col(0)),
                              apply_a(c, Vec(achain.col(s1 - 1))));
    if (std::abs(phat) > tol.verify_tol * hscale)
      throw NumericalFailure("peel_negative: mixed pairing did not vanish");
  }

  // Stage 2: e_1 = sqrt(-lambda^2) a_1 + A a_1 self-pairs to zero; its
  // B-chain and the A-image chain carry the block.
  const double mu0 = std::sqrt(-lambda_sq);
  Vec e1 = mu0 * achain.col(0) + apply_a(c, Vec(achain.col(0)));
  Mat echain = b_chain(bsq, eta, e1, s1);
  Complex cval = form_value(h, e1, apply_a(c, Vec(echain.col(s1 - 1))));
  if (std::abs(cval) < tol.rank_tol * hscale)
    throw NumericalFailure("peel_negative: cross pairing collapsed");
  if (std::abs(cval.imag()) > tol.verify_tol * std::max(1.0, std::abs(cval)))
    throw NumericalFailure("peel_negative: cross pairing is not real");
  Complex mu = principal_sqrt(1.0 / cval);
  e1 = mu * e1;
  echain = b_chain(bsq, eta, e1, s1);
  Mat fchain(echain.rows(), s1);
  for (int m = 0; m < s1; ++m) fchain.col(m) = apply_a(c, Vec(echain.col(m)));
  Complex self = form_value(h, e1, Vec(echain.col(s1 - 1)));
  if (std::abs(self) > tol.verify_tol * hscale)
    throw NumericalFailure("peel_negative: self pairing did not vanish");

  // Stage 3: kill the sub-top self pairings l(e_1, e_m) for m < s1. Adding
  // gamma A e_{s1+1-m} with gamma = -l(e_1, e_m)/2 shifts exactly that level
  // by 2 Re gamma (the top cross pairing is 1), leaves every level above m
  // untouched, and keeps both top pairings; one downward pass suffices.
  for (int m = s1 - 1; m >= 1; --m) {
    Complex vm = form_value(h, e1, Vec(echain.col(m - 1)));
    if (std::abs(vm.imag()) > tol.verify_tol * hscale)
      throw NumericalFailure("peel_negative: self pairing is not real");
    e1 += Complex(-vm.real() / 2.0, 0.0) * fchain.col(s1 - m);
    echain = b_chain(bsq, eta, e1, s1);
    for (int q = 0; q < s1; ++q) fchain.col(q) = apply_a(c, Vec(echain.col(q)));
  }

  // Stage 4: kill the sub-top mixed pairings l(e_1, A e_j), j < s1, as in
  // the nonreal family: e_1 += gamma e_{s1+1-j} changes t_j by 2 gamma t_{s1}
  // and leaves higher levels alone. Corrections along the e-chain keep the
  // self-pairing block at zero, so this pass runs after stage 3.
  for (int j = s1 - 1; j >= 1; --j) {
    Complex tj = form_value(h, e1, Vec(fchain.col(j - 1)));
    Complex ttop = form_value(h, e1, Vec(fchain.col(s1 - 1)));
    if (std::abs(ttop) < tol.rank_tol * hscale)
      throw NumericalFailure("peel_negative: top pairing collapsed");
    e1 += (-tj / (2.0 * ttop)) * echain.col(s1 - j);
    echain = b_chain(bsq, eta, e1, s1);
    for (int q = 0; q < s1; ++q) fchain.col(q) = apply_a(c, Vec(echain.col(q)));
  }

  PeelResult out;
  out.block = make_block(Family::Negative, eta, s1, 1);
  out.basis = Mat(echain.rows(), 2 * s1);
  out.basis.leftCols(s1) = reversed_cols(echain);
  out.basis.rightCols(s1) = reversed_cols(fchain);
  return out;
}

PeelResult peel_nonreal(const Mat& h, const Mat& c, Complex lambda_sq, int s1,
                        const ToleranceConfig& tol) {
  if (lambda_sq.imag() <= 0.0)
    throw InvalidInput("peel_nonreal: need Im lambda_sq > 0");
  Mat bsq = square_operator(c);
  const double hscale = std::max(1.0, h.norm());
  const double bscale = c.norm() * c.norm();

  GlrChain gch = glr_peel_nonreal(h, bsq, lambda_sq, s1, tol, bscale);
  Vec a1 = gch.chain.col(0);
  Vec b1 = apply_a(c, Vec(gch.conj_chain.col(0)));

  auto top_pair = [&](const Vec& v) -> Complex {
    Mat ch = b_chain(bsq, lambda_sq, v, s1);
    return form_value(h, v, apply_a(c, Vec(ch.col(s1 - 1))));
  };
  const Complex w8 = std::polar(1.0, M_PI / 4.0);
  const std::array<std::pair<Complex, Complex>, 8> cands{{
      {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {1.0, -1.0},
      {1.0, Complex(0, 1)}, {1.0, Complex(0, -1)}, {1.0, w8}, {1.0, -w8}}};
  Vec e1;
  double best = -1.0;
  for (const auto& [al, be] : cands) {
    Vec v = al * a1 + be * b1;
    double nrm = v.norm();
    if (nrm < 1e-14) continue;
    v /= nrm;
    double sc = std::abs(top_pair(v));
    if (sc > best) { best = sc; e1 = v; }
  }
  if (best < tol.rank_tol * hscale)
    throw NumericalFailure("peel_nonreal: no admissible seed combination");

  // Kill the sub-top mixed pairings t_j = l(e_1, A e_j), j < s1. The
  // correction e_1 += gamma e_M with M = s1+1-j changes t_j by 2 gamma t_{s1}
  // and leaves t_{j'} for j' > j alone, so one pass suffices.
  for (int j = s1 - 1; j >= 1; --j) {
    Mat ch = b_chain(bsq, lambda_sq, e1, s1);
    Complex tj = form_value(h, e1, apply_a(c, Vec(ch.col(j - 1))));
    Complex ttop = form_value(h, e1, apply_a(c, Vec(ch.col(s1 - 1))));
    if (std::abs(ttop) < tol.rank_tol * hscale)
      throw NumericalFailure("peel_nonreal: top pairing collapsed");
    e1 += (-tj / (2.0 * ttop)) * ch.col(s1 + 1 - j - 1);
  }

  Mat echain = b_chain(bsq, lambda_sq, e1, s1);
  Complex cval = form_value(h, e1, apply_a(c, Vec(echain.col(s1 - 1))));
  Complex mu = principal_sqrt(1.0 / cval);
  e1 = mu * e1;
  echain = b_chain(bsq, lambda_sq, e1, s1);
  Mat fchain(echain.rows(), s1);
  for (int m = 0; m < s1; ++m) fchain.col(m) = apply_a(c, Vec(echain.col(m)));

  // The two half-Grams vanish because the form only pairs the eigenvalue
  // with its conjugate.
  for (int i = 0; i < s1; ++i)
    for (int j = 0; j < s1; ++j) {
      Complex gee = form_value(h, Vec(echain.col(i)), Vec(echain.col(j)));
      Complex gff = form_value(h, Vec(fchain.col(i)), Vec(fchain.col(j)));
      if (std::abs(gee) > tol.verify_tol * hscale ||
          std::abs(gff) > tol.verify_tol * hscale)
        throw NumericalFailure("peel_nonreal: half Gram did not vanish");
    }

  PeelResult out;
  out.block = make_block(Family::Nonreal, lambda_sq, s1, 1);
  out.basis = Mat(echain.rows(), 2 * s1);
  out.basis.leftCols(s1) = reversed_cols(echain);
  out.basis.rightCols(s1) = reversed_cols(fchain);
  return out;
}

}  // namespace canonpair
