#include "canonicalize.hpp"

#include "atlas.hpp"
#include "glr.hpp"
#include "kernel.hpp"
#include "normalize.hpp"
#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <tuple>
#include <vector>

namespace canonpair {

namespace {

struct Piece {
  CanonicalBlock block;
  Mat cols;  // columns in the ambient coordinates
};

void sort_pieces(std::vector<Piece>& pieces) {
  std::stable_sort(pieces.begin(), pieces.end(),
                   [](const Piece& a, const Piece& b) {
                     auto key = [](const CanonicalBlock& x) {
                       return std::make_tuple(x.lambda_sq.real(),
                                              x.lambda_sq.imag(), -x.k,
                                              -x.epsilon);
                     };
                     return key(a.block) < key(b.block);
                   });
}

CanonicalForm finish(const std::vector<Piece>& pieces, const Mat& h, const Mat& c,
                     Flavor flavor, const ToleranceConfig& tol) {
  const int n = static_cast<int>(c.rows());
  CanonicalForm out;
  out.flavor = flavor;
  Mat p(n, n);
  int off = 0;
  for (const auto& pc : pieces) {
    out.blocks.push_back(pc.block);
    p.middleCols(off, static_cast<int>(pc.cols.cols())) = pc.cols;
    off += static_cast<int>(pc.cols.cols());
  }
  if (off != n) throw NumericalFailure("canonicalize: basis is incomplete");
  if (rank_and_kernel(p, tol.rank_tol).rank != n)
    throw NumericalFailure("canonicalize: transition is singular");
  out.transition = p.inverse();

  auto [hcan, ccan] = assemble_pair(out.blocks);
  out.residuals.c_residual =
      rel_residual(Mat(out.transition * c * p.conjugate() - ccan), ccan);
  if (flavor != Flavor::OperatorOnly)
    out.residuals.h_residual =
        rel_residual(Mat(p.adjoint() * h * p - hcan), hcan);
  return out;
}

Mat restrict_antilinear(const Mat& c, const Mat& v) {
  return v.adjoint() * c * v.conjugate();
}

// Normalized columns, for scale-free independence scoring.
Mat normalized_cols(const Mat& m) {
  Mat out = m;
  for (int j = 0; j < out.cols(); ++j) {
    double nrm = out.col(j).norm();
    if (nrm > 0) out.col(j) /= nrm;
  }
  return out;
}

double smallest_singular(const Mat& m) {
  if (m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

// Orthonormalized column span.
Mat orth_cols(const Mat& m, double rank_tol) {
  if (m.cols() == 0) return m;
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rank_tol * std::max(sv(0), 1e-300)) ++rank;
  return svd.matrixU().leftCols(rank);
}

}  // namespace

CanonicalForm canonicalize_pair(const SelfAdjointPair& p, const ToleranceConfig& tol) {
  if (p.n > kMaxDim) throw InvalidInput("canonicalize_pair: dimension too large");
  Mat bsq = square_operator(p.c);
  SpectralProfile prof = profile_square(bsq, tol);
  // Noise scales for restrictions of c and of its square.
  const double cnorm = p.c.norm();
  const double bfloor = cnorm * cnorm;

  std::vector<Piece> pieces;
  for (const auto& cl : prof.clusters) {
    if (cl.family == Family::Negative)
      for (const auto& [sz, cnt] : cl.jordan_sizes)
        if (cnt % 2 != 0)
          throw NumericalFailure(
              "canonicalize_pair: odd chain count at a negative eigenvalue");

    // Within a defective cluster the eigenvalue itself carries an error far
    // above the global rank tolerance; loosen the intra-cluster tolerances
    // accordingly.
    ToleranceConfig ctol = tol;
    ctol.rank_tol = std::max(tol.rank_tol, cl.local_rank_tol);
    ctol.verify_tol = std::max(tol.verify_tol, 10.0 * ctol.rank_tol);

    Mat v = cluster_invariant_subspace(bsq, cl, ctol, bfloor);
    Mat hc = v.adjoint() * p.h * v;
    Mat cc = restrict_antilinear(p.c, v);
    while (v.cols() > 0) {
      Mat bc = square_operator(cc);
      PeelResult res;
      switch (cl.family) {
        case Family::PositiveReal: {
          int s1 = max_grade(bc, cl.lambda_sq, ctol.rank_tol, bfloor);
          res = peel_positive(hc, cc, cl.lambda.real(), s1, ctol);
          break;
        }
        case Family::Zero:
          res = peel_zero(hc, cc, ctol, cnorm);
          break;
        case Family::Negative: {
          int s1 = max_grade(bc, cl.lambda_sq, ctol.rank_tol, bfloor);
          res = peel_negative(hc, cc, cl.lambda_sq.real(), s1, ctol);
          break;
        }
        case Family::Nonreal: {
          int s1 = max_grade(bc, cl.lambda_sq, ctol.rank_tol, bfloor);
          res = peel_nonreal(hc, cc, cl.lambda_sq, s1, ctol);
          break;
        }
      }
      pieces.push_back({res.block, Mat(v * res.basis)});
      Mat w = rank_and_kernel(Mat(res.basis.adjoint() * hc), ctol.rank_tol).kernel;
      if (w.cols() != v.cols() - res.basis.cols())
        throw NumericalFailure("canonicalize_pair: complement dimension drop");
      v = v * w;
      hc = w.adjoint() * hc * w;
      cc = restrict_antilinear(cc, w);
    }
  }

  sort_pieces(pieces);
  return finish(pieces, p.h, p.c, Flavor::Standard, tol);
}

namespace {

// Greedy chain extraction shared by the operator-only families: pick the
// candidate whose block columns stay most independent from what is already
// collected.
struct ChainPicker {
  std::mt19937_64 rng{0x5eedu};
  double floor;
  // Chains at a positive eigenvalue live in a real span; combinations must
  // then use real coefficients.
  bool real_coefficients = false;

  Vec pick(const Mat& cands, const Mat& collected,
           const std::function<Mat(const Vec&)>& builder) {
    const int d = static_cast<int>(cands.cols());
    if (d == 0) throw NumericalFailure("canonicalize_operator: empty candidate set");
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<Vec> pool;
    for (int i = 0; i < d; ++i) pool.push_back(cands.col(i));
    for (int t = 0; t < 8; ++t) {
      Vec coef(d);
      for (int i = 0; i < d; ++i)
        coef(i) = real_coefficients ? Complex(unif(rng), 0.0)
                                    : Complex(unif(rng), unif(rng));
      pool.push_back(cands * coef);
    }
    Vec best;
    double best_score = -1.0;
    for (const Vec& u0 : pool) {
      double nrm = u0.norm();
      if (nrm < 1e-14) continue;
      Vec u = u0 / nrm;
      Mat block = normalized_cols(builder(u));
      Mat resid = block - collected * (collected.adjoint() * block);
      double sc = smallest_singular(resid);
      if (sc > best_score) { best_score = sc; best = u; }
    }
    if (best_score < floor)
      throw NumericalFailure("canonicalize_operator: no independent chain found");
    return best;
  }
};

Mat a_chain_op(const Mat& c, double lambda, const Vec& v, int len) {
  Mat out(v.size(), len);
  Vec cur = v;
  for (int i = 0; i < len; ++i) {
    out.col(i) = cur;
    if (i + 1 < len) cur = c * cur.conjugate() - lambda * cur;
  }
  return out;
}

Mat b_chain_op(const Mat& b, Complex eta, const Vec& v, int len) {
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

// Chain-size counts (size -> count) from a descending size list.
std::vector<std::pair<int, int>> size_counts(const std::vector<int>& sizes) {
  std::vector<std::pair<int, int>> out;
  for (size_t i = 0; i < sizes.size();) {
    size_t j = i;
    while (j < sizes.size() && sizes[j] == sizes[i]) ++j;
    out.emplace_back(sizes[i], static_cast<int>(j - i));
    i = j;
  }
  return out;
}

}  // namespace

CanonicalForm canonicalize_operator(const Mat& c, const ToleranceConfig& tol) {
  const int n = static_cast<int>(c.rows());
  if (n < 1 || c.cols() != n) throw InvalidInput("canonicalize_operator: bad shape");
  if (n > kMaxDim) throw InvalidInput("canonicalize_operator: dimension too large");

  Mat bsq = square_operator(c);
  SpectralProfile prof = profile_square(bsq, tol);
  const double cnorm = c.norm();
  const double bfloor = cnorm * cnorm;

  std::vector<Piece> pieces;
  for (const auto& cl : prof.clusters) {
    ToleranceConfig ctol = tol;
    ctol.rank_tol = std::max(tol.rank_tol, cl.local_rank_tol);
    ctol.verify_tol = std::max(tol.verify_tol, 10.0 * ctol.rank_tol);

    Mat v = cluster_invariant_subspace(bsq, cl, ctol, bfloor);
    Mat cc = restrict_antilinear(c, v);
    const int m = static_cast<int>(v.cols());
    Mat collected(m, 0);
    ChainPicker picker;
    picker.floor = 10.0 * ctol.rank_tol;

    auto accept = [&](const CanonicalBlock& bl, const Mat& cols) {
      pieces.push_back({bl, Mat(v * cols)});
      Mat joined(m, collected.cols() + cols.cols());
      joined << collected, cols;
      collected = orth_cols(joined, ctol.rank_tol);
    };

    if (cl.family == Family::PositiveReal) {
      // Real Jordan chains of the realified operator at +lambda; each one
      // complexifies to a chain of the antilinear operator.
      double lambda = cl.lambda.real();
      picker.real_coefficients = true;
      RealMat ra = realify_antilinear(cc);
      Mat shifted = (ra - lambda * RealMat::Identity(2 * m, 2 * m)).cast<Complex>();
      std::vector<int> sizes =
          nilpotent_segre(shifted, ctol.rank_tol, std::max(ra.norm(), lambda));
      (void)shifted;
      for (const auto& [g, cnt] : size_counts(sizes)) {
        // Real candidate set: the kernel of the real matrix power.
        RealMat rshift = ra - lambda * RealMat::Identity(2 * m, 2 * m);
        const double mag = std::max({rshift.norm(), ra.norm(), lambda});
        RealMat pw = RealMat::Identity(2 * m, 2 * m);
        double pscale = std::sqrt(2.0 * m);
        for (int q = 0; q < g; ++q) {
          pscale *= mag;
          pw = pw * rshift;
        }
        Eigen::JacobiSVD<RealMat> svd(pw, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        double cutoff = ctol.rank_tol * std::max({sv(0), pscale, 1e-300});
        int rank = 0;
        for (int i = 0; i < sv.size(); ++i)
          if (sv(i) > cutoff) ++rank;
        RealMat kreal = svd.matrixV().rightCols(2 * m - rank);
        Mat cand(m, kreal.cols());
        for (int j = 0; j < kreal.cols(); ++j)
          cand.col(j) = complexify_vec(kreal.col(j));
        auto builder = [&](const Vec& u) { return Mat(a_chain_op(cc, lambda, u, g)); };
        for (int t = 0; t < cnt; ++t) {
          Vec u = picker.pick(cand, collected, builder);
          // Keep the chain in the real span: drop any imaginary drift of
          // the coefficient vector.
          accept(make_block(Family::PositiveReal, cl.lambda_sq, g, 0),
                 reversed_cols(builder(u)));
        }
      }
    } else if (cl.family == Family::Zero) {
      RealMat ra = realify_antilinear(cc);
      std::vector<int> sizes =
          nilpotent_segre(ra.cast<Complex>(), ctol.rank_tol, cnorm);
      for (const auto& [g, cnt2] : size_counts(sizes)) {
        if (cnt2 % 2 != 0)
          throw NumericalFailure("canonicalize_operator: odd realified chain count");
        int cnt = cnt2 / 2;
        Mat kg = antilinear_power(cc, g);
        // For g = 1 the restriction itself may be zero up to noise; the
        // ambient norm then sets the cutoff. For g > 1 a chain of length g
        // exists, so the previous power has a genuine nonzero norm.
        double kscale = g > 1 ? antilinear_power(cc, g - 1).norm() * cc.norm()
                              : cnorm;
        Mat ker = rank_and_kernel(kg, ctol.rank_tol, kscale).kernel;
        Mat cand = (g % 2 == 0) ? ker : Mat(ker.conjugate());
        auto builder = [&](const Vec& u) { return Mat(a_chain_op(cc, 0.0, u, g)); };
        for (int t = 0; t < cnt; ++t) {
          Vec u = picker.pick(cand, collected, builder);
          accept(make_block(Family::Zero, Complex(0, 0), g, 0),
                 reversed_cols(builder(u)));
        }
      }
    } else {
      // Negative or nonreal square: any maximal chain of the squared
      // operator, together with its image under the antilinear map, carries
      // the block with no further normalization.
      Mat bc = square_operator(cc);
      Mat shifted = bc - cl.lambda_sq * Mat::Identity(m, m);
      std::vector<int> sizes = nilpotent_segre(
          shifted, ctol.rank_tol, std::max(bc.norm(), std::abs(cl.lambda_sq)));
      for (const auto& [g, cnt_raw] : size_counts(sizes)) {
        int cnt = cnt_raw;
        if (cl.family == Family::Negative) {
          if (cnt_raw % 2 != 0)
            throw NumericalFailure(
                "canonicalize_operator: odd chain count at a negative eigenvalue");
          cnt = cnt_raw / 2;
        }
        const double mag =
            std::max({shifted.norm(), bc.norm(), std::abs(cl.lambda_sq)});
        Mat pw = Mat::Identity(m, m);
        double pscale = std::sqrt(static_cast<double>(m));
        for (int q = 0; q < g; ++q) {
          pscale *= mag;
          pw = pw * shifted;
        }
        Mat cand = rank_and_kernel(pw, ctol.rank_tol, pscale).kernel;
        auto builder = [&](const Vec& u) {
          Mat ech = b_chain_op(bc, cl.lambda_sq, u, g);
          Mat out(m, 2 * g);
          out.leftCols(g) = reversed_cols(ech);
          for (int q = 0; q < g; ++q)
            out.col(g + q) = cc * ech.col(g - 1 - q).conjugate();
          return out;
        };
        for (int t = 0; t < cnt; ++t) {
          Vec u = picker.pick(cand, collected, builder);
          accept(make_block(cl.family, cl.lambda_sq, g, 0), builder(u));
        }
      }
    }
  }

  sort_pieces(pieces);
  return finish(pieces, Mat(), c, Flavor::OperatorOnly, tol);
}

Mat witness_form(const Mat& c, const ToleranceConfig& tol) {
  CanonicalForm f = canonicalize_operator(c, tol);
  std::vector<CanonicalBlock> blocks = f.blocks;
  for (auto& b : blocks) b.epsilon = 1;
  Mat hcan = assemble_pair(blocks).first;
  Mat h = f.transition.adjoint() * hcan * f.transition;
  return 0.5 * (h + h.adjoint());
}

ResidualReport verify_canonical(const SelfAdjointPair& p, const CanonicalForm& f,
                                const ToleranceConfig& tol) {
  (void)tol;
  auto [hcan, ccan] = (f.flavor == Flavor::Alternative)
                          ? assemble_alt_pair(f.blocks)
                          : assemble_pair(f.blocks);
  Mat minv = f.transition.inverse();
  ResidualReport out;
  out.h_residual = rel_residual(Mat(minv.adjoint() * p.h * minv - hcan), hcan);
  out.c_residual =
      rel_residual(Mat(f.transition * p.c * minv.conjugate() - ccan), ccan);
  return out;
}

}  // namespace canonpair
