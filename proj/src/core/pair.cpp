#include "pair.hpp"

#include <Eigen/LU>
#include <cmath>

#include "kernel.hpp"

namespace canonpair {

std::string PairDiagnostics::violation() const {
  if (!hermitian_ok) return "hermitian";
  if (!nondegenerate) return "degeneracy";
  if (!selfadjoint_ok) return "self-adjointness";
  return "";
}

PairDiagnostics diagnose_pair(const Mat& h, const Mat& c, const ToleranceConfig& tol) {
  tol.check();
  if (h.rows() != h.cols() || c.rows() != c.cols() || h.rows() != c.rows())
    throw InvalidInput("pair: H and C must be square matrices of equal size");
  if (!h.allFinite() || !c.allFinite())
    throw InvalidInput("pair: matrices have non-finite entries");

  PairDiagnostics d;
  d.hermitian_residual = rel_residual(h - h.adjoint(), h);
  d.hermitian_ok = d.hermitian_residual <= tol.verify_tol;

  double scale = h.norm();
  if (d.hermitian_ok && h.rows() > 0) {
    Eigen::SelfAdjointEigenSolver<Mat> es((h + h.adjoint()) / 2.0);
    d.min_eig_ratio = es.eigenvalues().cwiseAbs().minCoeff() / (scale == 0 ? 1.0 : scale);
  }
  d.nondegenerate = d.hermitian_ok && d.min_eig_ratio > tol.rank_tol;

  Mat hc = h * c;
  d.selfadjoint_residual = rel_residual(hc - hc.transpose(), hc);
  d.selfadjoint_ok = d.selfadjoint_residual <= tol.verify_tol;
  return d;
}

SelfAdjointPair validate_pair(const Mat& h, const Mat& c, const ToleranceConfig& tol) {
  PairDiagnostics d = diagnose_pair(h, c, tol);
  if (!d.valid())
    throw InvalidInput("pair validation failed: " + d.violation() + " violation");
  return {h, c, static_cast<int>(h.rows())};
}

Vec apply_op(const Mat& c, const Vec& v) { return c * v.conjugate(); }

Mat square_operator(const Mat& c) {
  if (c.rows() != c.cols()) throw InvalidInput("square_operator: matrix must be square");
  return c * c.conjugate();
}

Complex form_value(const Mat& h, const Vec& v, const Vec& w) {
  return w.adjoint() * h * v;
}

SelfAdjointPair apply_basis_change(const SelfAdjointPair& p, const Mat& m,
                                   const ToleranceConfig& tol) {
  if (m.rows() != p.n || m.cols() != p.n)
    throw InvalidInput("apply_basis_change: transition has wrong shape");
  if (!m.allFinite() || rank_and_kernel(m, tol.rank_tol).rank != p.n)
    throw InvalidInput("apply_basis_change: transition matrix is singular");
  Mat minv = m.inverse();
  SelfAdjointPair out;
  out.h = minv.adjoint() * p.h * minv;
  out.c = m * p.c * minv.conjugate();
  out.n = p.n;
  return out;
}

Mat symmetric_form_of_pair(const SelfAdjointPair& p, const ToleranceConfig& tol) {
  Mat g = p.h * p.c;
  if (rel_residual(g - g.transpose(), g) > tol.verify_tol)
    throw NumericalFailure("symmetric_form_of_pair: output not symmetric");
  return g;
}

}  // namespace canonpair
