#include "kernel.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace canonpair {

namespace {

void require_square(const Mat& m, const char* who) {
  if (m.rows() != m.cols())
    throw InvalidInput(std::string(who) + ": matrix must be square");
  if (m.rows() > kMaxDim)
    throw InvalidInput(std::string(who) + ": dimension exceeds supported maximum");
}

void require_finite(const Mat& m, const char* who) {
  if (!m.allFinite())
    throw InvalidInput(std::string(who) + ": matrix has non-finite entries");
}

}  // namespace

std::vector<Complex> eigenvalues(const Mat& m) {
  require_square(m, "eigenvalues");
  require_finite(m, "eigenvalues");
  if (m.rows() == 0) return {};
  Eigen::ComplexEigenSolver<Mat> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw NumericalFailure("eigenvalues: QR iteration did not converge");
  std::vector<Complex> out(es.eigenvalues().data(),
                           es.eigenvalues().data() + m.rows());
  return out;
}

RankKernel rank_and_kernel(const Mat& m, double rank_tol, double scale_hint) {
  require_finite(m, "rank_and_kernel");
  if (m.cols() == 0) return {0, Mat(m.rows(), 0)};
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() > 0 ? sv(0) : 0.0;
  double cutoff = rank_tol * std::max(smax, scale_hint);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  RankKernel rk;
  rk.rank = rank;
  rk.kernel = svd.matrixV().rightCols(m.cols() - rank);
  return rk;
}

std::pair<Mat, RealVec> hermitian_diagonalize(const Mat& h, double verify_tol) {
  require_square(h, "hermitian_diagonalize");
  require_finite(h, "hermitian_diagonalize");
  if (rel_residual(h - h.adjoint(), h) > verify_tol)
    throw InvalidInput("hermitian_diagonalize: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  if (es.info() != Eigen::Success)
    throw NumericalFailure("hermitian_diagonalize: eigensolver failed");
  const int n = static_cast<int>(h.rows());
  Mat u(n, n);
  RealVec d(n);
  for (int i = 0; i < n; ++i) {  // Eigen sorts ascending; we want descending
    u.col(i) = es.eigenvectors().col(n - 1 - i);
    d(i) = es.eigenvalues()(n - 1 - i);
  }
  if (rel_residual(u * d.cast<Complex>().asDiagonal() * u.adjoint() - h, h) > verify_tol)
    throw NumericalFailure("hermitian_diagonalize: reconstruction residual too large");
  return {u, d};
}

std::pair<Mat, RealVec> takagi(const Mat& s, double verify_tol) {
  require_square(s, "takagi");
  require_finite(s, "takagi");
  if (rel_residual(s - s.transpose(), s) > verify_tol)
    throw InvalidInput("takagi: input is not symmetric");
  const int n = static_cast<int>(s.rows());
  if (n == 0) return {Mat(0, 0), RealVec(0)};

  // Realify the antilinear map v -> s * conj(v).  Its realification
  // [[X, Y], [Y, -X]] is real symmetric; eigenpairs come as (+sigma, u) and
  // (-sigma, i*u), so the nonnegative-eigenvalue vectors are Takagi vectors.
  RealMat x = s.real(), y = s.imag();
  RealMat k(2 * n, 2 * n);
  k << x, y, y, -x;
  Eigen::SelfAdjointEigenSolver<RealMat> es(k);
  if (es.info() != Eigen::Success)
    throw NumericalFailure("takagi: realified eigensolver failed");

  double smax = es.eigenvalues().cwiseAbs().maxCoeff();
  double zero_tol = 1e-12 * std::max(1.0, smax);

  std::vector<std::pair<double, Vec>> positive;
  std::vector<Vec> kernel_candidates;
  for (int j = 2 * n - 1; j >= 0; --j) {  // descending eigenvalues
    double sigma = es.eigenvalues()(j);
    Vec u = es.eigenvectors().col(j).head(n).cast<Complex>() +
            Complex(0, 1) * es.eigenvectors().col(j).tail(n).cast<Complex>();
    if (sigma > zero_tol)
      positive.emplace_back(sigma, u);
    else if (std::abs(sigma) <= zero_tol)
      kernel_candidates.push_back(u);
  }

  Mat u_out(n, 0);
  RealVec sigma_out = RealVec::Zero(n);
  int col = 0;
  for (auto& [sigma, u] : positive) {
    u_out.conservativeResize(n, col + 1);
    u_out.col(col) = u;
    sigma_out(col) = sigma;
    ++col;
  }
  // Complete with a complex-orthonormal basis of the con-kernel.
  for (const Vec& cand : kernel_candidates) {
    if (col == n) break;
    Vec v = cand;
    for (int j = 0; j < col; ++j) v -= u_out.col(j).dot(v) * u_out.col(j);
    if (v.norm() > 0.5) {  // candidates are unit; rejects the i*u duplicates
      u_out.conservativeResize(n, col + 1);
      u_out.col(col) = v / v.norm();
      sigma_out(col) = 0.0;
      ++col;
    }
  }
  if (col != n)
    throw NumericalFailure("takagi: failed to assemble a unitary factor");

  Mat recon = u_out * sigma_out.cast<Complex>().asDiagonal() * u_out.transpose();
  if (rel_residual(recon - s, s) > verify_tol)
    throw NumericalFailure("takagi: reconstruction residual too large");
  return {u_out, sigma_out};
}

std::pair<int, int> signature(const Mat& h, const ToleranceConfig& tol) {
  auto [u, d] = hermitian_diagonalize(h, tol.verify_tol);
  (void)u;
  double scale = std::max(1e-300, h.norm());
  int pos = 0, neg = 0;
  for (int i = 0; i < d.size(); ++i) {
    if (std::abs(d(i)) <= tol.rank_tol * scale)
      throw InvalidInput("signature: Hermitian matrix is numerically degenerate");
    (d(i) > 0 ? pos : neg)++;
  }
  return {pos, neg};
}

}  // namespace canonpair
