#include "spectral.hpp"

#include "kernel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace canonpair {

namespace {

// Union-find over eigenvalue indices.
struct DSU {
  std::vector<int> parent;
  explicit DSU(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

SpectralProfile profile_square(const Mat& bsq, const ToleranceConfig& tol) {
  const int n = static_cast<int>(bsq.rows());
  std::vector<Complex> ev_list = eigenvalues(bsq);
  Vec evs = Eigen::Map<const Vec>(ev_list.data(), static_cast<Eigen::Index>(ev_list.size()));
  const double scale = std::max(1.0, bsq.norm());
  const double radius = tol.cluster_tol * scale;

  // A defective eigenvalue of algebraic multiplicity m is only computed to
  // about (eps * scale)^(1/m): a size-m Jordan block scatters its computed
  // copies on a circle of that radius, which exceeds any fixed tolerance
  // already for m = 3. Use a multiplicity-dependent merge radius, but only
  // merge a group at the wide radius when it actually contains at least m
  // eigenvalues; well-separated simple eigenvalues are never swallowed.
  const double eps = std::numeric_limits<double>::epsilon();
  auto radius_for = [&](int m) {
    return std::max(radius, std::pow(1e3 * eps * scale, 1.0 / m));
  };

  DSU dsu(n);
  for (int m = n; m >= 2; --m) {
    const double r = radius_for(m);
    for (int i = 0; i < n; ++i) {
      std::vector<int> group;
      for (int j = 0; j < n; ++j)
        if (std::abs(evs(i) - evs(j)) <= r) group.push_back(j);
      if (static_cast<int>(group.size()) >= m)
        for (int j : group) dsu.unite(i, j);
    }
  }

  // Cluster means and sizes. The mean cancels the first-order scatter of a
  // defective eigenvalue, so it is far more accurate than the members.
  std::vector<Complex> sum(n, Complex(0, 0));
  std::vector<int> count(n, 0);
  for (int i = 0; i < n; ++i) {
    int r = dsu.find(i);
    sum[r] += evs(i);
    count[r] += 1;
  }

  std::vector<SpectralCluster> raw;
  for (int r = 0; r < n; ++r) {
    if (count[r] == 0) continue;
    Complex mean = sum[r] / static_cast<double>(count[r]);
    const double rad = radius_for(count[r]);
    if (std::abs(mean.imag()) <= rad) mean = Complex(mean.real(), 0.0);
    if (std::abs(mean) <= rad) mean = Complex(0.0, 0.0);
    SpectralCluster cl;
    cl.lambda_sq = mean;
    cl.multiplicity = count[r];
    // The members scatter by ~rad, but their mean cancels the first-order
    // error, so arithmetic against the mean only sees ~rad^2, which stays
    // below the rank tolerance; no per-cluster loosening is needed, and
    // loosening would risk swallowing a nearby genuine eigenvalue.
    cl.local_rank_tol = tol.rank_tol;
    raw.push_back(cl);
  }

  // Fold conjugate pairs; keep the Im > 0 representative.
  std::vector<SpectralCluster> out;
  std::vector<bool> used(raw.size(), false);
  for (size_t i = 0; i < raw.size(); ++i) {
    if (used[i]) continue;
    SpectralCluster cl = raw[i];
    if (cl.lambda_sq.imag() < 0.0) cl.lambda_sq = std::conj(cl.lambda_sq);
    if (raw[i].lambda_sq.imag() != 0.0) {
      for (size_t j = i + 1; j < raw.size(); ++j) {
        if (used[j]) continue;
        if (std::abs(raw[j].lambda_sq - std::conj(raw[i].lambda_sq)) <=
            std::max(radius_for(raw[i].multiplicity),
                     radius_for(raw[j].multiplicity))) {
          if (raw[j].multiplicity != raw[i].multiplicity)
            throw NumericalFailure(
                "profile_square: conjugate clusters with mismatched multiplicity");
          used[j] = true;
          break;
        }
      }
    }
    cl.family = classify_lambda_sq(cl.lambda_sq, tol.cluster_tol);
    cl.lambda = principal_sqrt(cl.lambda_sq);
    used[i] = true;
    out.push_back(cl);
  }

  // Jordan sizes of the lambda_sq part, read off the full matrix: kernel
  // dimensions of (bsq - lambda_sq)^j only see that eigenvalue.
  for (auto& cl : out) {
    Mat shifted = bsq - cl.lambda_sq * Mat::Identity(n, n);
    std::vector<int> sizes = nilpotent_segre(
        shifted, cl.local_rank_tol, std::max(bsq.norm(), std::abs(cl.lambda_sq)));
    cl.jordan_sizes.clear();
    for (size_t i = 0; i < sizes.size();) {
      size_t j = i;
      while (j < sizes.size() && sizes[j] == sizes[i]) ++j;
      cl.jordan_sizes.emplace_back(sizes[i], static_cast<int>(j - i));
      i = j;
    }
  }

  std::sort(out.begin(), out.end(),
            [](const SpectralCluster& a, const SpectralCluster& b) {
              bool ra = a.lambda_sq.imag() == 0.0, rb = b.lambda_sq.imag() == 0.0;
              if (ra != rb) return ra;
              if (a.lambda_sq.real() != b.lambda_sq.real())
                return a.lambda_sq.real() < b.lambda_sq.real();
              return a.lambda_sq.imag() < b.lambda_sq.imag();
            });

  SpectralProfile profile;
  profile.clusters = std::move(out);
  profile.cluster_radius = radius;
  return profile;
}

Mat generalized_eigenspace(const Mat& b, Complex eta, int power, double rank_tol,
                           double scale_floor) {
  const int n = static_cast<int>(b.rows());
  Mat shifted = b - eta * Mat::Identity(n, n);
  // Natural per-factor magnitude; accumulated monotonically so the cutoff
  // never collapses when an intermediate power vanishes exactly and its
  // computed norm is rounding noise.
  const double mag =
      std::max({shifted.norm(), b.norm(), std::abs(eta), scale_floor});
  Mat pw = Mat::Identity(n, n);
  double scale = std::sqrt(static_cast<double>(n));
  for (int i = 0; i < power; ++i) {
    scale *= mag;
    pw = pw * shifted;
  }
  return rank_and_kernel(pw, rank_tol, scale).kernel;
}

Mat cluster_invariant_subspace(const Mat& bsq, const SpectralCluster& cl,
                               const ToleranceConfig& tol, double scale_floor) {
  const int n = static_cast<int>(bsq.rows());
  Mat v = generalized_eigenspace(bsq, cl.lambda_sq, cl.multiplicity, tol.rank_tol,
                                 scale_floor);
  if (cl.family == Family::Nonreal) {
    Mat w = generalized_eigenspace(bsq, std::conj(cl.lambda_sq), cl.multiplicity,
                                   tol.rank_tol, scale_floor);
    Mat joined(n, v.cols() + w.cols());
    joined << v, w;
    Eigen::HouseholderQR<Mat> qr(joined);
    Mat q = qr.householderQ() * Mat::Identity(n, static_cast<int>(joined.cols()));
    v = q;
  }
  return v;
}

RealMat realify_antilinear(const Mat& c) {
  const int n = static_cast<int>(c.rows());
  RealMat r(2 * n, 2 * n);
  RealMat x = c.real(), y = c.imag();
  r.topLeftCorner(n, n) = x;
  r.topRightCorner(n, n) = y;
  r.bottomLeftCorner(n, n) = y;
  r.bottomRightCorner(n, n) = -x;
  return r;
}

RealVec realify_vec(const Vec& v) {
  const int n = static_cast<int>(v.size());
  RealVec out(2 * n);
  out.head(n) = v.real();
  out.tail(n) = v.imag();
  return out;
}

Vec complexify_vec(const RealVec& v) {
  const int n = static_cast<int>(v.size()) / 2;
  return v.head(n) + Complex(0, 1) * v.tail(n);
}

Mat antilinear_power(const Mat& c, int m) {
  if (m < 1) throw InvalidInput("antilinear_power: m must be >= 1");
  Mat k = c;
  for (int i = 1; i < m; ++i) k = c * k.conjugate();
  return k;
}

int antilinear_nilpotency_index(const Mat& c, double rank_tol) {
  const int n = static_cast<int>(c.rows());
  double scale = std::max(1.0, c.norm());
  Mat k = c;
  for (int m = 1; m <= 2 * n; ++m) {
    if (k.norm() <= rank_tol * scale) return m;
    k = c * k.conjugate();
    scale *= std::max(1.0, c.norm());
  }
  return 0;
}

Mat real_filtration_basis(const RealMat& r, double lambda, int power,
                          double rank_tol) {
  const int m = static_cast<int>(r.rows());
  RealMat shifted = r - lambda * RealMat::Identity(m, m);
  const double mag = std::max({shifted.norm(), r.norm(), std::abs(lambda)});
  RealMat pw = RealMat::Identity(m, m);
  double scale = std::sqrt(static_cast<double>(m));
  for (int i = 0; i < power; ++i) {
    scale *= mag;
    pw = pw * shifted;
  }
  Eigen::JacobiSVD<RealMat> svd(pw, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() ? sv(0) : 0.0;
  double cutoff = rank_tol * std::max({smax, scale, 1e-300});
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  RealMat ker = svd.matrixV().rightCols(m - rank);
  Mat out(m / 2, ker.cols());
  for (int j = 0; j < ker.cols(); ++j)
    out.col(j) = complexify_vec(ker.col(j));
  return out;
}

std::pair<Vec, Vec> real_form_split(const Vec& v, const Mat& w, double rank_tol) {
  const int n = static_cast<int>(v.size());
  const int d = static_cast<int>(w.cols());
  // v = W x + i W y with x, y real.
  RealMat sys(2 * n, 2 * d);
  sys.topLeftCorner(n, d) = w.real();
  sys.topRightCorner(n, d) = -w.imag();
  sys.bottomLeftCorner(n, d) = w.imag();
  sys.bottomRightCorner(n, d) = w.real();
  RealVec rhs(2 * n);
  rhs.head(n) = v.real();
  rhs.tail(n) = v.imag();
  RealVec sol = sys.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
  double resid = (sys * sol - rhs).norm();
  if (resid > 1e3 * rank_tol * std::max(1.0, rhs.norm()))
    throw NumericalFailure("real_form_split: vector not in the subspace");
  Vec vp = w * sol.head(d).cast<Complex>();
  Vec vm = w * sol.tail(d).cast<Complex>();
  return {vp, vm};
}

std::vector<int> nilpotent_segre(const Mat& m, double rank_tol,
                                 double scale_floor) {
  const int n = static_cast<int>(m.rows());
  const double mag = std::max(m.norm(), scale_floor);
  // d_j = dim ker(m^j); chain-length counts come from increments.
  std::vector<int> dims{0};
  Mat pw = Mat::Identity(n, n);
  double scale = std::sqrt(static_cast<double>(n));
  for (int j = 1; j <= n; ++j) {
    scale *= mag;
    pw = pw * m;
    int d = n - rank_and_kernel(pw, rank_tol, scale).rank;
    dims.push_back(d);
    if (d == dims[j - 1]) break;
  }
  int levels = static_cast<int>(dims.size()) - 1;
  // increments[j] = number of chains of length >= j
  std::vector<int> inc(levels + 1, 0);
  for (int j = 1; j <= levels; ++j) inc[j] = dims[j] - dims[j - 1];
  std::vector<int> sizes;
  for (int j = levels; j >= 1; --j) {
    int exact = inc[j] - (j < levels ? inc[j + 1] : 0);
    for (int t = 0; t < exact; ++t) sizes.push_back(j);
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

}  // namespace canonpair
