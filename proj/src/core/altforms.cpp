#include "altforms.hpp"

#include "atlas.hpp"
#include "canonicalize.hpp"
#include "kernel.hpp"

#include <map>
#include <tuple>

namespace canonpair {

namespace {

using BlockKey = std::tuple<int, int, int, double, double>;

BlockKey key_of(const CanonicalBlock& b) {
  return {static_cast<int>(b.family), b.k, b.epsilon, b.lambda_sq.real(),
          b.lambda_sq.imag()};
}

}  // namespace

Mat block_converter(const CanonicalBlock& b, const ToleranceConfig& tol) {
  static std::map<BlockKey, Mat> cache;
  auto it = cache.find(key_of(b));
  if (it != cache.end()) return it->second;

  auto [haltm, caltm] = build_alt_block(b);
  SelfAdjointPair alt = validate_pair(haltm, caltm, tol);
  CanonicalForm f = canonicalize_pair(alt, tol);
  if (f.blocks.size() != 1 || f.blocks[0].family != b.family ||
      f.blocks[0].k != b.k || f.blocks[0].epsilon != b.epsilon)
    throw NumericalFailure("block_converter: alternative model did not round-trip");
  if (!f.residuals.pass(tol.verify_tol))
    throw NumericalFailure("block_converter: converter residual too large");
  Mat d = f.transition.inverse();
  cache.emplace(key_of(b), d);
  return d;
}

CanonicalForm alt_canonicalize(const SelfAdjointPair& p, const ToleranceConfig& tol) {
  CanonicalForm f = canonicalize_pair(p, tol);
  return convert_form(f, Flavor::Alternative, tol);
}

CanonicalForm convert_form(const CanonicalForm& f, Flavor target,
                           const ToleranceConfig& tol) {
  if (f.flavor == target) return f;
  if ((f.flavor != Flavor::Standard && f.flavor != Flavor::Alternative) ||
      (target != Flavor::Standard && target != Flavor::Alternative))
    throw InvalidInput("convert_form: only standard <-> alternative is supported");

  const int n = f.total_dim();
  Mat d = Mat::Zero(n, n);
  int off = 0;
  for (const auto& b : f.blocks) {
    d.block(off, off, b.dim(), b.dim()) = block_converter(b, tol);
    off += b.dim();
  }
  CanonicalForm out = f;
  out.flavor = target;
  out.transition = (target == Flavor::Alternative) ? Mat(d * f.transition)
                                                   : Mat(d.inverse() * f.transition);
  return out;
}

bool is_glr_symmetry(const Mat& m, int n, Complex lambda_sq, double tol) {
  if (m.rows() != n || m.cols() != n) return false;
  Mat s = sip_matrix(n);
  Mat j = jordan_block(lambda_sq, n);
  double scale = std::max(1.0, m.norm() * m.norm());
  return (m.adjoint() * s * m - s).norm() <= tol * scale &&
         (m * j - j * m).norm() <= tol * std::max(1.0, m.norm() * j.norm());
}

}  // namespace canonpair
