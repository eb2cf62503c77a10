// Scratch diagnostic: replay canonicalize_pair with prints.
#include <Eigen/Dense>
#include <fstream>
#include <iostream>
#include <sstream>

#include "src/core/canonicalize.hpp"
#include "src/core/glr.hpp"
#include "src/core/json_io.hpp"
#include "src/core/kernel.hpp"
#include "src/core/normalize.hpp"
#include "src/core/pair.hpp"
#include "src/core/spectral.hpp"

using namespace canonpair;

int main(int argc, char** argv) {
  std::ifstream f(argv[1]);
  std::stringstream ss; ss << f.rdbuf();
  auto [h, c] = parse_pair_json(ss.str());
  ToleranceConfig tol;
  Mat bsq = square_operator(c);
  std::cout << "n=" << h.rows() << " |B|=" << bsq.norm() << "\n";
  SpectralProfile prof = profile_square(bsq, tol);
  for (const auto& cl : prof.clusters) {
    std::cout << "cluster lambda_sq=" << cl.lambda_sq << " mult=" << cl.multiplicity
              << " family=" << static_cast<int>(cl.family) << " jordan=";
    for (auto [s, cnt] : cl.jordan_sizes) std::cout << s << "x" << cnt << " ";
    std::cout << "\n";
    Mat v = cluster_invariant_subspace(bsq, cl, tol);
    std::cout << "  subspace cols=" << v.cols() << "\n";
    Mat hc = v.adjoint() * h * v;
    Mat cc = v.adjoint() * c * v.conjugate();
    Mat bc = square_operator(cc);
    std::cout << "  |bc|=" << bc.norm() << " |hc|=" << hc.norm() << "\n";
    int s1 = max_grade(bc, cl.lambda_sq, tol.rank_tol);
    std::cout << "  max_grade s1=" << s1 << "\n";
    // kernel diagnostics for (bc - eta)^s1
    const int m = static_cast<int>(bc.rows());
    Mat shifted = bc - cl.lambda_sq * Mat::Identity(m, m);
    Mat pw = Mat::Identity(m, m);
    double sc = 1.0;
    for (int i = 0; i < s1; ++i) { sc = pw.norm() * shifted.norm(); pw = pw * shifted; }
    Eigen::JacobiSVD<Mat> svd(pw);
    std::cout << "  power svs:";
    for (int i = 0; i < svd.singularValues().size(); ++i)
      std::cout << " " << svd.singularValues()(i);
    std::cout << "\n  scale hint=" << sc
              << " cutoff=" << tol.rank_tol * std::max(svd.singularValues()(0), sc)
              << "\n";
    if (cl.family == Family::Zero) {
      RealMat ra = realify_antilinear(cc);
      Mat racx = ra.cast<Complex>();
      std::vector<int> sizes = nilpotent_segre(racx, tol.rank_tol);
      std::cout << "  zero segre:";
      for (int s : sizes) std::cout << " " << s;
      std::cout << "\n";
      int nil = antilinear_nilpotency_index(cc, tol.rank_tol);
      std::cout << "  antilinear nilpotency index=" << nil << "\n";
    }
  }
  try {
    CanonicalForm cf = canonicalize_pair(SelfAdjointPair{h, c, static_cast<int>(h.rows())}, tol);
    std::cout << "canonicalize OK, residuals h=" << cf.residuals.h_residual
              << " c=" << cf.residuals.c_residual << "\n";
  } catch (const std::exception& e) {
    std::cout << "canonicalize threw: " << e.what() << "\n";
  }
  return 0;
}
