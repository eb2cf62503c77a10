#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace canonpair {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealMat = Eigen::MatrixXd;
using RealVec = Eigen::VectorXd;

// Largest dimension the dense eigenvalue path accepts.
inline constexpr int kMaxDim = 64;

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ToleranceConfig {
  double rank_tol = 1e-9;     // relative pivot/singular-value threshold
  double verify_tol = 1e-6;   // relative residual threshold on reconstructions
  double cluster_tol = 1e-7;  // relative eigenvalue-grouping radius

  void check() const {
    if (rank_tol <= 0 || verify_tol <= 0 || cluster_tol <= 0)
      throw InvalidInput("tolerances must be strictly positive");
  }
  // rank_tol < cluster_tol < verify_tol is recommended but not required.
  bool ordering_recommended() const {
    return rank_tol < cluster_tol && cluster_tol < verify_tol;
  }
};

enum class Family { PositiveReal, Zero, Negative, Nonreal };

const char* family_name(Family f);
Family family_from_name(const std::string& s);

// Principal square root: Re > 0, or Re == 0 and Im >= 0.  0 maps to 0.
Complex principal_sqrt(Complex lambda_sq);

Family classify_lambda_sq(Complex lambda_sq, double tol);

// One diagonal block of a canonical form.  For the standard and alternative
// flavors the block names the pair (epsilon*H_{lambda,k}, C_{lambda,k}) resp.
// (epsilon*N_{lambda,k}, M_{lambda,k}).  For the glr flavor, lambda_sq holds
// the eigenvalue of the linear operator and the block names
// (epsilon*S, J_{lambda_sq,k} [ + conjugate ]).  For the operator-only flavor
// epsilon is 0 (no sign characteristic).
struct CanonicalBlock {
  Family family = Family::Zero;
  Complex lambda{0.0, 0.0};
  Complex lambda_sq{0.0, 0.0};
  int k = 1;
  int epsilon = 1;

  int dim() const {
    return (family == Family::PositiveReal || family == Family::Zero) ? k : 2 * k;
  }
};

enum class Flavor { Standard, Alternative, OperatorOnly, Glr };

const char* flavor_name(Flavor f);

struct ResidualReport {
  double h_residual = 0.0;
  double c_residual = 0.0;
  bool pass(double tol) const { return h_residual <= tol && c_residual <= tol; }
};

struct CanonicalForm {
  std::vector<CanonicalBlock> blocks;
  Mat transition;  // M of the transformation law; apply_basis_change(p, M) is canonical
  Flavor flavor = Flavor::Standard;
  ResidualReport residuals;

  int total_dim() const {
    int d = 0;
    for (const auto& b : blocks) d += b.dim();
    return d;
  }
};

inline double rel_residual(const Mat& delta, const Mat& reference) {
  double scale = reference.norm();
  if (scale == 0.0) scale = 1.0;
  return delta.norm() / scale;
}

}  // namespace canonpair
