#pragma once

// Hermitian forms, antilinear operators, and the self-adjointness contract.
//
// Conventions fixed artifact-wide:
//   - the form is linear in its first slot:  l(v, w) = w^* H v,
//     so H(i,j) = l(e_j, e_i);
//   - the operator acts by v -> C * conj(v);
//   - a basis change with transition M sends
//     H -> (M^{-1})^* H M^{-1}  and  C -> M C conj(M)^{-1}.

#include <optional>
#include <string>

#include "types.hpp"

namespace canonpair {

struct SelfAdjointPair {
  Mat h;  // Hermitian, nondegenerate
  Mat c;  // antilinear operator matrix
  int n = 0;
};

struct PairDiagnostics {
  double hermitian_residual = 0.0;    // ||H - H^*|| / ||H||
  double min_eig_ratio = 0.0;         // min |eig(H)| / ||H||
  double selfadjoint_residual = 0.0;  // ||(HC)^T - HC|| / ||HC||
  bool hermitian_ok = false;
  bool nondegenerate = false;
  bool selfadjoint_ok = false;

  bool valid() const { return hermitian_ok && nondegenerate && selfadjoint_ok; }
  std::string violation() const;  // name of the first violated condition
};

PairDiagnostics diagnose_pair(const Mat& h, const Mat& c, const ToleranceConfig& tol);

// Throws InvalidInput naming the violated condition if the pair is not valid.
SelfAdjointPair validate_pair(const Mat& h, const Mat& c, const ToleranceConfig& tol);

// Antilinear applications.
Vec apply_op(const Mat& c, const Vec& v);               // v -> C conj(v)
Mat square_operator(const Mat& c);                      // B = C conj(C)
Complex form_value(const Mat& h, const Vec& v, const Vec& w);  // l(v, w)

SelfAdjointPair apply_basis_change(const SelfAdjointPair& p, const Mat& m,
                                   const ToleranceConfig& tol);

// Matrix of the symmetric bilinear form l'(v, w) = l(w, Av); equals HC.
Mat symmetric_form_of_pair(const SelfAdjointPair& p, const ToleranceConfig& tol);

}  // namespace canonpair
