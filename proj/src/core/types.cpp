#include "types.hpp"

#include <cmath>

namespace canonpair {

const char* family_name(Family f) {
  switch (f) {
    case Family::PositiveReal: return "positive-real";
    case Family::Zero: return "zero";
    case Family::Negative: return "negative";
    case Family::Nonreal: return "nonreal";
  }
  return "?";
}

Family family_from_name(const std::string& s) {
  if (s == "positive-real") return Family::PositiveReal;
  if (s == "zero") return Family::Zero;
  if (s == "negative") return Family::Negative;
  if (s == "nonreal") return Family::Nonreal;
  throw InvalidInput("unknown block family: " + s);
}

const char* flavor_name(Flavor f) {
  switch (f) {
    case Flavor::Standard: return "standard";
    case Flavor::Alternative: return "alternative";
    case Flavor::OperatorOnly: return "operator-only";
    case Flavor::Glr: return "glr";
  }
  return "?";
}

Complex principal_sqrt(Complex lambda_sq) {
  if (lambda_sq == Complex(0.0, 0.0)) return {0.0, 0.0};
  Complex r = std::sqrt(lambda_sq);  // std::sqrt uses the principal branch, Re >= 0
  if (r.real() == 0.0 && r.imag() < 0.0) r = -r;
  return r;
}

Family classify_lambda_sq(Complex lambda_sq, double tol) {
  double scale = std::max(1.0, std::abs(lambda_sq));
  if (std::abs(lambda_sq.imag()) > tol * scale) return Family::Nonreal;
  if (std::abs(lambda_sq.real()) <= tol * scale) return Family::Zero;
  return lambda_sq.real() > 0 ? Family::PositiveReal : Family::Negative;
}

}  // namespace canonpair
