#include "atlas.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace canonpair {

Mat sip_matrix(int k) {
  if (k < 1) throw InvalidInput("sip_matrix: k must be >= 1");
  Mat s = Mat::Zero(k, k);
  for (int i = 0; i < k; ++i) s(i, k - 1 - i) = 1.0;
  return s;
}

Mat shift_matrix(int k) {
  if (k < 1) throw InvalidInput("shift_matrix: k must be >= 1");
  Mat t = Mat::Zero(k, k);
  for (int i = 0; i + 1 < k; ++i) t(i, i + 1) = 1.0;
  return t;
}

Mat jordan_block(Complex lambda, int k) {
  return lambda * Mat::Identity(k, k) + shift_matrix(k);
}

Mat build_basic(BasicKind kind, int k, Complex lambda) {
  switch (kind) {
    case BasicKind::S: return sip_matrix(k);
    case BasicKind::T: return shift_matrix(k);
    case BasicKind::J: return jordan_block(lambda, k);
  }
  throw InvalidInput("build_basic: unknown kind");
}

void check_block(const CanonicalBlock& b) {
  if (b.k < 1) throw InvalidInput("block: k must be >= 1");
  if (b.epsilon != 1 && b.epsilon != -1 && b.epsilon != 0)
    throw InvalidInput("block: epsilon must be -1, 0, or +1");
  const double tol = 1e-12 * std::max(1.0, std::abs(b.lambda_sq));
  switch (b.family) {
    case Family::PositiveReal:
      if (std::abs(b.lambda_sq.imag()) > tol || b.lambda_sq.real() <= 0)
        throw InvalidInput("block: positive-real family requires lambda^2 > 0");
      break;
    case Family::Zero:
      if (std::abs(b.lambda_sq) > 1e-12)
        throw InvalidInput("block: zero family requires lambda^2 = 0");
      break;
    case Family::Negative:
      if (std::abs(b.lambda_sq.imag()) > tol || b.lambda_sq.real() >= 0)
        throw InvalidInput("block: negative family requires lambda^2 < 0");
      break;
    case Family::Nonreal:
      if (b.lambda_sq.imag() <= 0)
        throw InvalidInput("block: nonreal family stores Im(lambda^2) > 0");
      break;
  }
  if (std::abs(b.lambda - principal_sqrt(b.lambda_sq)) >
      1e-9 * std::max(1.0, std::abs(b.lambda)))
    throw InvalidInput("block: lambda is not the principal root of lambda^2");
}

CanonicalBlock make_block(Family family, Complex lambda_sq, int k, int epsilon) {
  CanonicalBlock b;
  b.family = family;
  if (family == Family::Zero) lambda_sq = {0.0, 0.0};
  if ((family == Family::PositiveReal || family == Family::Negative))
    lambda_sq = {lambda_sq.real(), 0.0};
  b.lambda_sq = lambda_sq;
  b.lambda = principal_sqrt(lambda_sq);
  b.k = k;
  b.epsilon = epsilon;
  check_block(b);
  return b;
}

std::pair<Mat, Mat> build_pair_block(const CanonicalBlock& b) {
  check_block(b);
  const int k = b.k;
  double eps = b.epsilon == 0 ? 1.0 : static_cast<double>(b.epsilon);
  if (b.family == Family::PositiveReal || b.family == Family::Zero) {
    // lambda real: (eps S_k, J_{lambda,k})
    return {eps * sip_matrix(k), jordan_block(b.lambda.real(), k)};
  }
  Mat c = Mat::Zero(2 * k, 2 * k);
  c.topRightCorner(k, k) = jordan_block(b.lambda_sq, k);
  c.bottomLeftCorner(k, k) = Mat::Identity(k, k);
  return {eps * sip_matrix(2 * k), c};
}

std::vector<Complex> catalan_coefficients(Complex lambda, int count) {
  if (lambda == Complex(0.0, 0.0))
    throw InvalidInput("catalan_coefficients: lambda must be nonzero");
  if (count < 1) throw InvalidInput("catalan_coefficients: count must be >= 1");
  std::vector<Complex> c(count);
  c[0] = lambda;
  if (count > 1) c[1] = 1.0 / (2.0 * lambda);
  for (int i = 2; i < count; ++i) {
    Complex acc = 0.0;
    for (int j = 1; j <= i - 1; ++j) acc += c[j] * c[i - j];
    c[i] = -acc / (2.0 * lambda);
  }
  return c;
}

std::vector<Rational> catalan_coefficients_exact(const Rational& lambda, int count) {
  if (lambda == Rational(0))
    throw InvalidInput("catalan_coefficients_exact: lambda must be nonzero");
  if (count < 1) throw InvalidInput("catalan_coefficients_exact: count must be >= 1");
  std::vector<Rational> c(count, Rational(0));
  c[0] = lambda;
  if (count > 1) c[1] = Rational(1) / (Rational(2) * lambda);
  for (int i = 2; i < count; ++i) {
    Rational acc(0);
    for (int j = 1; j <= i - 1; ++j) acc += c[j] * c[i - j];
    c[i] = -acc / (Rational(2) * lambda);
  }
  return c;
}

Rational catalan_closed_form_exact(const Rational& lambda, int i) {
  if (i < 1) throw InvalidInput("catalan_closed_form_exact: i must be >= 1");
  BigInt binom = 1;  // binom(2(i-1), i-1)
  for (int j = 1; j <= i - 1; ++j) binom = binom * BigInt(i - 1 + j) / BigInt(j);
  Rational two_lambda = Rational(2) * lambda;
  Rational pw(1);  // (2 lambda)^{1-2i} = 1 / (2 lambda)^{2i-1}
  for (int j = 0; j < 2 * i - 1; ++j) pw *= two_lambda;
  Rational sign = (i % 2 == 0) ? Rational(-1) : Rational(1);
  return sign * Rational(binom, BigInt(i)) / pw;
}

Mat jordan_square_root(Complex lambda, int k) {
  if (lambda == Complex(0.0, 0.0))
    throw InvalidInput("jordan_square_root: no Toeplitz square root for lambda = 0");
  auto c = catalan_coefficients(lambda, k);
  Mat x = Mat::Zero(k, k);
  for (int d = 0; d < k; ++d)
    for (int i = 0; i + d < k; ++i) x(i, i + d) = c[d];
  return x;
}

namespace {

Mat toeplitz_from(const std::vector<Complex>& c, int k) {
  Mat x = Mat::Zero(k, k);
  for (int d = 0; d < k; ++d)
    for (int i = 0; i + d < k; ++i) x(i, i + d) = c[d];
  return x;
}

Mat direct_sum(const Mat& a, const Mat& b) {
  Mat out = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

}  // namespace

std::pair<Mat, Mat> build_alt_block(const CanonicalBlock& b) {
  check_block(b);
  const int k = b.k;
  double eps = b.epsilon == 0 ? 1.0 : static_cast<double>(b.epsilon);
  Mat n, m;
  switch (b.family) {
    case Family::PositiveReal: {
      n = sip_matrix(k);
      m = toeplitz_from(catalan_coefficients(b.lambda.real(), k), k);
      break;
    }
    case Family::Zero: {
      if (k % 2 == 0) {
        int h = k / 2;
        n = direct_sum(sip_matrix(h), -sip_matrix(h));
        m = Mat::Zero(k, k);
        m.topLeftCorner(h, h) = 0.5 * jordan_block(1.0, h);
        m.topRightCorner(h, h) = -0.5 * jordan_block(-1.0, h);
        m.bottomLeftCorner(h, h) = 0.5 * jordan_block(-1.0, h);
        m.bottomRightCorner(h, h) = -0.5 * jordan_block(1.0, h);
      } else if (k == 1) {
        n = sip_matrix(1);
        m = Mat::Zero(1, 1);
      } else {
        int h = (k - 1) / 2;
        n = direct_sum(sip_matrix(h), sip_matrix(h + 1));
        // [[0 0 I], [I 0 0], [0 0 0]] with I of size h and a middle 1-column
        m = Mat::Zero(k, k);
        m.block(0, h + 1, h, h) = Mat::Identity(h, h);
        m.block(h, 0, h, h) = Mat::Identity(h, h);
      }
      break;
    }
    case Family::Negative: {
      n = direct_sum(sip_matrix(k), -sip_matrix(k));
      m = Mat::Zero(2 * k, 2 * k);
      m.topRightCorner(k, k) = toeplitz_from(catalan_coefficients(b.lambda, k), k);
      m.bottomLeftCorner(k, k) =
          toeplitz_from(catalan_coefficients(std::conj(b.lambda), k), k);
      break;
    }
    case Family::Nonreal: {
      n = sip_matrix(2 * k);
      m = Mat::Zero(2 * k, 2 * k);
      m.topRightCorner(k, k) = toeplitz_from(catalan_coefficients(b.lambda, k), k);
      m.bottomLeftCorner(k, k) =
          toeplitz_from(catalan_coefficients(std::conj(b.lambda), k), k);
      break;
    }
  }
  return {eps * n, m};
}

void sort_blocks(std::vector<CanonicalBlock>& blocks) {
  std::stable_sort(blocks.begin(), blocks.end(),
                   [](const CanonicalBlock& a, const CanonicalBlock& b) {
                     auto key = [](const CanonicalBlock& x) {
                       return std::make_tuple(x.lambda_sq.real(), x.lambda_sq.imag(),
                                              -x.k, -x.epsilon);
                     };
                     return key(a) < key(b);
                   });
}

std::pair<Mat, Mat> assemble_pair(const std::vector<CanonicalBlock>& blocks) {
  Mat h(0, 0), c(0, 0);
  for (const auto& b : blocks) {
    auto [hb, cb] = build_pair_block(b);
    h = direct_sum(h, hb);
    c = direct_sum(c, cb);
  }
  return {h, c};
}

std::pair<Mat, Mat> assemble_alt_pair(const std::vector<CanonicalBlock>& blocks) {
  Mat h(0, 0), c(0, 0);
  for (const auto& b : blocks) {
    auto [hb, cb] = build_alt_block(b);
    h = direct_sum(h, hb);
    c = direct_sum(c, cb);
  }
  return {h, c};
}

Mat expected_square(const CanonicalBlock& b) {
  if (b.family == Family::PositiveReal || b.family == Family::Zero) {
    Mat j = jordan_block(b.lambda.real(), b.k);
    return j * j;
  }
  return direct_sum(jordan_block(b.lambda_sq, b.k),
                    jordan_block(std::conj(b.lambda_sq), b.k));
}

}  // namespace canonpair
