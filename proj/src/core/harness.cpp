#include "harness.hpp"

#include "atlas.hpp"
#include "canonicalize.hpp"
#include "kernel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace canonpair {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  return out;
}

double parse_double(const std::string& s) {
  size_t pos = 0;
  double v = std::stod(s, &pos);
  if (pos != s.size()) throw InvalidInput("spectrum spec: bad number '" + s + "'");
  return v;
}

Mat random_conjugator(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double re = unif(rng), im = unif(rng);
        m(i, j) = Complex(re, im);
      }
    Eigen::FullPivLU<Mat> lu(m);
    if (!lu.isInvertible()) continue;
    Mat minv = lu.inverse();
    if (m.norm() * minv.norm() <= 100.0) return m;
  }
  throw NumericalFailure("random_conjugator: condition bound not met");
}

int family_min_dim(Family f) {
  return (f == Family::PositiveReal || f == Family::Zero) ? 1 : 2;
}

std::vector<CanonicalBlock> random_blocks(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<CanonicalBlock> blocks;
  int remaining = n;
  while (remaining > 0) {
    const Family fams[4] = {Family::PositiveReal, Family::Zero, Family::Negative,
                            Family::Nonreal};
    Family f = fams[static_cast<int>(unif(rng) * 4.0) % 4];
    if (remaining < family_min_dim(f)) f = Family::PositiveReal;
    int kmax = (f == Family::PositiveReal || f == Family::Zero)
                   ? std::min(remaining, 3)
                   : std::min(remaining / 2, 3);
    int k = 1 + static_cast<int>(unif(rng) * kmax) % kmax;
    Complex lsq;
    int eps = unif(rng) < 0.5 ? 1 : -1;
    switch (f) {
      case Family::PositiveReal:
        lsq = Complex(0.25 + 3.75 * unif(rng), 0.0);
        break;
      case Family::Zero:
        lsq = Complex(0.0, 0.0);
        if (k % 2 == 0) eps = 1;
        break;
      case Family::Negative:
        lsq = Complex(-(0.25 + 3.75 * unif(rng)), 0.0);
        eps = 1;
        break;
      case Family::Nonreal:
        lsq = Complex(-2.0 + 4.0 * unif(rng), 0.25 + 1.75 * unif(rng));
        eps = 1;
        break;
    }
    CanonicalBlock b = make_block(f, lsq, k, eps);
    blocks.push_back(b);
    remaining -= b.dim();
  }
  return blocks;
}

}  // namespace

std::vector<CanonicalBlock> parse_spectrum_spec(const std::string& spec) {
  std::vector<CanonicalBlock> out;
  for (const std::string& part : split(spec, ';')) {
    if (part.empty()) continue;
    std::vector<std::string> f = split(part, ':');
    if (f.size() != 5)
      throw InvalidInput("spectrum spec: expected family:re:im:k:eps, got '" +
                         part + "'");
    Family fam = family_from_name(f[0]);
    Complex lsq(parse_double(f[1]), parse_double(f[2]));
    int k = static_cast<int>(parse_double(f[3]));
    int eps = static_cast<int>(parse_double(f[4]));
    out.push_back(make_block(fam, lsq, k, eps));
  }
  if (out.empty()) throw InvalidInput("spectrum spec: no blocks");
  return out;
}

SelfAdjointPair random_canonical_pair(int n, const std::string& spec,
                                      std::uint64_t seed,
                                      const ToleranceConfig& tol,
                                      std::vector<CanonicalBlock>* planted) {
  std::mt19937_64 rng(seed);
  std::vector<CanonicalBlock> blocks;
  if (spec.empty()) {
    if (n < 1) throw InvalidInput("random_canonical_pair: n must be >= 1");
    blocks = random_blocks(n, rng);
  } else {
    blocks = parse_spectrum_spec(spec);
    int total = 0;
    for (const auto& b : blocks) total += b.dim();
    if (n > 0 && total != n)
      throw InvalidInput("random_canonical_pair: spec dimension mismatch");
    n = total;
  }
  sort_blocks(blocks);
  auto [hcan, ccan] = assemble_pair(blocks);

  Mat m = random_conjugator(n, rng);
  Mat minv = m.inverse();
  Mat h = m.adjoint() * hcan * m;
  h = 0.5 * (h + h.adjoint()).eval();
  Mat c = minv * ccan * m.conjugate();

  if (planted) *planted = blocks;
  return validate_pair(h, c, tol);
}

bool block_lists_match(std::vector<CanonicalBlock> a, std::vector<CanonicalBlock> b,
                       double lambda_tol) {
  if (a.size() != b.size()) return false;
  sort_blocks(a);
  sort_blocks(b);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].family != b[i].family || a[i].k != b[i].k ||
        a[i].epsilon != b[i].epsilon)
      return false;
    if (std::abs(a[i].lambda_sq - b[i].lambda_sq) >
        lambda_tol * std::max(1.0, std::abs(a[i].lambda_sq)))
      return false;
  }
  return true;
}

bool orbit_check(const SelfAdjointPair& p, int trials, std::uint64_t seed,
                 const ToleranceConfig& tol) {
  CanonicalForm base = canonicalize_pair(p, tol);
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    Mat m = random_conjugator(p.n, rng);
    SelfAdjointPair q = apply_basis_change(p, m, tol);
    CanonicalForm f = canonicalize_pair(q, tol);
    if (!block_lists_match(base.blocks, f.blocks,
                           1e3 * tol.cluster_tol))
      return false;
  }
  return true;
}

CanonicalBlock brute_force_1d_oracle(Complex h, Complex c, double zero_tol) {
  if (std::abs(h.imag()) > zero_tol * std::max(1.0, std::abs(h)) ||
      std::abs(h) <= zero_tol)
    throw InvalidInput("brute_force_1d_oracle: form must be real and nonzero");
  int eps = h.real() > 0 ? 1 : -1;
  if (std::abs(c) <= zero_tol)
    return make_block(Family::Zero, Complex(0, 0), 1, eps);
  double lam = std::abs(c);
  return make_block(Family::PositiveReal, Complex(lam * lam, 0.0), 1, eps);
}

}  // namespace canonpair
