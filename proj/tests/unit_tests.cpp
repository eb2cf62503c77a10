#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "core/altforms.hpp"
#include "core/atlas.hpp"
#include "core/canonicalize.hpp"
#include "core/glr.hpp"
#include "core/harness.hpp"
#include "core/json_io.hpp"
#include "core/kernel.hpp"
#include "core/pair.hpp"
#include "core/spectral.hpp"
#include "core/types.hpp"

#include <cmath>

using namespace canonpair;

namespace {
const ToleranceConfig kTol{};

Mat mat2(Complex a, Complex b, Complex c, Complex d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}
}  // namespace

TEST_CASE("principal square root conventions") {
  CHECK(principal_sqrt(Complex(4, 0)) == Complex(2, 0));
  CHECK(principal_sqrt(Complex(-1, 0)) == Complex(0, 1));
  CHECK(principal_sqrt(Complex(0, 0)) == Complex(0, 0));
  Complex r = principal_sqrt(Complex(0, 2));
  CHECK(r.real() == doctest::Approx(1.0));
  CHECK(r.imag() == doctest::Approx(1.0));
}

TEST_CASE("family classification of the squared eigenvalue") {
  CHECK(classify_lambda_sq(Complex(2.25, 0), 1e-9) == Family::PositiveReal);
  CHECK(classify_lambda_sq(Complex(0, 0), 1e-9) == Family::Zero);
  CHECK(classify_lambda_sq(Complex(-1, 0), 1e-9) == Family::Negative);
  CHECK(classify_lambda_sq(Complex(1, 1), 1e-9) == Family::Nonreal);
}

TEST_CASE("signature of an indefinite diagonal form") {
  Mat h = mat2(1, 0, 0, -3);
  auto [pos, neg] = signature(h, kTol);
  CHECK(pos == 1);
  CHECK(neg == 1);
}

TEST_CASE("takagi factorization reconstructs a complex symmetric matrix") {
  Mat s = mat2(Complex(1, 2), Complex(0.5, -0.3), Complex(0.5, -0.3), Complex(-2, 1));
  auto [u, sigma] = takagi(s, kTol.verify_tol);
  Mat rebuilt = u * sigma.cast<Complex>().asDiagonal() * u.transpose();
  CHECK((rebuilt - s).norm() <= 1e-10 * s.norm());
  CHECK(sigma(0) >= sigma(1));
  CHECK((u.adjoint() * u - Mat::Identity(2, 2)).norm() <= 1e-10);
}

TEST_CASE("validate_pair accepts the 2x2 nilpotent model") {
  CanonicalBlock b = make_block(Family::Zero, Complex(0, 0), 2, 1);
  auto [h, c] = build_pair_block(b);
  CHECK((h - sip_matrix(2)).norm() == 0.0);
  SelfAdjointPair p = validate_pair(h, c, kTol);
  CHECK(p.n == 2);
}

TEST_CASE("validate_pair names the self-adjointness violation") {
  Mat h = Mat::Identity(2, 2);
  Mat c = mat2(0, -1, 1, 0);
  PairDiagnostics d = diagnose_pair(h, c, kTol);
  CHECK_FALSE(d.valid());
  CHECK(d.violation().find("self-adjoint") != std::string::npos);
  CHECK_THROWS_AS(validate_pair(h, c, kTol), InvalidInput);
}

TEST_CASE("degenerate forms are rejected") {
  Mat h = mat2(1, 0, 0, 0);
  Mat c = Mat::Identity(2, 2);
  PairDiagnostics d = diagnose_pair(h, c, kTol);
  CHECK_FALSE(d.nondegenerate);
}

TEST_CASE("coefficient sequence at one half has Catalan absolute values") {
  auto c = catalan_coefficients_exact(Rational(1, 2), 7);
  const long want[7] = {0, 1, 1, 2, 5, 14, 42};
  for (int i = 1; i <= 6; ++i) {
    Rational a = c[i] < Rational(0) ? -c[i] : c[i];
    CHECK(a == Rational(want[i]));
  }
  for (int i = 1; i <= 6; ++i) CHECK(c[i] == catalan_closed_form_exact(Rational(1, 2), i));
}

TEST_CASE("jordan_square_root squares to the Jordan block") {
  for (int k : {1, 3, 6}) {
    for (Complex lam : {Complex(1.5, 0), Complex(0.2, 0.7)}) {
      Mat x = jordan_square_root(lam, k);
      Mat target = jordan_block(lam * lam, k);
      CHECK((x * x - target).norm() <= 1e-12 * std::max(1.0, target.norm()));
    }
  }
}

TEST_CASE("standard blocks square to the expected matrix") {
  for (const CanonicalBlock& b :
       {make_block(Family::PositiveReal, Complex(2.25, 0), 3, -1),
        make_block(Family::Zero, Complex(0, 0), 4, 1),
        make_block(Family::Negative, Complex(-2, 0), 2, 1),
        make_block(Family::Nonreal, Complex(1, 1), 2, 1)}) {
    auto [h, c] = build_pair_block(b);
    CHECK((square_operator(c) - expected_square(b)).norm() <= 1e-12);
    validate_pair(h, c, kTol);
  }
}

TEST_CASE("nilpotent Jordan structure recovery") {
  Mat t = shift_matrix(3);
  auto sizes = nilpotent_segre(t, kTol.rank_tol);
  REQUIRE(sizes.size() == 1);
  CHECK(sizes[0] == 3);

  CanonicalBlock b = make_block(Family::Zero, Complex(0, 0), 5, 1);
  auto [h, c] = build_pair_block(b);
  auto sq_sizes = nilpotent_segre(square_operator(c), kTol.rank_tol);
  REQUIRE(sq_sizes.size() == 2);
  CHECK(sq_sizes[0] == 3);
  CHECK(sq_sizes[1] == 2);
}

TEST_CASE("spectral clustering of an assembled square") {
  std::vector<CanonicalBlock> blocks = {
      make_block(Family::PositiveReal, Complex(4, 0), 2, 1),
      make_block(Family::Negative, Complex(-1, 0), 1, 1)};
  auto [h, c] = assemble_pair(blocks);
  SpectralProfile prof = profile_square(square_operator(c), kTol);
  REQUIRE(prof.clusters.size() == 2);
  CHECK(prof.clusters[0].lambda_sq.real() == doctest::Approx(-1.0));
  CHECK(prof.clusters[1].lambda_sq.real() == doctest::Approx(4.0));
}

TEST_CASE("glr canonical form of a single real-eigenvalue block") {
  Mat h = sip_matrix(2);
  Mat b = jordan_block(Complex(2, 0), 2);
  GlrForm g = glr_canonicalize(h, b, kTol);
  REQUIRE(g.blocks.size() == 1);
  CHECK(g.blocks[0].k == 2);
  CHECK(g.blocks[0].epsilon == 1);
  CHECK(g.blocks[0].real_eta);
  CHECK(std::abs(g.blocks[0].eta - Complex(2, 0)) <= 1e-9);
  CHECK(g.residuals.pass(kTol.verify_tol));
}

TEST_CASE("canonicalize_pair recovers planted blocks across families") {
  struct Case {
    const char* spec;
    int n;
  };
  for (const Case& cs : {Case{"positive-real:2.25:0:2:-1", 2},
                         Case{"zero:0:0:3:1", 3},
                         Case{"negative:-2:0:2:1", 4},
                         Case{"nonreal:1:1:1:1;positive-real:1:0:1:1", 3}}) {
    std::vector<CanonicalBlock> planted;
    SelfAdjointPair p = random_canonical_pair(cs.n, cs.spec, 42, kTol, &planted);
    CanonicalForm f = canonicalize_pair(p, kTol);
    CHECK(block_lists_match(planted, f.blocks, 1e-4));
    CHECK(verify_canonical(p, f, kTol).pass(kTol.verify_tol));
  }
}

TEST_CASE("nonreal 2x2 model canonicalizes to a negative-family block") {
  // H = S_2 with C the 2x2 block at lambda = i.
  Mat h = sip_matrix(2);
  Mat c = mat2(0, -1, 1, 0);
  CanonicalForm f = canonicalize_pair(validate_pair(h, c, kTol), kTol);
  REQUIRE(f.blocks.size() == 1);
  CHECK(f.blocks[0].family == Family::Negative);
  CHECK(f.blocks[0].k == 1);
  CHECK(f.blocks[0].lambda_sq.real() == doctest::Approx(-1.0));
}

TEST_CASE("orbit behavior of scalar and negative-family signs") {
  Mat h1(1, 1), c1(1, 1);
  h1(0, 0) = 1;
  c1(0, 0) = 2;
  auto fa = canonicalize_pair(validate_pair(h1, c1, kTol), kTol);
  auto fb = canonicalize_pair(validate_pair(-h1, c1, kTol), kTol);
  CHECK_FALSE(block_lists_match(fa.blocks, fb.blocks, 1e-6));  // eps differs

  Mat h2 = sip_matrix(2);
  Mat c2 = mat2(0, -1, 1, 0);
  auto ga = canonicalize_pair(validate_pair(h2, c2, kTol), kTol);
  auto gb = canonicalize_pair(validate_pair(-h2, c2, kTol), kTol);
  CHECK(block_lists_match(ga.blocks, gb.blocks, 1e-6));  // sign removable
}

TEST_CASE("operator-only classification matches the witness-form pair") {
  SelfAdjointPair p = random_canonical_pair(5, "", 7, kTol);
  CanonicalForm op = canonicalize_operator(p.c, kTol);
  Mat w = witness_form(p.c, kTol);
  CanonicalForm f = canonicalize_pair(validate_pair(w, p.c, kTol), kTol);
  REQUIRE(op.blocks.size() == f.blocks.size());
  for (const CanonicalBlock& b : f.blocks) CHECK(b.epsilon == 1);
}

TEST_CASE("alternative flavor round trip") {
  SelfAdjointPair p = random_canonical_pair(4, "", 11, kTol);
  CanonicalForm alt = alt_canonicalize(p, kTol);
  CHECK(alt.flavor == Flavor::Alternative);
  CHECK(verify_canonical(p, alt, kTol).pass(kTol.verify_tol));
  CanonicalForm back = convert_form(alt, Flavor::Standard, kTol);
  CHECK(verify_canonical(p, back, kTol).pass(kTol.verify_tol));
  CHECK(block_lists_match(alt.blocks, back.blocks, 1e-9));
}

TEST_CASE("spectrum spec parser") {
  auto blocks = parse_spectrum_spec("negative:-2:0:2:1;zero:0:0:1:-1");
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0].family == Family::Negative);
  CHECK(blocks[0].dim() == 4);
  CHECK(blocks[1].epsilon == -1);
  CHECK_THROWS_AS(parse_spectrum_spec("bogus:1:0:1:1"), InvalidInput);
  CHECK_THROWS_AS(parse_spectrum_spec("zero:0:0"), InvalidInput);
}

TEST_CASE("generation is deterministic in the seed") {
  SelfAdjointPair a = random_canonical_pair(6, "", 123, kTol);
  SelfAdjointPair b = random_canonical_pair(6, "", 123, kTol);
  CHECK(pair_to_json(a.h, a.c) == pair_to_json(b.h, b.c));
}

TEST_CASE("scalar oracle examples") {
  CanonicalBlock b1 = brute_force_1d_oracle(Complex(-3, 0), Complex(0, 2), 1e-12);
  CHECK(b1.family == Family::PositiveReal);
  CHECK(b1.lambda_sq.real() == doctest::Approx(4.0));
  CHECK(b1.epsilon == -1);

  CanonicalBlock b2 = brute_force_1d_oracle(Complex(5, 0), Complex(0, 0), 1e-12);
  CHECK(b2.family == Family::Zero);
  CHECK(b2.epsilon == 1);
}

TEST_CASE("pair document round trip and parse errors") {
  SelfAdjointPair p = random_canonical_pair(3, "", 9, kTol);
  auto [h, c] = parse_pair_json(pair_to_json(p.h, p.c));
  CHECK((h - p.h).norm() == 0.0);
  CHECK((c - p.c).norm() == 0.0);
  CHECK_THROWS_AS(parse_pair_json("not json"), ParseError);
  CHECK_THROWS_AS(parse_pair_json("{\"n\": 2, \"H\": [], \"C\": []}"), ParseError);
}

TEST_CASE("form document round trip") {
  SelfAdjointPair p = random_canonical_pair(4, "", 13, kTol);
  CanonicalForm f = canonicalize_pair(p, kTol);
  CanonicalForm g = parse_form_json(form_to_json(f));
  CHECK(g.flavor == f.flavor);
  CHECK(block_lists_match(f.blocks, g.blocks, 1e-12));
  CHECK((g.transition - f.transition).norm() == 0.0);
  CHECK(verify_canonical(p, g, kTol).pass(kTol.verify_tol));
}
