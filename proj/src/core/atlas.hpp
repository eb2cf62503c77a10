#pragma once

// Constructors for every named matrix family: S_k, T_k, J_{lambda,k},
// the standard block pairs (H_{lambda,k}, C_{lambda,k}), the alternative
// block pairs (N_{lambda,k}, M_{lambda,k}), the Catalan-like coefficient
// sequence, Jordan-block square roots, and deterministic block ordering.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <utility>
#include <vector>

#include "types.hpp"

namespace canonpair {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<BigInt>;

Mat sip_matrix(int k);                   // S_k, ones on the anti-diagonal
Mat shift_matrix(int k);                 // T_k, ones on the first superdiagonal
Mat jordan_block(Complex lambda, int k); // J_{lambda,k} = lambda I + T

enum class BasicKind { S, T, J };
Mat build_basic(BasicKind kind, int k, Complex lambda = {0.0, 0.0});

// Standard atlas: returns (epsilon * H_{lambda,k}, C_{lambda,k}).
std::pair<Mat, Mat> build_pair_block(const CanonicalBlock& b);

// Alternative atlas: returns (epsilon * N_{lambda,k}, M_{lambda,k}).
std::pair<Mat, Mat> build_alt_block(const CanonicalBlock& b);

// c_0(lambda) = lambda, c_1 = 1/(2 lambda),
// c_i = -1/(2 lambda) * sum_{j=1}^{i-1} c_j c_{i-j}.
std::vector<Complex> catalan_coefficients(Complex lambda, int count);
std::vector<Rational> catalan_coefficients_exact(const Rational& lambda, int count);

// Closed form (-1)^{i+1} (2 lambda)^{1-2i} binom(2(i-1), i-1) / i, i >= 1;
// at lambda = 1/2 the absolute values are the Catalan numbers 1, 1, 2, 5, ...
Rational catalan_closed_form_exact(const Rational& lambda, int i);

// Upper-triangular Toeplitz X = sum c_{i-1}(lambda) T^{i-1} with X^2 = J_{lambda^2,k}.
Mat jordan_square_root(Complex lambda, int k);

// Checks whether the block record is internally consistent (family vs
// lambda_sq vs lambda, epsilon in {-1, 0, +1}).
void check_block(const CanonicalBlock& b);

// Total order (Re lambda^2, Im lambda^2, k descending, epsilon descending);
// stable, so equal keys preserve input order.
void sort_blocks(std::vector<CanonicalBlock>& blocks);

// Assembled block-diagonal pair for a list of blocks (standard atlas).
std::pair<Mat, Mat> assemble_pair(const std::vector<CanonicalBlock>& blocks);
// Same for the alternative atlas.
std::pair<Mat, Mat> assemble_alt_pair(const std::vector<CanonicalBlock>& blocks);

// The exact square C conj(C) of the standard block: J_{lambda,k}^2 for real
// lambda, J_{lambda^2,k} + J_{conj lambda^2,k} otherwise.
Mat expected_square(const CanonicalBlock& b);

// Helper: a consistent block record from family data.
CanonicalBlock make_block(Family family, Complex lambda_sq, int k, int epsilon);

}  // namespace canonpair
