#pragma once

// JSON exchange formats.
//
// Pair document:    {"n": 2, "H": [[[re,im],...],...], "C": [[[re,im],...],...]}
// with row-major matrices and every entry a [re, im] array.
//
// Form document:    {"flavor": "...", "n": ..., "blocks": [...],
//                    "transition": [[[re,im],...],...],
//                    "residuals": {"h_residual": ..., "c_residual": ...}}
// where each block is {"family","lambda","lambda_sq","k","epsilon"}.

#include <string>
#include <utility>

#include "pair.hpp"
#include "types.hpp"

namespace canonpair {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raw matrices; validation is a separate step.
std::pair<Mat, Mat> parse_pair_json(const std::string& text);
std::string pair_to_json(const Mat& h, const Mat& c);

CanonicalForm parse_form_json(const std::string& text);
std::string form_to_json(const CanonicalForm& f);

}  // namespace canonpair
